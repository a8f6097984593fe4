#include "blockbound/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "blockbound/combinatorics.hpp"
#include "blockbound/errors.hpp"
#include "blockbound/numeric.hpp"

namespace blockbound {

namespace {

bool is_ascii_letter(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

} // namespace

Vocabulary::Vocabulary(std::set<std::string> words) : words_(std::move(words)) {
    for (const auto& w : words_) {
        if (w.empty()) throw std::invalid_argument("Vocabulary: empty word");
        for (unsigned char c : w) {
            if (c < 'a' || c > 'z') {
                throw std::invalid_argument("Vocabulary: word '" + w +
                                            "' contains a non-lowercase-letter character");
            }
        }
    }
}

std::string Vocabulary::to_text() const {
    std::string out;
    for (const auto& w : words_) {
        out += w;
        out += '\n';
    }
    return out;
}

LoadResult load_wordlist(std::istream& in, bool strict) {
    std::set<std::string> words;
    std::uint64_t skipped = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#' || is_blank(line)) continue;
        bool ok = true;
        std::string word;
        word.reserve(line.size());
        for (unsigned char c : line) {
            if (!is_ascii_letter(c)) { ok = false; break; }
            word += static_cast<char>(std::tolower(c));
        }
        if (!ok) {
            if (strict) {
                throw parse_error("word list line " + std::to_string(line_no) +
                                      ": invalid character in '" + line + "'",
                                  line_no);
            }
            ++skipped;
            continue;
        }
        words.insert(std::move(word));
    }
    return LoadResult{Vocabulary(std::move(words)), skipped};
}

LoadResult load_wordlist_text(const std::string& text, bool strict) {
    std::istringstream in(text);
    return load_wordlist(in, strict);
}

SegmentSets build_segment_sets(const Vocabulary& voc, std::uint64_t L) {
    if (L == 0) throw std::invalid_argument("build_segment_sets: window must be >= 1");
    SegmentSets sets;
    sets.L = L;
    sets.words.resize(L + 1);
    sets.prefixes.resize(L + 1);
    sets.suffixes.resize(L + 1);
    sets.substrings.resize(L + 1);
    for (const auto& w : voc.words()) {
        const std::uint64_t len = w.size();
        if (len <= L) sets.words[len].insert(w);
        const std::uint64_t cmax = std::min(L, len);
        for (std::uint64_t c = 1; c <= cmax; ++c) {
            sets.prefixes[c].insert(w.substr(0, c));
            sets.suffixes[c].insert(w.substr(len - c, c));
            for (std::uint64_t start = 0; start + c <= len; ++start) {
                sets.substrings[c].insert(w.substr(start, c));
            }
        }
    }
    return sets;
}

VocabStats stats_from_sets(const SegmentSets& sets, std::uint64_t N, std::uint64_t B) {
    if (sets.L < B) throw std::invalid_argument("stats_from_sets: segment window smaller than B");
    VocabStats stats;
    stats.B = B;
    stats.N = N;
    stats.W.assign(B + 1, 0);
    stats.P.assign(B + 1, 0);
    stats.S.assign(B + 1, 0);
    stats.X_sub.assign(B + 1, 0);
    for (std::uint64_t i = 1; i <= B; ++i) {
        stats.W[i] = sets.words[i].size();
        stats.P[i] = sets.prefixes[i].size();
        stats.S[i] = sets.suffixes[i].size();
        stats.X_sub[i] = sets.substrings[i].size();
    }
    return stats;
}

VocabStats compute_stats(const Vocabulary& voc, std::uint64_t B) {
    return stats_from_sets(build_segment_sets(voc, B), voc.size(), B);
}

LengthProfile length_profile(const VocabStats& stats, double mu_target) {
    LengthProfile p;
    p.B = stats.B;
    p.mu_target = mu_target;
    p.mu_i.assign(stats.B + 1, 0.0);
    for (std::uint64_t i = 1; i <= stats.B; ++i) {
        const double denom = binomial(stats.B, static_cast<std::int64_t>(i - 1)).get_d();
        p.mu_i[i] = static_cast<double>(stats.W[i]) / denom;
        if (p.mu_i[i] > p.mu) {
            p.mu = p.mu_i[i];
            p.worst_i = i;
        }
    }
    p.satisfied = p.mu <= mu_target;
    return p;
}

LengthProfile length_profile(const Vocabulary& voc, std::uint64_t B, double mu_target) {
    return length_profile(compute_stats(voc, B), mu_target);
}

double measured_mu_ceiling(const VocabStats& stats) {
    ExactRational best(0);
    for (std::uint64_t i = 1; i <= stats.B; ++i) {
        ExactRational r(static_cast<unsigned long>(stats.W[i]));
        r /= ExactRational(binomial(stats.B, static_cast<std::int64_t>(i - 1)));
        if (r > best) best = r;
    }
    double d = best.get_d();
    while (rational_from_double(d) < best) d = std::nextafter(d, INFINITY);
    return d;
}

AffixProfile affix_profile(const VocabStats& stats) {
    AffixProfile p;
    p.B = stats.B;
    p.lambda_prefix.assign(stats.B + 1, 0.0);
    p.lambda_suffix.assign(stats.B + 1, 0.0);
    for (std::uint64_t i = 1; i <= stats.B; ++i) {
        const double denom = binomial(stats.B, static_cast<std::int64_t>(i - 1)).get_d();
        p.lambda_prefix[i] = static_cast<double>(stats.P[i]) / denom;
        p.lambda_suffix[i] = static_cast<double>(stats.S[i]) / denom;
        p.lambda = std::max({p.lambda, p.lambda_prefix[i], p.lambda_suffix[i]});
    }
    for (std::uint64_t i = 2; i <= std::min<std::uint64_t>(5, stats.B); ++i) {
        if (p.lambda_prefix[i] > 26.0 || p.lambda_suffix[i] > 26.0) {
            p.exceeds_26.push_back(i);
        }
    }
    p.small_i_within_26 = p.exceeds_26.empty();
    return p;
}

AffixProfile affix_profile(const Vocabulary& voc, std::uint64_t B) {
    return affix_profile(compute_stats(voc, B));
}

namespace {

nlohmann::json array_1_to_b(const std::vector<std::uint64_t>& v, std::uint64_t B) {
    nlohmann::json a = nlohmann::json::array();
    for (std::uint64_t i = 1; i <= B; ++i) a.push_back(v[i]);
    return a;
}

nlohmann::json array_1_to_b(const std::vector<double>& v, std::uint64_t B) {
    nlohmann::json a = nlohmann::json::array();
    for (std::uint64_t i = 1; i <= B; ++i) a.push_back(v[i]);
    return a;
}

} // namespace

nlohmann::json to_json(const VocabStats& stats) {
    return nlohmann::json{
        {"B", stats.B},
        {"N", std::to_string(stats.N)},
        {"W", array_1_to_b(stats.W, stats.B)},
        {"P", array_1_to_b(stats.P, stats.B)},
        {"S", array_1_to_b(stats.S, stats.B)},
        {"X_sub", array_1_to_b(stats.X_sub, stats.B)},
    };
}

nlohmann::json to_json(const LengthProfile& profile) {
    nlohmann::json j{
        {"B", profile.B},
        {"mu_target", profile.mu_target},
        {"mu_i", array_1_to_b(profile.mu_i, profile.B)},
        {"mu", profile.mu},
        {"satisfied", profile.satisfied},
    };
    if (profile.worst_i) j["worst_i"] = *profile.worst_i;
    return j;
}

nlohmann::json to_json(const AffixProfile& profile) {
    return nlohmann::json{
        {"B", profile.B},
        {"lambda_prefix", array_1_to_b(profile.lambda_prefix, profile.B)},
        {"lambda_suffix", array_1_to_b(profile.lambda_suffix, profile.B)},
        {"lambda", profile.lambda},
        {"small_i_within_26", profile.small_i_within_26},
        {"exceeds_26", profile.exceeds_26},
    };
}

} // namespace blockbound
