#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

namespace blockbound {

// Normalized word set: lowercase ASCII letter strings, deduplicated.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::set<std::string> words);

    const std::set<std::string>& words() const noexcept { return words_; }
    std::uint64_t size() const noexcept { return words_.size(); }
    bool contains(const std::string& w) const { return words_.count(w) != 0; }

    // One word per line (sorted), trailing newline; reloadable by load_wordlist.
    std::string to_text() const;

private:
    std::set<std::string> words_;
};

struct LoadResult {
    Vocabulary vocabulary;
    std::uint64_t skipped_lines = 0; // lenient mode only
};

// One candidate word per line; '#' lines are comments; blank lines ignored;
// CRLF tolerated; case-folded to lowercase. A line with any other non-letter
// byte is a parse error (strict) or skipped and counted (lenient).
LoadResult load_wordlist(std::istream& in, bool strict);
LoadResult load_wordlist_text(const std::string& text, bool strict);

// Distinct segment sets per length 1..L, materialized. words[c] holds words
// of length exactly c; prefixes/suffixes/substrings[c] hold the distinct
// c-letter edge/interior cuts over all words of length >= c (a word counts
// as its own prefix, suffix, and substring).
struct SegmentSets {
    std::uint64_t L = 0;
    std::vector<std::unordered_set<std::string>> words;
    std::vector<std::unordered_set<std::string>> prefixes;
    std::vector<std::unordered_set<std::string>> suffixes;
    std::vector<std::unordered_set<std::string>> substrings;
};

SegmentSets build_segment_sets(const Vocabulary& voc, std::uint64_t L);

// Cardinalities of the segment sets at window B. Index i runs 1..B; [0] is 0.
struct VocabStats {
    std::uint64_t B = 0;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> W;
    std::vector<std::uint64_t> P;
    std::vector<std::uint64_t> S;
    std::vector<std::uint64_t> X_sub;
};

VocabStats compute_stats(const Vocabulary& voc, std::uint64_t B);
VocabStats stats_from_sets(const SegmentSets& sets, std::uint64_t N, std::uint64_t B);

// Word-length distribution ratios mu_i = W[i] / C(B, i-1) and their maximum.
struct LengthProfile {
    std::uint64_t B = 0;
    double mu_target = 0.0;
    std::vector<double> mu_i; // index 1..B
    double mu = 0.0;
    bool satisfied = true;
    std::optional<std::uint64_t> worst_i; // argmax of mu_i when mu > 0
};

LengthProfile length_profile(const VocabStats& stats, double mu_target);
LengthProfile length_profile(const Vocabulary& voc, std::uint64_t B, double mu_target);

// Measured mu as a double guaranteed >= every exact ratio W[i]/C(B, i-1),
// i.e. the smallest representable value that satisfies the length condition.
double measured_mu_ceiling(const VocabStats& stats);

// Affix ratios lambda_prefix[i] = P[i]/C(B,i-1), lambda_suffix likewise, and
// whether the small-length entries (2 <= i <= 5) stay within 26.
struct AffixProfile {
    std::uint64_t B = 0;
    std::vector<double> lambda_prefix; // index 1..B
    std::vector<double> lambda_suffix;
    double lambda = 0.0;
    bool small_i_within_26 = true;
    std::vector<std::uint64_t> exceeds_26; // offending i in 2..min(5,B)
};

AffixProfile affix_profile(const VocabStats& stats);
AffixProfile affix_profile(const Vocabulary& voc, std::uint64_t B);

nlohmann::json to_json(const VocabStats& stats);
nlohmann::json to_json(const LengthProfile& profile);
nlohmann::json to_json(const AffixProfile& profile);

} // namespace blockbound
