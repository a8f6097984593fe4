#include "blockbound/attack.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "blockbound/errors.hpp"

namespace blockbound {

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::bounded(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SplitMix64::bounded: bound must be nonzero");
    const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

namespace {

void check_bits(unsigned m) {
    if (m < kMinBlockBits || m > kMaxBlockBits) {
        throw std::invalid_argument("block size must be between " +
                                    std::to_string(kMinBlockBits) + " and " +
                                    std::to_string(kMaxBlockBits) + " bits, got " +
                                    std::to_string(m));
    }
}

} // namespace

std::vector<std::uint32_t> make_permutation(unsigned m, std::uint64_t seed) {
    check_bits(m);
    const std::uint64_t n = std::uint64_t{1} << m;
    std::vector<std::uint32_t> table(n);
    for (std::uint64_t i = 0; i < n; ++i) table[i] = static_cast<std::uint32_t>(i);
    SplitMix64 rng(seed);
    for (std::uint64_t i = n - 1; i > 0; --i) {
        const std::uint64_t j = rng.bounded(i + 1);
        std::swap(table[i], table[j]);
    }
    return table;
}

std::vector<std::uint32_t> build_inverse(const std::vector<std::uint32_t>& table) {
    const std::size_t n = table.size();
    constexpr std::uint32_t unset = 0xFFFFFFFFu;
    std::vector<std::uint32_t> inverse(n, unset);
    for (std::size_t pt = 0; pt < n; ++pt) {
        const std::uint32_t ct = table[pt];
        if (ct >= n) {
            throw std::domain_error("build_inverse: entry " + std::to_string(ct) +
                                    " is out of range");
        }
        if (inverse[ct] != unset) {
            throw std::domain_error("build_inverse: duplicate ciphertext " + std::to_string(ct) +
                                    "; table is not a permutation");
        }
        inverse[ct] = static_cast<std::uint32_t>(pt);
    }
    return inverse;
}

std::optional<std::uint32_t> Codebook::lookup(std::uint32_t ct) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), ct,
                                     [](const auto& e, std::uint32_t v) { return e.first < v; });
    if (it != entries.end() && it->first == ct) return it->second;
    return std::nullopt;
}

Codebook build_codebook(const std::vector<std::uint32_t>& table, unsigned m,
                        std::uint64_t dict_size, std::uint64_t seed) {
    check_bits(m);
    const std::uint64_t n = std::uint64_t{1} << m;
    if (table.size() != n) {
        throw std::invalid_argument("build_codebook: table size does not match 2^m");
    }
    if (dict_size < 1 || dict_size > n) {
        throw std::invalid_argument("build_codebook: dictionary size must be in [1, 2^m]");
    }
    // Partial Fisher-Yates: the first dict_size slots end up holding a
    // uniform sample of distinct plaintexts.
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < dict_size; ++i) {
        const std::uint64_t j = i + rng.bounded(n - i);
        std::swap(pool[i], pool[j]);
    }
    Codebook book;
    book.m = m;
    book.seed = seed;
    book.entries.reserve(dict_size);
    for (std::uint64_t i = 0; i < dict_size; ++i) {
        const std::uint32_t pt = pool[i];
        book.entries.emplace_back(table[pt], pt);
    }
    std::sort(book.entries.begin(), book.entries.end());
    return book;
}

namespace {

std::string hex_pad(std::uint32_t value, unsigned digits) {
    static const char* kDigits = "0123456789abcdef";
    std::string out(digits, '0');
    for (unsigned i = 0; i < digits; ++i) {
        out[digits - 1 - i] = kDigits[(value >> (4 * i)) & 0xF];
    }
    return out;
}

bool parse_hex(const std::string& token, std::uint64_t& value) {
    if (token.empty() || token.size() > 16) return false;
    value = 0;
    for (char c : token) {
        unsigned digit;
        if (c >= '0' && c <= '9') digit = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') digit = static_cast<unsigned>(c - 'a') + 10;
        else return false;
        value = (value << 4) | digit;
    }
    return true;
}

bool parse_decimal(const std::string& token, std::uint64_t& value) {
    if (token.empty() || token.size() > 20) return false;
    value = 0;
    for (char c : token) {
        if (c < '0' || c > '9') return false;
        const std::uint64_t next = value * 10 + static_cast<std::uint64_t>(c - '0');
        if (next < value) return false;
        value = next;
    }
    return true;
}

} // namespace

void save_codebook(const Codebook& book, std::ostream& out) {
    check_bits(book.m);
    const unsigned digits = (book.m + 3) / 4;
    out << "m=" << book.m << " seed=" << book.seed << " D=" << book.entries.size() << '\n';
    for (const auto& [ct, pt] : book.entries) {
        out << hex_pad(ct, digits) << ',' << hex_pad(pt, digits) << '\n';
    }
}

std::string codebook_to_text(const Codebook& book) {
    std::ostringstream out;
    save_codebook(book, out);
    return out.str();
}

Codebook load_codebook(std::istream& in) {
    std::string line;
    std::uint64_t lineno = 0;
    if (!std::getline(in, line)) throw parse_error("codebook: empty input", 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::uint64_t m_val = 0, seed_val = 0, d_val = 0;
    {
        std::istringstream header(line);
        std::string tok_m, tok_seed, tok_d, extra;
        header >> tok_m >> tok_seed >> tok_d;
        const bool shape_ok = !header.fail() && !(header >> extra) &&
                              tok_m.rfind("m=", 0) == 0 && tok_seed.rfind("seed=", 0) == 0 &&
                              tok_d.rfind("D=", 0) == 0;
        if (!shape_ok || !parse_decimal(tok_m.substr(2), m_val) ||
            !parse_decimal(tok_seed.substr(5), seed_val) ||
            !parse_decimal(tok_d.substr(2), d_val)) {
            throw parse_error("codebook: malformed header '" + line + "'", lineno);
        }
    }
    if (m_val < kMinBlockBits || m_val > kMaxBlockBits) {
        throw parse_error("codebook: block size " + std::to_string(m_val) + " out of range",
                          lineno);
    }
    Codebook book;
    book.m = static_cast<unsigned>(m_val);
    book.seed = seed_val;
    const std::uint64_t n = std::uint64_t{1} << book.m;
    if (d_val < 1 || d_val > n) {
        throw parse_error("codebook: D = " + std::to_string(d_val) + " out of range", lineno);
    }

    book.entries.reserve(d_val);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            throw parse_error("codebook: blank line", lineno);
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw parse_error("codebook: expected '<ct_hex>,<pt_hex>' in '" + line + "'", lineno);
        }
        std::uint64_t ct = 0, pt = 0;
        if (!parse_hex(line.substr(0, comma), ct) || !parse_hex(line.substr(comma + 1), pt)) {
            throw parse_error("codebook: invalid hex in '" + line + "'", lineno);
        }
        if (ct >= n || pt >= n) {
            throw parse_error("codebook: value out of range for m = " + std::to_string(book.m) +
                              " in '" + line + "'", lineno);
        }
        if (!book.entries.empty() && book.entries.back().first >= ct) {
            throw parse_error("codebook: ciphertexts must be strictly increasing", lineno);
        }
        book.entries.emplace_back(static_cast<std::uint32_t>(ct), static_cast<std::uint32_t>(pt));
    }
    if (book.entries.size() != d_val) {
        throw parse_error("codebook: header promises D = " + std::to_string(d_val) +
                          " entries but found " + std::to_string(book.entries.size()), lineno);
    }
    return book;
}

Codebook codebook_from_text(const std::string& text) {
    std::istringstream in(text);
    return load_codebook(in);
}

double analytic_success(std::uint64_t space, std::uint64_t dict, std::uint64_t samples) {
    if (space == 0) throw std::invalid_argument("analytic_success: space must be nonzero");
    if (dict > space) throw std::invalid_argument("analytic_success: dict exceeds space");
    const double miss = 1.0 - static_cast<double>(dict) / static_cast<double>(space);
    return 1.0 - std::pow(miss, static_cast<double>(samples));
}

std::uint64_t AttackConfig::resolved_dict_size() const {
    if (dict_size) return *dict_size;
    const std::uint64_t n = std::uint64_t{1} << m;
    return std::min<std::uint64_t>(n, std::uint64_t{1} << (m / 2 + 2));
}

std::uint64_t AttackConfig::resolved_samples() const {
    if (samples) return *samples;
    return std::uint64_t{1} << (m / 2);
}

void AttackConfig::validate() const {
    check_bits(m);
    const std::uint64_t n = std::uint64_t{1} << m;
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const std::uint64_t d = resolved_dict_size();
    if (d < 1 || d > n) {
        throw std::invalid_argument("dictionary size must be in [1, 2^m], got " +
                                    std::to_string(d));
    }
    if (resolved_samples() < 1) throw std::invalid_argument("samples must be >= 1");
    if (trials > budget / n) {
        throw resource_error("attack: 2^m * trials = 2^" + std::to_string(m) + " * " +
                             std::to_string(trials) + " exceeds the budget of " +
                             std::to_string(budget) + " table constructions");
    }
}

AttackResult run_trials(const AttackConfig& config, Codebook* first_codebook) {
    config.validate();
    const std::uint64_t n = std::uint64_t{1} << config.m;
    const std::uint64_t d = config.resolved_dict_size();
    const std::uint64_t s = config.resolved_samples();

    AttackResult result;
    result.config = config;
    result.dict_size = d;
    result.samples = s;

    std::vector<std::uint8_t> in_book(n);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        SplitMix64 trial_root(config.seed + t);
        const std::uint64_t trial_seed = trial_root.next();
        SplitMix64 trial_rng(trial_seed);
        const std::uint64_t cipher_seed = trial_rng.next();
        const std::uint64_t codebook_seed = trial_rng.next();
        const std::uint64_t sample_seed = trial_rng.next();

        const std::vector<std::uint32_t> table = make_permutation(config.m, cipher_seed);
        const Codebook book = build_codebook(table, config.m, d, codebook_seed);
        if (t == 0 && first_codebook != nullptr) *first_codebook = book;

        std::fill(in_book.begin(), in_book.end(), 0);
        for (const auto& [ct, pt] : book.entries) in_book[ct] = 1;

        SplitMix64 sampler(sample_seed);
        std::uint64_t recovered = 0;
        for (std::uint64_t i = 0; i < s; ++i) {
            const std::uint64_t pt = sampler.bounded(n);
            recovered += in_book[table[pt]];
        }
        result.hit_count += recovered > 0 ? 1 : 0;
        result.recovered_total += recovered;
    }

    const double trials_d = static_cast<double>(config.trials);
    result.hit_rate = static_cast<double>(result.hit_count) / trials_d;
    result.recovered_mean = static_cast<double>(result.recovered_total) / trials_d;
    result.analytic = analytic_success(n, d, s);
    const double half = 1.96 * std::sqrt(result.hit_rate * (1.0 - result.hit_rate) / trials_d);
    result.ci95 = {std::max(0.0, result.hit_rate - half), std::min(1.0, result.hit_rate + half)};
    return result;
}

nlohmann::json to_json(const AttackResult& result) {
    return nlohmann::json{
        {"m", result.config.m},
        {"dict_size", result.dict_size},
        {"samples", result.samples},
        {"trials", result.config.trials},
        {"seed", result.config.seed},
        {"hit_count", result.hit_count},
        {"hit_rate", result.hit_rate},
        {"recovered_total", result.recovered_total},
        {"recovered_mean", result.recovered_mean},
        {"analytic_success", result.analytic},
        {"ci95", nlohmann::json::array({result.ci95.first, result.ci95.second})},
    };
}

} // namespace blockbound
