#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace blockbound {

// Deterministic 64-bit generator (SplitMix64). Every randomized component of
// the attack demo derives from this generator so runs are reproducible from a
// single seed on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    // Uniform draw in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t bounded(std::uint64_t bound);

private:
    std::uint64_t state_;
};

inline constexpr unsigned kMinBlockBits = 2;
inline constexpr unsigned kMaxBlockBits = 24;

// Encryption table of a toy block cipher on m-bit blocks: a uniformly seeded
// permutation of {0, .., 2^m - 1} built by a Fisher-Yates shuffle.
// table[pt] = ct.
std::vector<std::uint32_t> make_permutation(unsigned m, std::uint64_t seed);

// Inverts an encryption table; throws std::domain_error if the table is not
// a permutation (out-of-range or duplicate entries).
std::vector<std::uint32_t> build_inverse(const std::vector<std::uint32_t>& table);

// A codebook of captured (ciphertext, plaintext) pairs for distinct
// plaintexts chosen uniformly at random. Entries are sorted by ciphertext.
struct Codebook {
    unsigned m = 0;               // block size in bits
    std::uint64_t seed = 0;       // selection seed
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries; // (ct, pt)

    // Plaintext for a ciphertext, if captured.
    std::optional<std::uint32_t> lookup(std::uint32_t ct) const;
};

Codebook build_codebook(const std::vector<std::uint32_t>& table, unsigned m,
                        std::uint64_t dict_size, std::uint64_t seed);

// Plain-text file format:
//   m=<bits> seed=<decimal> D=<decimal>
//   <ct_hex>,<pt_hex>          (one per entry, sorted by ct, LF line ends)
// Hex values are lowercase and zero-padded to ceil(m/4) digits.
void save_codebook(const Codebook& book, std::ostream& out);
std::string codebook_to_text(const Codebook& book);
Codebook load_codebook(std::istream& in);
Codebook codebook_from_text(const std::string& text);

// Probability that at least one of S uniform samples (with replacement) from
// a space of `space` blocks lands on one of `dict` captured blocks:
// 1 - (1 - dict/space)^S.
double analytic_success(std::uint64_t space, std::uint64_t dict, std::uint64_t samples);

struct AttackConfig {
    unsigned m = 16;                         // block size in bits
    std::optional<std::uint64_t> dict_size;  // default min(2^m, 2^(floor(m/2)+2))
    std::optional<std::uint64_t> samples;    // default 2^floor(m/2)
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = std::uint64_t{1} << 28; // cap on 2^m * trials work

    std::uint64_t resolved_dict_size() const;
    std::uint64_t resolved_samples() const;
    void validate() const;
};

struct AttackResult {
    AttackConfig config;
    std::uint64_t dict_size = 0; // resolved
    std::uint64_t samples = 0;   // resolved
    std::uint64_t hit_count = 0;
    double hit_rate = 0.0;
    std::uint64_t recovered_total = 0;
    double recovered_mean = 0.0;
    double analytic = 0.0;
    std::pair<double, double> ci95{0.0, 0.0}; // Wald interval, clipped to [0, 1]
};

// Runs `trials` independent experiments. Trial t seeds a fresh generator with
// SplitMix64(seed + t).next(), which in turn yields the cipher, codebook
// selection, and sampling seeds. A trial is a hit when at least one sampled
// block's ciphertext appears in the codebook. If first_codebook is non-null
// it receives trial 0's codebook.
AttackResult run_trials(const AttackConfig& config, Codebook* first_codebook = nullptr);

nlohmann::json to_json(const AttackResult& result);

} // namespace blockbound
