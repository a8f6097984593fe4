#include "blockbound/combinatorics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blockbound/errors.hpp"

namespace blockbound {

BigCount binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

BigCount compositions_count(std::uint64_t k, std::uint64_t s) {
    if (k == 0) throw std::invalid_argument("compositions_count: k must be >= 1");
    return binomial(s + k - 1, static_cast<std::int64_t>(k - 1));
}

CompositionEnumerator::CompositionEnumerator(std::uint64_t k, std::uint64_t s)
    : parts_(k, 0), valid_(true) {
    if (k == 0) throw std::invalid_argument("CompositionEnumerator: k must be >= 1");
    parts_.back() = s; // lexicographically first: (0, ..., 0, s)
}

void CompositionEnumerator::next() {
    // Lexicographic successor: bump the rightmost slot that has mass to its
    // right, then push the remainder of that mass all the way right.
    const std::size_t k = parts_.size();
    std::uint64_t suffix = 0;
    for (std::size_t i = k; i-- > 1;) {
        suffix += parts_[i];
        if (suffix > 0) {
            parts_[i - 1] += 1;
            for (std::size_t j = i; j < k; ++j) parts_[j] = 0;
            parts_[k - 1] = suffix - 1;
            return;
        }
    }
    valid_ = false;
}

BigCount composition_product_sum(std::uint64_t k, std::uint64_t s, std::uint64_t B,
                                 std::uint64_t enumeration_cap) {
    if (k == 0) throw std::invalid_argument("composition_product_sum: k must be >= 1");
    if (B == 0) throw std::invalid_argument("composition_product_sum: B must be >= 1");
    BigCount n_tuples = compositions_count(k, s);
    if (n_tuples > BigCount(static_cast<unsigned long>(enumeration_cap))) {
        throw resource_error("composition_product_sum: " + to_decimal_string(n_tuples) +
                             " compositions exceed the enumeration cap of " +
                             std::to_string(enumeration_cap) +
                             "; use the closed form C(B*k, s) instead");
    }
    BigCount total = 0;
    for (CompositionEnumerator e(k, s); e.valid(); e.next()) {
        BigCount prod = 1;
        for (std::uint64_t d : e.current()) {
            prod *= binomial(B, static_cast<std::int64_t>(d));
            if (prod == 0) break;
        }
        total += prod;
    }
    return total;
}

double stirling_factorial_lower(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("stirling_factorial_lower: n must be >= 1");
    const double nd = static_cast<double>(n);
    // Evaluate in log space so the overflow check is explicit.
    const double log_value = 0.5 * std::log(2.0 * std::numbers::pi * nd) + nd * (std::log(nd) - 1.0);
    constexpr double log_dbl_max = 709.78; // log(DBL_MAX) rounded down
    if (log_value >= log_dbl_max) {
        throw std::range_error("stirling_factorial_lower: result overflows double for n = " +
                               std::to_string(n));
    }
    return std::exp(log_value);
}

} // namespace blockbound
