#pragma once

#include <cstdint>
#include <vector>

#include "blockbound/numeric.hpp"

namespace blockbound {

// C(n, k). Total: out-of-range k yields 0 rather than an error.
BigCount binomial(std::uint64_t n, std::int64_t k);

// Number of k-tuples of nonnegative integers summing to s: C(s+k-1, k-1).
BigCount compositions_count(std::uint64_t k, std::uint64_t s);

// Streams all k-tuples of nonnegative integers summing to s in lexicographic
// order. Usage: for (CompositionEnumerator e(k, s); e.valid(); e.next()) ...
class CompositionEnumerator {
public:
    CompositionEnumerator(std::uint64_t k, std::uint64_t s);

    bool valid() const noexcept { return valid_; }
    const std::vector<std::uint64_t>& current() const noexcept { return parts_; }
    void next();

private:
    std::vector<std::uint64_t> parts_;
    bool valid_;
};

// Sum over all compositions d_1+...+d_k = s of prod_i C(B, d_i), evaluated by
// explicit enumeration. Equals C(B*k, s) by the Vandermonde convolution; the
// closed form is what callers should use beyond the cap.
BigCount composition_product_sum(std::uint64_t k, std::uint64_t s, std::uint64_t B,
                                 std::uint64_t enumeration_cap = 10'000'000);

// sqrt(2*pi*n) * (n/e)^n, a guaranteed lower bound on n!.
double stirling_factorial_lower(std::uint64_t n);

} // namespace blockbound
