#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace blockbound {

// Exact unbounded-precision count. Serializes losslessly as a decimal string.
using BigCount = mpz_class;

// Exact rational, canonicalized to lowest terms with positive denominator.
// Needed because some prefactors carry a negative power of mu at k=1.
using ExactRational = mpq_class;

inline std::string to_decimal_string(const BigCount& v) {
    return v.get_str(10);
}

// "p/q" in lowest terms; integral values still print the "/1".
inline std::string to_fraction_string(const ExactRational& v) {
    ExactRational c = v;
    c.canonicalize();
    return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

// Smallest integer >= v. Counts are rounded up only at report time so that
// upper-bound semantics survive the rational-to-integer step.
inline BigCount ceil_to_count(const ExactRational& v) {
    BigCount q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return q;
}

// Exact conversion: every finite double is a binary rational.
inline ExactRational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("rational_from_double: value is not finite");
    ExactRational r;
    mpq_set_d(r.get_mpq_t(), v);
    return r;
}

// log2 of a positive big integer without overflowing double.
inline double log2_big(const BigCount& v) {
    if (v <= 0) throw std::domain_error("log2_big: value must be positive");
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

inline double log2_rational(const ExactRational& v) {
    if (v <= 0) throw std::domain_error("log2_rational: value must be positive");
    return log2_big(v.get_num()) - log2_big(v.get_den());
}

inline BigCount factorial_big(unsigned long n) {
    BigCount f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace blockbound
