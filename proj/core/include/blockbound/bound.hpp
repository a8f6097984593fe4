#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "blockbound/numeric.hpp"

namespace blockbound {

enum class BoundMode {
    paper_stirling, // literal closed forms (Stirling-style), fixed k ranges, constant term
    exact_sum,      // exact rational binomial sums, k iterated until terms vanish
    affix_refined,  // Stirling closed forms with the affix constant lambda as edge factor
};

std::string to_string(BoundMode mode);
BoundMode bound_mode_from_string(const std::string& name); // "paper" | "exact" | "affix"

struct BoundParams {
    std::uint64_t B = 16;
    std::uint64_t N = 60000;
    double mu = 2.0;
    std::uint64_t punct_count = 3;
    double X = 147.0;
    std::optional<double> lambda;    // affix-refined edge constant (defaults to 26)
    BoundMode mode = BoundMode::paper_stirling;
    std::string x_source = "literal"; // "literal" | "computed" | "measured" | "explicit"

    void validate() const; // B >= 2, N >= 1, mu > 0, punct_count >= 0, X >= 1
    double edge_constant() const;    // X, or lambda in affix-refined mode
};

// Boundary constant: max over segment lengths c (1 <= c <= max(1, B-2), the
// longest edge segment that can coexist with another word) of
// min(26^c, N) / C(B, c-1).
double x_constant(std::uint64_t B, std::uint64_t N);

// delta = +1, 0, 0, -1 for forms 1..4.
int form_delta(int form);

// Free letter slots after placing k words and the form's spaces:
// s0 = B + delta(form) - 2k. slot_reserve shifts the block length down
// (the punctuation-first class computes at B-1) without moving the bases.
std::int64_t slot_count(int form, std::uint64_t k, std::uint64_t B,
                        std::uint64_t slot_reserve = 0);

// Closed-form upper bound for one (form, k) cell:
//   prefactor * mu^k / sqrt(2*pi*s0) * (e*B*k/s0)^s0 * (1 + punct*s0/(B*k))^k
// with prefactor (E/mu)^2, E/mu, E/mu, 1 for forms 1..4 (E = edge constant).
// Requires s0 >= 1.
double term_stirling(int form, std::uint64_t k, const BoundParams& p,
                     std::uint64_t slot_reserve = 0);

// Exact counterpart:
//   prefactor_exact * sum_{i=0}^{k} C(k,i) * punct^i * C(B*k, s0-i)
// with prefactor_exact E^2*mu^(k-2), E*mu^(k-1), E*mu^(k-1), mu^k.
// Total: vanishing binomials make out-of-range cells 0.
ExactRational term_exact(int form, std::uint64_t k, const BoundParams& p,
                         std::uint64_t slot_reserve = 0);

struct FormTerm {
    std::string component;  // "minuscule" | "punct_first"
    int form = 0;
    std::uint64_t k = 0;
    bool constant_term = false;
    bool exact = false;
    double real_value = 0.0;
    ExactRational exact_value{0};
    std::vector<std::pair<std::uint64_t, ExactRational>> i_breakdown; // exact mode only

    double value_as_double() const;
};

// Minuscule-class total plus the form-3/form-4 partial sums that the
// capital-class bound reuses. Values live in the active mode's arithmetic.
struct MinusculeBreakdown {
    bool exact = false;
    double real_total = 0.0;
    double real_f3 = 0.0;
    double real_f4 = 0.0;
    ExactRational exact_total{0};
    ExactRational exact_f3{0};
    ExactRational exact_f4{0};
    std::vector<FormTerm> terms;

    BigCount count() const; // ceiling of the active total
};

struct PunctFirstBreakdown {
    bool exact = false;
    double real_total = 0.0;
    ExactRational exact_total{0};
    std::vector<FormTerm> terms;

    BigCount count() const;
};

struct CapitalResult {
    bool exact = false;
    double real_value = 0.0;
    ExactRational exact_value{0};
    BigCount count;
};

struct BoundReport {
    BoundParams params;
    BigCount F_minuscule;
    BigCount F_capital;
    BigCount F_punct_first;
    BigCount F_total;
    std::optional<double> log2_total; // absent when F_total == 0
    std::vector<FormTerm> terms;
    std::vector<std::string> notes;
};

MinusculeBreakdown bound_minuscule(const BoundParams& p);
CapitalResult bound_capital(const BoundParams& p, const MinusculeBreakdown& minuscule);
PunctFirstBreakdown bound_punct_first(const BoundParams& p);
BoundReport bound_total(const BoundParams& p);

nlohmann::json to_json(const FormTerm& term);
nlohmann::json to_json(const BoundReport& report);

} // namespace blockbound
