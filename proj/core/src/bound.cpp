#include "blockbound/bound.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "blockbound/combinatorics.hpp"

namespace blockbound {

std::string to_string(BoundMode mode) {
    switch (mode) {
        case BoundMode::paper_stirling: return "paper-stirling";
        case BoundMode::exact_sum: return "exact-sum";
        case BoundMode::affix_refined: return "affix-refined";
    }
    throw std::invalid_argument("to_string: bad BoundMode");
}

BoundMode bound_mode_from_string(const std::string& name) {
    if (name == "paper" || name == "paper-stirling") return BoundMode::paper_stirling;
    if (name == "exact" || name == "exact-sum") return BoundMode::exact_sum;
    if (name == "affix" || name == "affix-refined") return BoundMode::affix_refined;
    throw std::invalid_argument("unknown bound mode '" + name + "' (expected paper|exact|affix)");
}

void BoundParams::validate() const {
    if (B < 2) throw std::invalid_argument("BoundParams: B must be >= 2");
    if (N < 1) throw std::invalid_argument("BoundParams: N must be >= 1");
    if (!(mu > 0.0)) throw std::invalid_argument("BoundParams: mu must be > 0");
    if (!(X >= 1.0)) throw std::invalid_argument("BoundParams: X must be >= 1");
    if (lambda && !(*lambda > 0.0)) throw std::invalid_argument("BoundParams: lambda must be > 0");
}

double BoundParams::edge_constant() const {
    if (mode == BoundMode::affix_refined) return lambda.value_or(26.0);
    return X;
}

double x_constant(std::uint64_t B, std::uint64_t N) {
    if (B < 2) throw std::invalid_argument("x_constant: B must be >= 2");
    if (N < 1) throw std::invalid_argument("x_constant: N must be >= 1");
    const std::uint64_t cmax = std::max<std::uint64_t>(1, B - 2);
    ExactRational best(0);
    BigCount pow26 = 1;
    for (std::uint64_t c = 1; c <= cmax; ++c) {
        pow26 *= 26;
        BigCount capped = pow26 < BigCount(static_cast<unsigned long>(N))
                              ? pow26
                              : BigCount(static_cast<unsigned long>(N));
        ExactRational ratio(capped);
        ratio /= ExactRational(binomial(B, static_cast<std::int64_t>(c - 1)));
        if (ratio > best) best = ratio;
    }
    // Round up to the nearest representable double so the returned value
    // never falls below the exact maximum ratio.
    double d = best.get_d();
    while (rational_from_double(d) < best) d = std::nextafter(d, INFINITY);
    return d;
}

int form_delta(int form) {
    switch (form) {
        case 1: return 1;
        case 2: case 3: return 0;
        case 4: return -1;
    }
    throw std::invalid_argument("form_delta: form must be in 1..4");
}

std::int64_t slot_count(int form, std::uint64_t k, std::uint64_t B, std::uint64_t slot_reserve) {
    if (k == 0) throw std::invalid_argument("slot_count: k must be >= 1");
    return static_cast<std::int64_t>(B) - static_cast<std::int64_t>(slot_reserve) +
           form_delta(form) - 2 * static_cast<std::int64_t>(k);
}

namespace {

double stirling_prefactor(int form, double edge, double mu) {
    switch (form) {
        case 1: return (edge / mu) * (edge / mu);
        case 2: case 3: return edge / mu;
        case 4: return 1.0;
    }
    throw std::invalid_argument("bad form");
}

// E^2 * mu^(k-2), E * mu^(k-1), E * mu^(k-1), mu^k -- exactly, allowing the
// k=1 negative exponent on mu.
ExactRational exact_prefactor(int form, std::uint64_t k, const BoundParams& p) {
    const ExactRational edge = rational_from_double(p.edge_constant());
    const ExactRational mu = rational_from_double(p.mu);
    ExactRational pre;
    std::int64_t mu_exp;
    switch (form) {
        case 1: pre = edge * edge; mu_exp = static_cast<std::int64_t>(k) - 2; break;
        case 2:
        case 3: pre = edge; mu_exp = static_cast<std::int64_t>(k) - 1; break;
        case 4: pre = 1; mu_exp = static_cast<std::int64_t>(k); break;
        default: throw std::invalid_argument("bad form");
    }
    ExactRational mu_pow = 1;
    for (std::int64_t e = 0; e < std::abs(mu_exp); ++e) mu_pow *= mu;
    if (mu_exp < 0) {
        if (mu_pow == 0) throw std::invalid_argument("term_exact: mu must be nonzero");
        mu_pow = ExactRational(1) / mu_pow;
    }
    return pre * mu_pow;
}

} // namespace

double term_stirling(int form, std::uint64_t k, const BoundParams& p, std::uint64_t slot_reserve) {
    if (k == 0) throw std::invalid_argument("term_stirling: k must be >= 1");
    const std::int64_t s0 = slot_count(form, k, p.B, slot_reserve);
    if (s0 < 1) {
        throw std::domain_error("term_stirling: slot count " + std::to_string(s0) +
                                " < 1 for form " + std::to_string(form) + ", k " +
                                std::to_string(k) + "; use term_exact for degenerate cells");
    }
    const double s = static_cast<double>(s0);
    const double bk = static_cast<double>(p.B) * static_cast<double>(k);
    const double value = stirling_prefactor(form, p.edge_constant(), p.mu) *
                         std::pow(p.mu, static_cast<double>(k)) /
                         std::sqrt(2.0 * std::numbers::pi * s) *
                         std::pow(std::numbers::e * bk / s, s) *
                         std::pow(1.0 + static_cast<double>(p.punct_count) * s / bk,
                                  static_cast<double>(k));
    return value;
}

ExactRational term_exact(int form, std::uint64_t k, const BoundParams& p,
                         std::uint64_t slot_reserve) {
    if (k == 0) throw std::invalid_argument("term_exact: k must be >= 1");
    const std::int64_t s0 = slot_count(form, k, p.B, slot_reserve);
    BigCount inner = 0;
    for (std::uint64_t i = 0; i <= k; ++i) {
        BigCount punct_pow;
        mpz_ui_pow_ui(punct_pow.get_mpz_t(), p.punct_count, i);
        inner += binomial(k, static_cast<std::int64_t>(i)) * punct_pow *
                 binomial(p.B * k, s0 - static_cast<std::int64_t>(i));
    }
    if (inner == 0) return ExactRational(0);
    return exact_prefactor(form, k, p) * ExactRational(inner);
}

double FormTerm::value_as_double() const {
    return exact ? exact_value.get_d() : real_value;
}

namespace {

BigCount ceil_double_to_count(double v) {
    if (v < 0) throw std::domain_error("negative bound value");
    return ceil_to_count(rational_from_double(v));
}

void check_finite(double v, const BoundParams& p) {
    if (!std::isfinite(v)) {
        throw std::range_error("closed-form bound overflows double at B = " +
                               std::to_string(p.B) + "; use exact-sum mode");
    }
}

FormTerm make_exact_term(const std::string& component, int form, std::uint64_t k,
                         const BoundParams& p, std::uint64_t slot_reserve) {
    FormTerm t;
    t.component = component;
    t.form = form;
    t.k = k;
    t.exact = true;
    t.exact_value = term_exact(form, k, p, slot_reserve);
    const std::int64_t s0 = slot_count(form, k, p.B, slot_reserve);
    const ExactRational pre = exact_prefactor(form, k, p);
    for (std::uint64_t i = 0; i <= k; ++i) {
        BigCount punct_pow;
        mpz_ui_pow_ui(punct_pow.get_mpz_t(), p.punct_count, i);
        BigCount inner = binomial(k, static_cast<std::int64_t>(i)) * punct_pow *
                         binomial(p.B * k, s0 - static_cast<std::int64_t>(i));
        if (inner != 0) t.i_breakdown.emplace_back(i, pre * ExactRational(inner));
    }
    return t;
}

} // namespace

MinusculeBreakdown bound_minuscule(const BoundParams& p) {
    p.validate();
    MinusculeBreakdown out;
    out.exact = (p.mode == BoundMode::exact_sum);
    const std::int64_t min_slots = out.exact ? 0 : 1;
    for (int form = 1; form <= 4; ++form) {
        for (std::uint64_t k = 1; slot_count(form, k, p.B) >= min_slots; ++k) {
            FormTerm t;
            if (out.exact) {
                t = make_exact_term("minuscule", form, k, p, 0);
                out.exact_total += t.exact_value;
                if (form == 3) out.exact_f3 += t.exact_value;
                if (form == 4) out.exact_f4 += t.exact_value;
            } else {
                t.component = "minuscule";
                t.form = form;
                t.k = k;
                t.real_value = term_stirling(form, k, p);
                check_finite(t.real_value, p);
                out.real_total += t.real_value;
                if (form == 3) out.real_f3 += t.real_value;
                if (form == 4) out.real_f4 += t.real_value;
            }
            out.terms.push_back(std::move(t));
        }
    }
    if (!out.exact) {
        // Trailing constant carried by the closed-form presentation: the edge
        // constant squared times mu^(kmax-2) at the deepest form-1 cell.
        const std::uint64_t kmax1 = p.B / 2;
        FormTerm c;
        c.component = "minuscule";
        c.form = 1;
        c.k = kmax1;
        c.constant_term = true;
        const double edge = p.edge_constant();
        c.real_value = edge * edge * std::pow(p.mu, static_cast<double>(kmax1) - 2.0);
        check_finite(c.real_value, p);
        out.real_total += c.real_value;
        check_finite(out.real_total, p);
        out.terms.push_back(std::move(c));
    }
    return out;
}

BigCount MinusculeBreakdown::count() const {
    return exact ? ceil_to_count(exact_total) : ceil_double_to_count(real_total);
}

BigCount PunctFirstBreakdown::count() const {
    return exact ? ceil_to_count(exact_total) : ceil_double_to_count(real_total);
}

CapitalResult bound_capital(const BoundParams& p, const MinusculeBreakdown& minuscule) {
    p.validate();
    CapitalResult r;
    r.exact = minuscule.exact;
    if (r.exact) {
        const ExactRational ratio = rational_from_double(p.mu) /
                                    rational_from_double(p.edge_constant());
        r.exact_value = ratio * minuscule.exact_total + minuscule.exact_f3 + minuscule.exact_f4;
        r.count = ceil_to_count(r.exact_value);
    } else {
        r.real_value = (p.mu / p.edge_constant()) * minuscule.real_total +
                       minuscule.real_f3 + minuscule.real_f4;
        check_finite(r.real_value, p);
        r.count = ceil_double_to_count(r.real_value);
    }
    return r;
}

PunctFirstBreakdown bound_punct_first(const BoundParams& p) {
    p.validate();
    PunctFirstBreakdown out;
    out.exact = (p.mode == BoundMode::exact_sum);
    if (p.B < 3 || p.punct_count == 0) return out; // no room for punct + space + letter
    const std::int64_t min_slots = out.exact ? 0 : 1;
    const ExactRational punct_factor(static_cast<unsigned long>(p.punct_count));
    for (int form = 3; form <= 4; ++form) {
        for (std::uint64_t k = 1; slot_count(form, k, p.B, 1) >= min_slots; ++k) {
            FormTerm t;
            if (out.exact) {
                t = make_exact_term("punct_first", form, k, p, 1);
                t.exact_value *= punct_factor;
                for (auto& [i, v] : t.i_breakdown) v *= punct_factor;
                out.exact_total += t.exact_value;
            } else {
                t.component = "punct_first";
                t.form = form;
                t.k = k;
                t.real_value = static_cast<double>(p.punct_count) * term_stirling(form, k, p, 1);
                check_finite(t.real_value, p);
                out.real_total += t.real_value;
            }
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

BoundReport bound_total(const BoundParams& p) {
    p.validate();
    BoundReport report;
    report.params = p;
    if (p.mode == BoundMode::affix_refined && !p.lambda) {
        report.params.lambda = 26.0;
        report.notes.push_back("affix-refined mode: lambda not supplied, using the default 26");
    }
    MinusculeBreakdown minuscule = bound_minuscule(report.params);
    CapitalResult capital = bound_capital(report.params, minuscule);
    PunctFirstBreakdown punct = bound_punct_first(report.params);

    report.F_minuscule = minuscule.count();
    report.F_capital = capital.count;
    report.F_punct_first = punct.count();
    report.F_total = report.F_minuscule + report.F_capital + report.F_punct_first;
    if (report.F_total > 0) report.log2_total = log2_big(report.F_total);

    report.terms = std::move(minuscule.terms);
    for (auto& t : punct.terms) report.terms.push_back(std::move(t));

    if (p.mode == BoundMode::paper_stirling && p.B == 16) {
        const double ratio_part = (p.mu / p.edge_constant()) * minuscule.real_total;
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "capital class: formula (mu/X)*F_minuscule + F3 + F4 = %.4g; the "
                      "(mu/X)*F_minuscule part alone is %.4g, above the 4.2e14 figure this "
                      "configuration is usually quoted at; the computed value is reported "
                      "unchanged",
                      capital.real_value, ratio_part);
        report.notes.push_back(buf);
    }
    report.notes.push_back("X source: " + p.x_source);
    return report;
}

nlohmann::json to_json(const FormTerm& term) {
    nlohmann::json j{
        {"component", term.component},
        {"form", term.form},
        {"k", term.k},
        {"mode", term.exact ? "exact" : "stirling"},
    };
    if (term.constant_term) j["constant_term"] = true;
    if (term.exact) {
        j["value"] = to_fraction_string(term.exact_value);
        j["value_log2"] = term.exact_value > 0
                              ? nlohmann::json(log2_rational(term.exact_value))
                              : nlohmann::json(nullptr);
        nlohmann::json breakdown = nlohmann::json::array();
        for (const auto& [i, v] : term.i_breakdown) {
            breakdown.push_back({{"i", i}, {"value", to_fraction_string(v)}});
        }
        j["i_breakdown"] = breakdown;
    } else {
        j["value"] = term.real_value;
        j["value_log2"] = term.real_value > 0 ? nlohmann::json(std::log2(term.real_value))
                                              : nlohmann::json(nullptr);
    }
    return j;
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json params{
        {"B", report.params.B},
        {"N", report.params.N},
        {"mu", report.params.mu},
        {"punct_count", report.params.punct_count},
        {"X", report.params.X},
        {"x_source", report.params.x_source},
        {"mode", to_string(report.params.mode)},
    };
    if (report.params.lambda) params["lambda"] = *report.params.lambda;

    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : report.terms) terms.push_back(to_json(t));

    return nlohmann::json{
        {"params", params},
        {"F_minuscule", to_decimal_string(report.F_minuscule)},
        {"F_capital", to_decimal_string(report.F_capital)},
        {"F_punct_first", to_decimal_string(report.F_punct_first)},
        {"F_total", to_decimal_string(report.F_total)},
        {"log2_total", report.log2_total ? nlohmann::json(*report.log2_total)
                                         : nlohmann::json(nullptr)},
        {"terms", terms},
        {"notes", report.notes},
    };
}

} // namespace blockbound
