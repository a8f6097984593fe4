#include <doctest.h>

#include <string>

#include "blockbound/bound.hpp"
#include "blockbound/numeric.hpp"

using namespace blockbound;

namespace {

BoundParams defaults(BoundMode mode) {
    BoundParams p;
    p.mode = mode;
    if (mode == BoundMode::affix_refined) p.lambda = 26.0;
    return p;
}

} // namespace

TEST_CASE("bound_mode_from_string accepts short and long spellings") {
    CHECK(bound_mode_from_string("paper") == BoundMode::paper_stirling);
    CHECK(bound_mode_from_string("paper-stirling") == BoundMode::paper_stirling);
    CHECK(bound_mode_from_string("exact") == BoundMode::exact_sum);
    CHECK(bound_mode_from_string("exact-sum") == BoundMode::exact_sum);
    CHECK(bound_mode_from_string("affix") == BoundMode::affix_refined);
    CHECK(bound_mode_from_string("affix-refined") == BoundMode::affix_refined);
    CHECK_THROWS_AS(bound_mode_from_string("fast"), std::invalid_argument);
    CHECK(to_string(BoundMode::exact_sum) == "exact-sum");
}

TEST_CASE("BoundParams validation") {
    BoundParams p;
    CHECK_NOTHROW(p.validate());
    p.B = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BoundParams{};
    p.N = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BoundParams{};
    p.mu = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BoundParams{};
    p.X = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BoundParams{};
    p.mode = BoundMode::affix_refined;
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("x_constant maximizes capped letter counts over edge lengths") {
    // B=16, N=60000: the max sits at c=3, min(26^3, 60000)/C(16,2) = 17576/120.
    CHECK(x_constant(16, 60000) == doctest::Approx(146.46666666666667));
    CHECK(x_constant(16, 60000) < 147.0);
    // Tiny N: the cap bites at c=1.
    CHECK(x_constant(16, 26) == 26.0);
    CHECK(x_constant(2, 5) == 5.0);
    // B=4 restricts c to 1..2.
    CHECK(x_constant(4, 60000) == 169.0);
    CHECK_THROWS_AS(x_constant(1, 100), std::invalid_argument);
    CHECK_THROWS_AS(x_constant(16, 0), std::invalid_argument);
}

TEST_CASE("x_constant never undershoots the exact maximum ratio") {
    const ExactRational exact = ExactRational(17576) / ExactRational(120);
    CHECK(rational_from_double(x_constant(16, 60000)) >= exact);
}

TEST_CASE("form deltas and slot counts") {
    CHECK(form_delta(1) == 1);
    CHECK(form_delta(2) == 0);
    CHECK(form_delta(3) == 0);
    CHECK(form_delta(4) == -1);
    CHECK_THROWS_AS(form_delta(5), std::invalid_argument);
    CHECK(slot_count(1, 1, 16) == 15);
    CHECK(slot_count(4, 7, 16) == 1);
    CHECK(slot_count(2, 8, 16) == 0);
    CHECK(slot_count(3, 1, 16, 1) == 13); // punctuation-first shift
}

TEST_CASE("term_stirling matches the closed form at a reference cell") {
    const BoundParams p = defaults(BoundMode::paper_stirling);
    CHECK(term_stirling(1, 8, p) == doctest::Approx(2.31057e8).epsilon(1e-4));
    // Below the Stirling domain: s0 = 0.
    CHECK_THROWS_AS(term_stirling(2, 8, p), std::domain_error);
}

TEST_CASE("term_exact is an exact rational and covers s0 = 0 cells") {
    const BoundParams p = defaults(BoundMode::exact_sum);
    // Form 1, k=1: (X^2/mu) * (C(16,15) + 3*C(16,14)) = 10804.5 * 376.
    CHECK(term_exact(1, 1, p) == ExactRational(4062492));
    // Form 2, k=8: s0 = 0, only the i=0 term survives: X * mu^7 * C(128,0).
    CHECK(term_exact(2, 8, p) == ExactRational(18816));
    // Far out of range: everything vanishes.
    CHECK(term_exact(4, 9, p) == ExactRational(0));
}

TEST_CASE("paper mode reproduces the frozen reference values") {
    const BoundReport r = bound_total(defaults(BoundMode::paper_stirling));
    CHECK(to_decimal_string(r.F_minuscule) == "37227495497870936");
    CHECK(to_decimal_string(r.F_capital) == "587492955400357");
    CHECK(to_decimal_string(r.F_punct_first) == "38870162179702");
    CHECK(to_decimal_string(r.F_total) == "37853858615450995");
    REQUIRE(r.log2_total.has_value());
    CHECK(*r.log2_total == doctest::Approx(55.0713).epsilon(1e-4));
    CHECK(r.F_total <= (BigCount(1) << 56));

    // Minuscule: 8 + 7 + 7 + 7 closed-form cells plus the constant term.
    // Punct-first: forms 3 and 4 at one reserved slot, 7 + 6 cells.
    std::size_t minuscule_terms = 0;
    std::size_t punct_terms = 0;
    bool has_constant = false;
    for (const auto& t : r.terms) {
        if (t.component == "minuscule") ++minuscule_terms;
        if (t.component == "punct_first") ++punct_terms;
        has_constant = has_constant || t.constant_term;
    }
    CHECK(minuscule_terms == 30);
    CHECK(punct_terms == 13);
    CHECK(r.terms.size() == 43);
    CHECK(has_constant);
}

TEST_CASE("exact mode reproduces the frozen reference values") {
    const BoundReport r = bound_total(defaults(BoundMode::exact_sum));
    CHECK(to_decimal_string(r.F_minuscule) == "18520098027736672");
    CHECK(to_decimal_string(r.F_capital) == "294153542229334");
    CHECK(to_decimal_string(r.F_punct_first) == "21237589061988");
    CHECK(to_decimal_string(r.F_total) == "18835489159027994");
    CHECK(*r.log2_total == doctest::Approx(54.0643).epsilon(1e-4));
    // Minuscule: 8 + 8 + 8 + 7 exact cells (s0 = 0 is in range here).
    // Punct-first: 7 + 7. No constant term in exact mode.
    std::size_t minuscule_terms = 0;
    std::size_t punct_terms = 0;
    for (const auto& t : r.terms) {
        if (t.component == "minuscule") ++minuscule_terms;
        if (t.component == "punct_first") ++punct_terms;
        CHECK_FALSE(t.constant_term);
    }
    CHECK(minuscule_terms == 31);
    CHECK(punct_terms == 14);
    CHECK(r.terms.size() == 45);
}

TEST_CASE("affix mode reproduces the frozen reference values") {
    const BoundReport r = bound_total(defaults(BoundMode::affix_refined));
    CHECK(to_decimal_string(r.F_minuscule) == "1188300790125035");
    CHECK(to_decimal_string(r.F_capital) == "105878438765855");
    CHECK(to_decimal_string(r.F_punct_first) == "6944272451131");
    CHECK(to_decimal_string(r.F_total) == "1301123501342021");
    CHECK(*r.log2_total == doctest::Approx(50.2087).epsilon(1e-4));
}

TEST_CASE("affix mode defaults lambda to 26 with a note") {
    BoundParams p;
    p.mode = BoundMode::affix_refined; // no lambda set
    const BoundReport r = bound_total(p);
    CHECK(r.params.lambda == 26.0);
    bool noted = false;
    for (const auto& n : r.notes) noted = noted || n.find("lambda") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("paper mode at B=16 carries the capital-class discrepancy note") {
    const BoundReport paper = bound_total(defaults(BoundMode::paper_stirling));
    bool found = false;
    for (const auto& n : paper.notes) found = found || n.find("4.2e14") != std::string::npos;
    CHECK(found);

    const BoundReport exact = bound_total(defaults(BoundMode::exact_sum));
    for (const auto& n : exact.notes) CHECK(n.find("4.2e14") == std::string::npos);
}

TEST_CASE("exact cells never exceed their closed-form counterparts") {
    const BoundParams paper = defaults(BoundMode::paper_stirling);
    const BoundParams exact = defaults(BoundMode::exact_sum);
    for (int form = 1; form <= 4; ++form) {
        for (std::uint64_t k = 1; slot_count(form, k, 16) >= 1; ++k) {
            const ExactRational closed = rational_from_double(term_stirling(form, k, paper));
            CHECK(term_exact(form, k, exact) <= closed);
        }
    }
}

TEST_CASE("bound totals are monotone in mu, punct_count, and the edge constant") {
    for (BoundMode mode : {BoundMode::paper_stirling, BoundMode::exact_sum}) {
        const BoundReport base = bound_total(defaults(mode));

        BoundParams p = defaults(mode);
        p.mu = 2.5;
        CHECK(bound_total(p).F_total >= base.F_total);

        p = defaults(mode);
        p.punct_count = 4;
        CHECK(bound_total(p).F_total >= base.F_total);

        p = defaults(mode);
        p.X = 150.0;
        CHECK(bound_total(p).F_total >= base.F_total);
    }
}

TEST_CASE("closed-form overflow points at exact-sum mode") {
    BoundParams p;
    p.B = 2000;
    p.mode = BoundMode::paper_stirling;
    CHECK_THROWS_AS(bound_total(p), std::range_error);
    try {
        bound_total(p);
    } catch (const std::range_error& e) {
        CHECK(std::string(e.what()).find("exact-sum") != std::string::npos);
    }
    // The exact mode handles the same B.
    p.mode = BoundMode::exact_sum;
    p.B = 64;
    CHECK_NOTHROW(bound_total(p));
}

TEST_CASE("punct-first component vanishes when B < 3 or punct_count = 0") {
    BoundParams p;
    p.B = 2;
    p.mode = BoundMode::exact_sum;
    CHECK(bound_punct_first(p).count() == 0);
    p = BoundParams{};
    p.punct_count = 0;
    p.mode = BoundMode::exact_sum;
    CHECK(bound_punct_first(p).count() == 0);
}

TEST_CASE("bound report JSON carries decimal strings and typed terms") {
    const nlohmann::json paper = to_json(bound_total(defaults(BoundMode::paper_stirling)));
    CHECK(paper["F_total"] == "37853858615450995");
    CHECK(paper["log2_total"].is_number());
    CHECK(paper["params"]["mode"] == "paper-stirling");
    bool saw_stirling = false;
    for (const auto& t : paper["terms"]) {
        if (t["mode"] == "stirling") {
            saw_stirling = true;
            CHECK(t["value"].is_number());
        }
    }
    CHECK(saw_stirling);

    const nlohmann::json exact = to_json(bound_total(defaults(BoundMode::exact_sum)));
    bool saw_exact = false;
    for (const auto& t : exact["terms"]) {
        if (t["mode"] == "exact") {
            saw_exact = true;
            CHECK(t["value"].is_string()); // "p/q"
            CHECK(t.contains("i_breakdown"));
        }
    }
    CHECK(saw_exact);
}
