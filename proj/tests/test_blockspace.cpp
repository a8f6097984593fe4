#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "blockbound/blockspace.hpp"
#include "blockbound/errors.hpp"

using namespace blockbound;

namespace {

std::set<std::string> blocks_of_class(const std::vector<std::string>& dump, char cls) {
    std::set<std::string> out;
    for (const auto& line : dump) {
        if (line[0] != cls) continue;
        out.insert(line.substr(line.find(',', line.find(',', 2) + 1) + 1));
    }
    return out;
}

} // namespace

TEST_CASE("BlockGrammar validation") {
    BlockGrammar g;
    CHECK_NOTHROW(g.validate());
    g.B = 0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = BlockGrammar{};
    g.punct_set = ",,";
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.punct_set = ",a";
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.punct_set = ", ";
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.punct_set = ",\t";
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.punct_set = "";
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("class letters and reject reasons") {
    CHECK(class_letter(BlockClass::minuscule) == 'M');
    CHECK(class_letter(BlockClass::capital) == 'C');
    CHECK(class_letter(BlockClass::punct_first) == 'P');
    CHECK(to_string(RejectReason::double_space) == "double_space");
    CHECK(to_string(RejectReason::bad_affix) == "bad_affix");
}

TEST_CASE("single letter vocabulary at B = 1") {
    Vocabulary v({"a"});
    BlockGrammar g;
    g.B = 1;
    const ClassCounts dp = dp_count(compute_stats(v, 1), g);
    CHECK(dp.m_count == 1); // "a"
    CHECK(dp.c_count == 1); // "A"
    CHECK(dp.p_count == 0);
    CHECK(dp.total == 2);

    std::vector<std::string> dump;
    const EnumerationResult e = brute_force_enumerate(v, g, 100, &dump);
    CHECK(e.counts.total == dp.total);
    CHECK(e.injective);
    CHECK(blocks_of_class(dump, 'M') == std::set<std::string>{"a"});
    CHECK(blocks_of_class(dump, 'C') == std::set<std::string>{"A"});
}

TEST_CASE("two letter word at B = 2 yields the five known blocks") {
    Vocabulary v({"ab"});
    BlockGrammar g;
    g.B = 2;
    const ClassCounts dp = dp_count(compute_stats(v, 2), g);
    CHECK(dp.m_count == 3);
    CHECK(dp.c_count == 2);
    CHECK(dp.p_count == 0);

    std::vector<std::string> dump;
    const EnumerationResult e = brute_force_enumerate(v, g, 100, &dump);
    CHECK(e.counts.m_count == 3);
    CHECK(e.counts.c_count == 2);
    CHECK(e.injective);
    CHECK(blocks_of_class(dump, 'M') == std::set<std::string>{"ab", "b ", " a"});
    CHECK(blocks_of_class(dump, 'C') == std::set<std::string>{"Ab", " A"});
}

TEST_CASE("three word vocabulary at B = 4 (frozen regression)") {
    Vocabulary v({"a", "at", "the"});
    BlockGrammar g;
    g.B = 4;
    const ClassCounts dp = dp_count(compute_stats(v, 4), g);
    CHECK(dp.m_count == 45);
    CHECK(dp.c_count == 22);
    CHECK(dp.p_count == 9);
    CHECK(dp.total == 76);

    const EnumerationResult e = brute_force_enumerate(v, g);
    CHECK(e.counts.m_count == dp.m_count);
    CHECK(e.counts.c_count == dp.c_count);
    CHECK(e.counts.p_count == dp.p_count);
    CHECK(e.counts.breakdown == dp.breakdown);
    CHECK(e.injective);
    CHECK(e.path_count == 76);
}

TEST_CASE("punctuation-first blocks carry the inner form") {
    Vocabulary v({"at"});
    BlockGrammar g;
    g.B = 5;
    const Recognition r = recognize(", at ", v, g);
    REQUIRE(r.accepted);
    CHECK(r.block_class == BlockClass::punct_first);
    CHECK(r.form == 4);
    CHECK(r.k == 1);
    CHECK(r.composition == std::vector<std::uint64_t>{2});

    const ClassCounts dp = dp_count(compute_stats(v, 5), g);
    const EnumerationResult e = brute_force_enumerate(v, g);
    CHECK(e.counts.breakdown == dp.breakdown);
    CHECK(e.injective);
    CHECK(dp.p_count > 0);
}

TEST_CASE("empty vocabulary derives nothing") {
    Vocabulary v(std::set<std::string>{});
    BlockGrammar g;
    g.B = 4;
    const ClassCounts dp = dp_count(compute_stats(v, 4), g);
    CHECK(dp.total == 0);
    const EnumerationResult e = brute_force_enumerate(v, g);
    CHECK(e.counts.total == 0);
    CHECK(e.path_count == 0);
    CHECK(e.injective); // vacuously

    const DominationReport rep = check_domination(v, g);
    CHECK(rep.comparable);
    CHECK(rep.holds);
    REQUIRE(!rep.notes.empty());
    CHECK(rep.notes[0].find("vacuous") != std::string::npos);
}

TEST_CASE("dp_count rejects a stats window narrower than the grammar") {
    Vocabulary v({"at"});
    BlockGrammar g;
    g.B = 4;
    CHECK_THROWS_AS(dp_count(compute_stats(v, 3), g), std::invalid_argument);
}

TEST_CASE("brute_force_enumerate honors its cap") {
    Vocabulary v({"a", "b", "c", "d", "e"});
    BlockGrammar g;
    g.B = 5;
    CHECK_THROWS_AS(brute_force_enumerate(v, g, 3), resource_error);
    try {
        brute_force_enumerate(v, g, 3);
    } catch (const resource_error& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("dump output is deterministic across runs") {
    Vocabulary v({"a", "at", "the"});
    BlockGrammar g;
    g.B = 4;
    std::vector<std::string> d1, d2;
    brute_force_enumerate(v, g, 1000, &d1);
    brute_force_enumerate(v, g, 1000, &d2);
    CHECK(d1 == d2);
    REQUIRE(!d1.empty());
    for (const auto& line : d1) {
        CHECK(line.size() >= 6); // "M,1,1," + block
        CHECK(line.substr(line.find(',', line.find(',', 2) + 1) + 1).size() == g.B);
    }
}

TEST_CASE("recognize accepts every enumerated block with the dumped decomposition") {
    Vocabulary v({"a", "at", "the"});
    BlockGrammar g;
    g.B = 4;
    const SegmentSets sets = build_segment_sets(v, g.B);
    std::vector<std::string> dump;
    brute_force_enumerate(v, g, 1000, &dump);
    REQUIRE(!dump.empty());
    for (const auto& line : dump) {
        const char cls = line[0];
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        const std::size_t c3 = line.find(',', c2 + 1);
        const int form = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
        const std::uint64_t k = std::stoull(line.substr(c2 + 1, c3 - c2 - 1));
        const std::string block = line.substr(c3 + 1);
        const Recognition r = recognize(block, sets, g);
        REQUIRE_MESSAGE(r.accepted, "block '" << block << "' rejected: " << to_string(r.reason));
        CHECK(class_letter(r.block_class) == cls);
        CHECK(r.form == form);
        CHECK(r.k == k);
    }
}

TEST_CASE("recognize rejection reasons") {
    Vocabulary v({"ab"});
    BlockGrammar g;
    g.B = 2;
    CHECK(recognize("a1", v, g).reason == RejectReason::bad_character);
    CHECK(recognize("aB", v, g).reason == RejectReason::bad_character);
    CHECK(recognize("  ", v, g).reason == RejectReason::double_space);
    CHECK(recognize("xy", v, g).reason == RejectReason::bad_affix);
    CHECK(recognize(",a", v, g).reason == RejectReason::bad_punctuation);
    CHECK(recognize("a,", v, g).reason == RejectReason::bad_punctuation);
    CHECK_THROWS_AS(recognize("abc", v, g), std::invalid_argument);

    BlockGrammar g5;
    g5.B = 5;
    Vocabulary v5({"at"});
    CHECK(recognize(" x at", v5, g5).reason == RejectReason::unknown_word);
    CHECK(recognize("at,at", v5, g5).reason == RejectReason::bad_punctuation);
    CHECK(recognize(" a t ", v5, g5).reason == RejectReason::unknown_word);
    CHECK(recognize(",,at ", v5, g5).reason == RejectReason::bad_punctuation);
    CHECK(recognize(", At ", v5, g5).reason == RejectReason::bad_character);
    CHECK(recognize("a  at", v5, g5).reason == RejectReason::double_space);
}

TEST_CASE("recognized capitals fold back to minuscule membership") {
    Vocabulary v({"at", "the"});
    BlockGrammar g;
    g.B = 4;
    const Recognition r = recognize("At, ", v, g);
    REQUIRE(r.accepted);
    CHECK(r.block_class == BlockClass::capital);
    CHECK(r.form == 2);
    CHECK(r.k == 1);
}

TEST_CASE("domination holds with measured parameters on fixtures") {
    for (std::uint64_t B : {2u, 3u, 4u, 5u, 6u}) {
        Vocabulary v({"a", "at", "the"});
        BlockGrammar g;
        g.B = B;
        const DominationReport rep = check_domination(v, g);
        CHECK(rep.comparable);
        CHECK(rep.holds);
        CHECK(rep.failures.empty());
        CHECK(rep.params.mode == BoundMode::exact_sum);
        CHECK(rep.params.x_source == "measured");
    }
}

TEST_CASE("domination refuses B = 1 with nonempty language") {
    Vocabulary v({"a"});
    BlockGrammar g;
    g.B = 1;
    const DominationReport rep = check_domination(v, g);
    CHECK_FALSE(rep.comparable);
    CHECK(rep.refusal.find("B < 2") != std::string::npos);
}

TEST_CASE("domination refuses parameters violating the length condition") {
    Vocabulary v({"a", "b", "c", "d"});
    BlockGrammar g;
    g.B = 2;
    BoundParams p;
    p.B = 2;
    p.mu = 2.0; // measured W[1] = 4 > 2 * C(2,0)
    p.X = 5.0;
    p.N = 4;
    p.mode = BoundMode::exact_sum;
    const DominationReport rep = check_domination(v, g, p);
    CHECK_FALSE(rep.comparable);
    CHECK(rep.refusal.find("i = 1") != std::string::npos);
}

TEST_CASE("domination refuses a params/grammar block length mismatch") {
    Vocabulary v({"ab"});
    BlockGrammar g;
    g.B = 2;
    BoundParams p;
    p.B = 4;
    const DominationReport rep = check_domination(v, g, p);
    CHECK_FALSE(rep.comparable);
    CHECK(rep.refusal.find("does not match") != std::string::npos);
}

TEST_CASE("domination forces exact-sum mode for supplied parameters") {
    Vocabulary v({"ab"});
    BlockGrammar g;
    g.B = 2;
    BoundParams p;
    p.B = 2;
    p.mu = 2.0;
    p.X = 5.0;
    p.N = 1;
    p.mode = BoundMode::paper_stirling;
    const DominationReport rep = check_domination(v, g, p);
    CHECK(rep.comparable);
    CHECK(rep.params.mode == BoundMode::exact_sum);
    bool noted = false;
    for (const auto& n : rep.notes) noted = noted || n.find("exact-sum") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("class counts JSON uses decimal strings and a sorted breakdown") {
    Vocabulary v({"a", "at", "the"});
    BlockGrammar g;
    g.B = 4;
    const nlohmann::json j = to_json(dp_count(compute_stats(v, 4), g));
    CHECK(j["total"] == "76");
    CHECK(j["m_count"] == "45");
    REQUIRE(j["breakdown"].is_array());
    CHECK(!j["breakdown"].empty());
    CHECK(j["breakdown"][0].contains("class"));

    const nlohmann::json d = to_json(check_domination(v, g));
    CHECK(d["comparable"] == true);
    CHECK(d["holds"] == true);
    CHECK(d["bound"]["total"].is_string());
}
