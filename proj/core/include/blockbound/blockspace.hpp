#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "blockbound/bound.hpp"
#include "blockbound/numeric.hpp"
#include "blockbound/vocab.hpp"

namespace blockbound {

// The generative block definition shared by the DP counter, the brute-force
// oracle, and the recognizer.
//
// Forms (single spaces, nonempty segments, segment lengths c_i >= 1):
//   F1  seg_1 ' ' seg_2 ... seg_k            (no edge spaces)
//   F2  seg_1 ' ' ... seg_k ' '              (trailing space)
//   F3  ' ' seg_1 ... seg_k                  (leading space)
//   F4  ' ' seg_1 ... seg_k ' '              (both)
// Edge segments may be cut: a first segment without a leading space is a
// distinct word suffix, a last segment without a trailing space is a distinct
// word prefix, a lone F1 segment is a distinct word substring; all other
// segments are complete words. One optional punctuation character may follow
// a segment that is itself followed by a space.
//
// Classes: M = first letter minuscule; C = first letter capital (for F1/F2
// this forces a complete first word; for F3/F4 it capitalizes the first
// segment); P = punctuation first byte followed by an M-class F3/F4 string
// over the remaining B-1 bytes.
struct BlockGrammar {
    std::uint64_t B = 16;
    std::string punct_set = ",.;";

    void validate() const;
};

enum class BlockClass { minuscule, capital, punct_first };

char class_letter(BlockClass c); // 'M' | 'C' | 'P'

struct ClassCounts {
    BigCount m_count{0};
    BigCount c_count{0};
    BigCount p_count{0};
    BigCount total{0};
    // (class letter, form, k) -> distinct-string count
    std::map<std::tuple<char, int, std::uint64_t>, BigCount> breakdown;
};

// Exact distinct-block count from segment-set cardinalities alone.
ClassCounts dp_count(const VocabStats& stats, const BlockGrammar& g);

struct EnumerationResult {
    ClassCounts counts;     // distinct strings per class/cell
    BigCount path_count{0}; // generation tuples; == counts.total iff injective
    bool injective = false;
};

// Materializes every grammar-derivable string. The generation-path count
// certifies that the (class, form, composition, punctuation) decomposition
// is injective. Dump lines, when requested, are "<class>,<form>,<k>,<block>".
EnumerationResult brute_force_enumerate(const Vocabulary& voc, const BlockGrammar& g,
                                        std::uint64_t cap = 10'000'000,
                                        std::vector<std::string>* dump = nullptr);

enum class RejectReason {
    none,
    bad_character,   // byte outside letters/space/punct, or a misplaced capital
    double_space,    // empty segment (adjacent spaces, lone edge space)
    unknown_word,    // complete-word slot not in the vocabulary
    bad_affix,       // edge segment not a known prefix/suffix/substring
    bad_punctuation, // punct char somewhere the grammar does not allow
};

std::string to_string(RejectReason r);

struct Recognition {
    bool accepted = false;
    RejectReason reason = RejectReason::none;
    BlockClass block_class = BlockClass::minuscule;
    int form = 0;
    std::uint64_t k = 0;
    std::vector<std::uint64_t> composition; // letter length per segment
};

// Decides membership and recovers the (unique) decomposition.
// Precondition: block.size() == g.B.
Recognition recognize(const std::string& block, const SegmentSets& sets, const BlockGrammar& g);
Recognition recognize(const std::string& block, const Vocabulary& voc, const BlockGrammar& g);

struct DominationCellFailure {
    char block_class;
    int form;
    std::uint64_t k;
    BigCount dp;
    BigCount bound;
};

struct DominationReport {
    bool comparable = false;
    std::string refusal;        // set when !comparable
    bool holds = false;
    BoundParams params;         // exact-sum params used for the bound side
    ClassCounts dp;
    BigCount bound_minuscule;
    BigCount bound_capital;
    BigCount bound_punct_first;
    BigCount bound_total;
    std::vector<DominationCellFailure> failures;
    std::vector<std::string> notes;
};

// Compares exact DP counts against the exact-sum bound with measured
// parameters (or caller-supplied ones, checked against the measured length
// profile first).
DominationReport check_domination(const Vocabulary& voc, const BlockGrammar& g,
                                  std::optional<BoundParams> params = std::nullopt);

nlohmann::json to_json(const ClassCounts& counts);
nlohmann::json to_json(const DominationReport& report);

} // namespace blockbound
