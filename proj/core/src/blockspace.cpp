#include "blockbound/blockspace.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "blockbound/combinatorics.hpp"
#include "blockbound/errors.hpp"

namespace blockbound {

namespace {

bool is_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

enum class Role { word, prefix, suffix, substr };

// Which segment set constrains position `pos` (1-based) of a k-segment form.
// capital_complete_first forces the class-C rule for forms 1/2: the first
// word must be complete.
Role segment_role(int form, std::uint64_t k, std::uint64_t pos, bool capital_complete_first) {
    if (pos == 1) {
        if (capital_complete_first) return Role::word;
        if (k == 1) {
            switch (form) {
                case 1: return Role::substr; // both ends cut
                case 2: return Role::suffix; // start cut, end complete
                case 3: return Role::prefix; // start complete, end cut
                case 4: return Role::word;
            }
            throw std::invalid_argument("bad form");
        }
        return form <= 2 ? Role::suffix : Role::word;
    }
    if (pos == k) return (form == 1 || form == 3) ? Role::prefix : Role::word;
    return Role::word;
}

std::uint64_t role_count(const VocabStats& st, Role role, std::uint64_t c) {
    if (c == 0 || c >= st.W.size()) return 0;
    switch (role) {
        case Role::word: return st.W[c];
        case Role::prefix: return st.P[c];
        case Role::suffix: return st.S[c];
        case Role::substr: return st.X_sub[c];
    }
    return 0;
}

std::uint64_t punct_slots(int form, std::uint64_t k) {
    // A punct char may follow any space-followed segment: all but the last
    // for F1/F3, every segment for F2/F4 (trailing space).
    return (form == 2 || form == 4) ? k : k - 1;
}

// Distinct strings of one (form, k) cell at effective block length B_eff:
//   sum_j C(slots, j) p^j sum_{c_1+..+c_k = B_eff+delta-k-j, c_i>=1} prod factors
BigCount cell_count(const VocabStats& st, int form, std::uint64_t k, std::uint64_t B_eff,
                    std::uint64_t p, bool capital_complete_first) {
    const std::uint64_t slots = punct_slots(form, k);
    BigCount total = 0;
    for (std::uint64_t j = 0; j <= slots; ++j) {
        const std::int64_t s_signed = static_cast<std::int64_t>(B_eff) + form_delta(form) -
                                      2 * static_cast<std::int64_t>(k) -
                                      static_cast<std::int64_t>(j);
        if (s_signed < 0) continue;
        const std::uint64_t s = static_cast<std::uint64_t>(s_signed);
        std::vector<BigCount> dp(s + 1);
        dp[0] = 1;
        for (std::uint64_t pos = 1; pos <= k; ++pos) {
            const Role role = segment_role(form, k, pos, capital_complete_first);
            std::vector<BigCount> next(s + 1);
            for (std::uint64_t t = 0; t <= s; ++t) {
                if (dp[t] == 0) continue;
                for (std::uint64_t d = 0; t + d <= s; ++d) {
                    const std::uint64_t cnt = role_count(st, role, d + 1);
                    if (cnt != 0) next[t + d] += dp[t] * cnt;
                }
            }
            dp.swap(next);
        }
        if (dp[s] == 0) continue;
        BigCount ppow;
        mpz_ui_pow_ui(ppow.get_mpz_t(), p, j);
        total += binomial(slots, static_cast<std::int64_t>(j)) * ppow * dp[s];
    }
    return total;
}

std::uint64_t max_k(int form, std::uint64_t B_eff) {
    const std::int64_t top = static_cast<std::int64_t>(B_eff) + form_delta(form);
    return top >= 2 ? static_cast<std::uint64_t>(top / 2) : 0;
}

} // namespace

void BlockGrammar::validate() const {
    if (B < 1) throw std::invalid_argument("BlockGrammar: B must be >= 1");
    std::array<bool, 256> seen{};
    for (unsigned char c : punct_set) {
        if (is_lower(c) || is_upper(c) || c == ' ') {
            throw std::invalid_argument("BlockGrammar: punctuation set overlaps letters/space");
        }
        if (c < 33 || c > 126) {
            throw std::invalid_argument("BlockGrammar: punctuation must be printable ASCII");
        }
        if (seen[c]) throw std::invalid_argument("BlockGrammar: duplicate punctuation character");
        seen[c] = true;
    }
}

char class_letter(BlockClass c) {
    switch (c) {
        case BlockClass::minuscule: return 'M';
        case BlockClass::capital: return 'C';
        case BlockClass::punct_first: return 'P';
    }
    throw std::invalid_argument("bad BlockClass");
}

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::none: return "none";
        case RejectReason::bad_character: return "bad_character";
        case RejectReason::double_space: return "double_space";
        case RejectReason::unknown_word: return "unknown_word";
        case RejectReason::bad_affix: return "bad_affix";
        case RejectReason::bad_punctuation: return "bad_punctuation";
    }
    return "unknown";
}

ClassCounts dp_count(const VocabStats& stats, const BlockGrammar& g) {
    g.validate();
    if (stats.B < g.B) {
        throw std::invalid_argument("dp_count: stats window " + std::to_string(stats.B) +
                                    " is smaller than grammar block length " +
                                    std::to_string(g.B));
    }
    const std::uint64_t p = g.punct_set.size();
    ClassCounts out;
    auto add_cells = [&](char cls, int form, std::uint64_t B_eff, bool cap_first,
                         BigCount& class_total, const BigCount& multiplier) {
        for (std::uint64_t k = 1; k <= max_k(form, B_eff); ++k) {
            BigCount c = cell_count(stats, form, k, B_eff, p, cap_first) * multiplier;
            if (c == 0) continue;
            out.breakdown[{cls, form, k}] += c;
            class_total += c;
        }
    };
    for (int f = 1; f <= 4; ++f) add_cells('M', f, g.B, false, out.m_count, 1);
    for (int f = 1; f <= 2; ++f) add_cells('C', f, g.B, true, out.c_count, 1);
    for (int f = 3; f <= 4; ++f) add_cells('C', f, g.B, false, out.c_count, 1);
    if (g.B >= 2 && p > 0) {
        const BigCount p_mult(static_cast<unsigned long>(p));
        for (int f = 3; f <= 4; ++f) add_cells('P', f, g.B - 1, false, out.p_count, p_mult);
    }
    out.total = out.m_count + out.c_count + out.p_count;
    return out;
}

namespace {

// Deterministic (sorted) snapshots of the segment sets, for enumeration.
struct SortedSegments {
    std::vector<std::vector<std::string>> by_role[4]; // [role][c]

    SortedSegments(const SegmentSets& sets) {
        auto snapshot = [](const std::vector<std::unordered_set<std::string>>& src) {
            std::vector<std::vector<std::string>> out(src.size());
            for (std::size_t c = 0; c < src.size(); ++c) {
                out[c].assign(src[c].begin(), src[c].end());
                std::sort(out[c].begin(), out[c].end());
            }
            return out;
        };
        by_role[static_cast<int>(Role::word)] = snapshot(sets.words);
        by_role[static_cast<int>(Role::prefix)] = snapshot(sets.prefixes);
        by_role[static_cast<int>(Role::suffix)] = snapshot(sets.suffixes);
        by_role[static_cast<int>(Role::substr)] = snapshot(sets.substrings);
    }

    const std::vector<std::string>& strings(Role role, std::uint64_t c) const {
        static const std::vector<std::string> empty;
        const auto& v = by_role[static_cast<int>(role)];
        if (c == 0 || c >= v.size()) return empty;
        return v[c];
    }
};

struct Enumerator {
    const BlockGrammar& g;
    const SortedSegments& segs;
    std::uint64_t cap;
    std::vector<std::string>* dump;

    std::uint64_t paths = 0;
    std::unordered_set<std::string> class_strings[3] = {};
    std::map<std::tuple<char, int, std::uint64_t>, std::unordered_set<std::string>> cell_strings =
        {};

    void emit(BlockClass cls, int form, std::uint64_t k, const std::string& block) {
        if (block.size() != g.B) throw std::logic_error("enumerator produced a mis-sized block");
        if (++paths > cap) {
            throw resource_error("brute_force_enumerate: generation exceeded the cap of " +
                                 std::to_string(cap) + " paths");
        }
        class_strings[static_cast<int>(cls)].insert(block);
        cell_strings[{class_letter(cls), form, k}].insert(block);
        if (dump != nullptr) {
            std::string line;
            line += class_letter(cls);
            line += ',';
            line += std::to_string(form);
            line += ',';
            line += std::to_string(k);
            line += ',';
            line += block;
            dump->push_back(std::move(line));
        }
    }

    // Enumerate one (class, form, k) cell at effective length B_eff.
    // prefix = leading punctuation char for class P (0 otherwise).
    void cell(BlockClass cls, int form, std::uint64_t k, std::uint64_t B_eff,
              bool cap_first, char prefix) {
        const std::uint64_t n_slots = punct_slots(form, k);
        // Slot index s (0-based) sits after segment slot_pos[s] (1-based).
        std::vector<std::uint64_t> slot_pos;
        for (std::uint64_t pos = 1; pos <= k; ++pos) {
            const bool followed = pos < k || form == 2 || form == 4;
            if (followed) slot_pos.push_back(pos);
        }
        if (slot_pos.size() != n_slots) throw std::logic_error("slot accounting mismatch");

        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_slots); ++mask) {
            const std::uint64_t j = static_cast<std::uint64_t>(std::popcount(mask));
            if (j > 0 && g.punct_set.empty()) continue;
            const std::int64_t s_signed = static_cast<std::int64_t>(B_eff) + form_delta(form) -
                                          2 * static_cast<std::int64_t>(k) -
                                          static_cast<std::int64_t>(j);
            if (s_signed < 0) continue;
            for (CompositionEnumerator comp(k, static_cast<std::uint64_t>(s_signed));
                 comp.valid(); comp.next()) {
                std::vector<const std::vector<std::string>*> candidates(k);
                bool feasible = true;
                for (std::uint64_t pos = 1; pos <= k && feasible; ++pos) {
                    const Role role = segment_role(form, k, pos, cap_first);
                    candidates[pos - 1] = &segs.strings(role, comp.current()[pos - 1] + 1);
                    feasible = !candidates[pos - 1]->empty();
                }
                if (!feasible) continue;
                std::vector<const std::string*> chosen(k);
                choose_segment(cls, form, k, mask, slot_pos, candidates, chosen, 0, prefix);
            }
        }
    }

    void choose_segment(BlockClass cls, int form, std::uint64_t k, std::uint64_t mask,
                        const std::vector<std::uint64_t>& slot_pos,
                        const std::vector<const std::vector<std::string>*>& candidates,
                        std::vector<const std::string*>& chosen, std::uint64_t idx,
                        char prefix) {
        if (idx == k) {
            std::vector<char> punct_at(k + 1, 0);
            assign_puncts(cls, form, k, mask, slot_pos, chosen, punct_at, 0, prefix);
            return;
        }
        for (const std::string& s : *candidates[idx]) {
            chosen[idx] = &s;
            choose_segment(cls, form, k, mask, slot_pos, candidates, chosen, idx + 1, prefix);
        }
    }

    void assign_puncts(BlockClass cls, int form, std::uint64_t k, std::uint64_t mask,
                       const std::vector<std::uint64_t>& slot_pos,
                       const std::vector<const std::string*>& chosen,
                       std::vector<char>& punct_at, std::uint64_t slot_idx, char prefix) {
        if (slot_idx == slot_pos.size()) {
            build_and_emit(cls, form, k, chosen, punct_at, prefix);
            return;
        }
        if ((mask & (std::uint64_t{1} << slot_idx)) == 0) {
            assign_puncts(cls, form, k, mask, slot_pos, chosen, punct_at, slot_idx + 1, prefix);
            return;
        }
        for (char pc : g.punct_set) {
            punct_at[slot_pos[slot_idx]] = pc;
            assign_puncts(cls, form, k, mask, slot_pos, chosen, punct_at, slot_idx + 1, prefix);
        }
        punct_at[slot_pos[slot_idx]] = 0;
    }

    void build_and_emit(BlockClass cls, int form, std::uint64_t k,
                        const std::vector<const std::string*>& chosen,
                        const std::vector<char>& punct_at, char prefix) {
        std::string block;
        block.reserve(g.B);
        if (prefix != 0) block += prefix;
        if (form >= 3) block += ' ';
        for (std::uint64_t pos = 1; pos <= k; ++pos) {
            std::string seg = *chosen[pos - 1];
            if (cls == BlockClass::capital && pos == 1) {
                seg[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(seg[0])));
            }
            block += seg;
            if (punct_at[pos] != 0) block += punct_at[pos];
            if (pos < k) block += ' ';
        }
        if (form == 2 || form == 4) block += ' ';
        emit(cls, form, k, block);
    }
};

} // namespace

EnumerationResult brute_force_enumerate(const Vocabulary& voc, const BlockGrammar& g,
                                        std::uint64_t cap, std::vector<std::string>* dump) {
    g.validate();
    const SegmentSets sets = build_segment_sets(voc, g.B);
    const VocabStats stats = stats_from_sets(sets, voc.size(), g.B);

    // The DP total is exactly the number of generation paths, so it doubles
    // as the pre-flight estimate for the resource guard.
    const ClassCounts estimate = dp_count(stats, g);
    if (estimate.total > BigCount(static_cast<unsigned long>(cap))) {
        throw resource_error("brute_force_enumerate: estimated " +
                             to_decimal_string(estimate.total) +
                             " generation paths exceed the cap of " + std::to_string(cap));
    }

    const SortedSegments segs(sets);
    Enumerator e{g, segs, cap, dump};
    for (int f = 1; f <= 4; ++f) {
        for (std::uint64_t k = 1; k <= max_k(f, g.B); ++k) {
            e.cell(BlockClass::minuscule, f, k, g.B, false, 0);
        }
    }
    for (int f = 1; f <= 2; ++f) {
        for (std::uint64_t k = 1; k <= max_k(f, g.B); ++k) {
            e.cell(BlockClass::capital, f, k, g.B, true, 0);
        }
    }
    for (int f = 3; f <= 4; ++f) {
        for (std::uint64_t k = 1; k <= max_k(f, g.B); ++k) {
            e.cell(BlockClass::capital, f, k, g.B, false, 0);
        }
    }
    if (g.B >= 2) {
        for (char pc : g.punct_set) {
            for (int f = 3; f <= 4; ++f) {
                for (std::uint64_t k = 1; k <= max_k(f, g.B - 1); ++k) {
                    e.cell(BlockClass::punct_first, f, k, g.B - 1, false, pc);
                }
            }
        }
    }

    EnumerationResult result;
    result.counts.m_count = BigCount(static_cast<unsigned long>(e.class_strings[0].size()));
    result.counts.c_count = BigCount(static_cast<unsigned long>(e.class_strings[1].size()));
    result.counts.p_count = BigCount(static_cast<unsigned long>(e.class_strings[2].size()));
    result.counts.total = result.counts.m_count + result.counts.c_count + result.counts.p_count;
    for (const auto& [key, strings] : e.cell_strings) {
        result.counts.breakdown[key] = BigCount(static_cast<unsigned long>(strings.size()));
    }
    result.path_count = BigCount(static_cast<unsigned long>(e.paths));
    result.injective = (result.path_count == result.counts.total);
    return result;
}

namespace {

struct ParseOutcome {
    bool accepted = false;
    RejectReason reason = RejectReason::none;
    bool capital = false;
    int form = 0;
    std::uint64_t k = 0;
    std::vector<std::uint64_t> composition;
};

ParseOutcome reject_with(RejectReason r) {
    ParseOutcome o;
    o.reason = r;
    return o;
}

bool in_punct_set(char c, const BlockGrammar& g) {
    return g.punct_set.find(c) != std::string::npos;
}

// Parses a (sub)string as one of the four word-forms; characters are already
// known to be letters/space/punct. allow_capital admits one capital at the
// first letter of the first segment.
ParseOutcome parse_wordform(const std::string& s, const SegmentSets& sets,
                            const BlockGrammar& g, bool allow_capital) {
    if (s.empty()) return reject_with(RejectReason::double_space);
    const bool lead = s.front() == ' ';
    const bool trail = s.size() > 1 ? s.back() == ' ' : (!lead && s.back() == ' ');
    const std::size_t begin = lead ? 1 : 0;
    const std::size_t end = s.size() - (trail ? 1 : 0);
    if (begin >= end) return reject_with(RejectReason::double_space); // nothing between edge spaces
    const int form = lead ? (trail ? 4 : 3) : (trail ? 2 : 1);

    std::vector<std::string> chunks;
    std::string current;
    for (std::size_t i = begin; i < end; ++i) {
        if (s[i] == ' ') {
            if (current.empty()) return reject_with(RejectReason::double_space);
            chunks.push_back(std::move(current));
            current.clear();
        } else {
            current += s[i];
        }
    }
    if (current.empty()) return reject_with(RejectReason::double_space);
    chunks.push_back(std::move(current));

    const std::uint64_t k = chunks.size();
    ParseOutcome out;
    out.form = form;
    out.k = k;
    std::vector<std::string> segments(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        std::string chunk = chunks[i];
        const bool followed_by_space = (i + 1 < k) || form == 2 || form == 4;
        if (in_punct_set(chunk.back(), g)) {
            if (!followed_by_space) return reject_with(RejectReason::bad_punctuation);
            chunk.pop_back();
            if (chunk.empty()) return reject_with(RejectReason::bad_punctuation);
        }
        for (std::size_t pos = 0; pos < chunk.size(); ++pos) {
            const char c = chunk[pos];
            if (in_punct_set(c, g)) return reject_with(RejectReason::bad_punctuation);
            if (is_upper(static_cast<unsigned char>(c))) {
                if (i == 0 && pos == 0 && allow_capital) {
                    out.capital = true;
                    chunk[pos] = static_cast<char>(
                        std::tolower(static_cast<unsigned char>(c)));
                } else {
                    return reject_with(RejectReason::bad_character);
                }
            }
        }
        segments[i] = std::move(chunk);
        out.composition.push_back(segments[i].size());
    }

    for (std::uint64_t i = 0; i < k; ++i) {
        const bool cap_complete = out.capital && form <= 2;
        const Role role = segment_role(form, k, i + 1, cap_complete);
        const std::uint64_t c = segments[i].size();
        const auto& v = [&]() -> const std::unordered_set<std::string>& {
            static const std::unordered_set<std::string> empty;
            const auto& src = role == Role::word      ? sets.words
                              : role == Role::prefix  ? sets.prefixes
                              : role == Role::suffix  ? sets.suffixes
                                                      : sets.substrings;
            if (c == 0 || c >= src.size()) return empty;
            return src[c];
        }();
        if (v.count(segments[i]) == 0) {
            return reject_with(role == Role::word ? RejectReason::unknown_word
                                                  : RejectReason::bad_affix);
        }
    }
    out.accepted = true;
    return out;
}

} // namespace

Recognition recognize(const std::string& block, const SegmentSets& sets, const BlockGrammar& g) {
    g.validate();
    if (block.size() != g.B) {
        throw std::invalid_argument("recognize: block length " + std::to_string(block.size()) +
                                    " != B = " + std::to_string(g.B));
    }
    if (sets.L < g.B) throw std::invalid_argument("recognize: segment window smaller than B");

    Recognition r;
    for (char c : block) {
        if (!is_lower(static_cast<unsigned char>(c)) && !is_upper(static_cast<unsigned char>(c)) &&
            c != ' ' && !in_punct_set(c, g)) {
            r.reason = RejectReason::bad_character;
            return r;
        }
    }

    if (in_punct_set(block.front(), g)) {
        // Punctuation-first: remainder must be a lowercase leading-space form.
        const ParseOutcome inner = parse_wordform(block.substr(1), sets, g, false);
        if (!inner.accepted) {
            r.reason = inner.reason;
            return r;
        }
        if (inner.form != 3 && inner.form != 4) {
            r.reason = RejectReason::bad_punctuation; // punct not followed by a space
            return r;
        }
        r.accepted = true;
        r.block_class = BlockClass::punct_first;
        r.form = inner.form;
        r.k = inner.k;
        r.composition = inner.composition;
        return r;
    }

    const ParseOutcome outcome = parse_wordform(block, sets, g, true);
    if (!outcome.accepted) {
        r.reason = outcome.reason;
        return r;
    }
    r.accepted = true;
    r.block_class = outcome.capital ? BlockClass::capital : BlockClass::minuscule;
    r.form = outcome.form;
    r.k = outcome.k;
    r.composition = outcome.composition;
    return r;
}

Recognition recognize(const std::string& block, const Vocabulary& voc, const BlockGrammar& g) {
    return recognize(block, build_segment_sets(voc, g.B), g);
}

namespace {

BigCount cell_bound(const BoundParams& p, char cls, int form, std::uint64_t k) {
    switch (cls) {
        case 'M':
            return ceil_to_count(term_exact(form, k, p));
        case 'C': {
            ExactRational t = term_exact(form, k, p);
            if (form <= 2) {
                t *= rational_from_double(p.mu) / rational_from_double(p.edge_constant());
            }
            return ceil_to_count(t);
        }
        case 'P': {
            ExactRational t = term_exact(form, k, p, 1);
            t *= ExactRational(static_cast<unsigned long>(p.punct_count));
            return ceil_to_count(t);
        }
    }
    throw std::invalid_argument("bad class letter");
}

} // namespace

DominationReport check_domination(const Vocabulary& voc, const BlockGrammar& g,
                                  std::optional<BoundParams> params) {
    g.validate();
    DominationReport rep;
    const VocabStats stats = compute_stats(voc, g.B);
    rep.dp = dp_count(stats, g);

    if (rep.dp.total == 0) {
        rep.comparable = true;
        rep.holds = true;
        rep.params.B = g.B;
        rep.params.punct_count = g.punct_set.size();
        rep.notes.push_back("vacuous: the grammar derives no blocks from this vocabulary");
        return rep;
    }
    if (g.B < 2) {
        rep.refusal = "bound undefined for B < 2";
        return rep;
    }

    BoundParams p;
    if (params) {
        p = *params;
        if (p.B != g.B) {
            rep.refusal = "params B = " + std::to_string(p.B) + " does not match grammar B = " +
                          std::to_string(g.B);
            return rep;
        }
        // Length condition: W[i] <= mu * C(B, i-1) for every i, exactly.
        const ExactRational mu_rat = rational_from_double(p.mu);
        for (std::uint64_t i = 1; i <= g.B; ++i) {
            const ExactRational cap =
                mu_rat * ExactRational(binomial(g.B, static_cast<std::int64_t>(i - 1)));
            if (ExactRational(static_cast<unsigned long>(stats.W[i])) > cap) {
                rep.refusal = "length condition violated at i = " + std::to_string(i) + ": W[" +
                              std::to_string(i) + "] = " + std::to_string(stats.W[i]) +
                              " exceeds mu * C(B, i-1)";
                return rep;
            }
        }
    } else {
        p.B = g.B;
        p.N = std::max<std::uint64_t>(1, voc.size());
        p.mu = measured_mu_ceiling(stats);
        p.punct_count = g.punct_set.size();
        p.X = x_constant(g.B, p.N);
        p.x_source = "measured";
    }
    if (!(p.mu > 0.0)) {
        rep.refusal = "mu = 0 (no vocabulary word fits within B) while the grammar derives " +
                      to_decimal_string(rep.dp.total) + " blocks; bound undefined";
        return rep;
    }
    if (p.mode != BoundMode::exact_sum) {
        p.mode = BoundMode::exact_sum;
        rep.notes.push_back("mode forced to exact-sum for the comparison");
    }
    p.lambda.reset();

    const MinusculeBreakdown mb = bound_minuscule(p);
    const CapitalResult cap = bound_capital(p, mb);
    const PunctFirstBreakdown pb = bound_punct_first(p);
    rep.params = p;
    rep.bound_minuscule = mb.count();
    rep.bound_capital = cap.count;
    rep.bound_punct_first = pb.count();
    rep.bound_total = rep.bound_minuscule + rep.bound_capital + rep.bound_punct_first;
    rep.comparable = true;

    const bool ok_m = rep.dp.m_count <= rep.bound_minuscule;
    const bool ok_c = rep.dp.c_count <= rep.bound_capital;
    const bool ok_p = rep.dp.p_count <= rep.bound_punct_first;
    const bool ok_total = rep.dp.total <= rep.bound_total;
    rep.holds = ok_m && ok_c && ok_p && ok_total;
    if (!rep.holds) {
        for (const auto& [key, dp_cell] : rep.dp.breakdown) {
            const auto [cls, form, k] = key;
            const BigCount bound_cell = cell_bound(p, cls, form, k);
            if (dp_cell > bound_cell) {
                rep.failures.push_back({cls, form, k, dp_cell, bound_cell});
            }
        }
    }
    return rep;
}

nlohmann::json to_json(const ClassCounts& counts) {
    nlohmann::json breakdown = nlohmann::json::array();
    for (const auto& [key, value] : counts.breakdown) {
        const auto [cls, form, k] = key;
        breakdown.push_back({
            {"class", std::string(1, cls)},
            {"form", form},
            {"k", k},
            {"count", to_decimal_string(value)},
        });
    }
    return nlohmann::json{
        {"m_count", to_decimal_string(counts.m_count)},
        {"c_count", to_decimal_string(counts.c_count)},
        {"p_count", to_decimal_string(counts.p_count)},
        {"total", to_decimal_string(counts.total)},
        {"breakdown", breakdown},
    };
}

nlohmann::json to_json(const DominationReport& report) {
    nlohmann::json j{
        {"comparable", report.comparable},
        {"holds", report.holds},
        {"dp", to_json(report.dp)},
        {"notes", report.notes},
    };
    if (!report.comparable) {
        j["refusal"] = report.refusal;
        return j;
    }
    j["params"] = nlohmann::json{
        {"B", report.params.B},
        {"N", report.params.N},
        {"mu", report.params.mu},
        {"punct_count", report.params.punct_count},
        {"X", report.params.X},
        {"x_source", report.params.x_source},
        {"mode", to_string(report.params.mode)},
    };
    j["bound"] = nlohmann::json{
        {"minuscule", to_decimal_string(report.bound_minuscule)},
        {"capital", to_decimal_string(report.bound_capital)},
        {"punct_first", to_decimal_string(report.bound_punct_first)},
        {"total", to_decimal_string(report.bound_total)},
    };
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : report.failures) {
        failures.push_back({
            {"class", std::string(1, f.block_class)},
            {"form", f.form},
            {"k", f.k},
            {"dp", to_decimal_string(f.dp)},
            {"bound", to_decimal_string(f.bound)},
        });
    }
    j["failures"] = failures;
    return j;
}

} // namespace blockbound
