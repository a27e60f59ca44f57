#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shrinklab/derivation.hpp"
#include "shrinklab/grammar.hpp"
#include "shrinklab/grammar_text.hpp"
#include "shrinklab/normal_form.hpp"
#include "shrinklab/subword.hpp"

namespace shrinklab {

class ShrinkError : public Error {
public:
    using Error::Error;
};

// A symbol of an index-free sentential form: a terminal or a bare nonterminal.
struct GSym {
    bool terminal = false;
    SymbolId id = 0;

    auto operator<=>(const GSym&) const = default;
};

using IndexFreeForm = std::vector<GSym>;

inline std::string format_gsym(const Grammar& g, const GSym& s) {
    return s.terminal ? g.terminal_name(s.id) : g.nonterminal_name(s.id);
}

inline std::string format_index_free(const Grammar& g, const IndexFreeForm& form) {
    if (form.empty()) {
        return "eps";
    }
    std::string out;
    for (std::size_t i = 0; i < form.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += format_gsym(g, form[i]);
    }
    return out;
}

// A table source: a bare nonterminal A or a pair (A, f) standing for Af.
struct ZSource {
    SymbolId nt = 0;
    std::optional<SymbolId> index;

    auto operator<=>(const ZSource&) const = default;
};

inline std::string format_z_source(const Grammar& g, const ZSource& src) {
    std::string out = g.nonterminal_name(src.nt);
    if (src.index) {
        out += '[';
        out += g.index_name(*src.index);
        out += ']';
    }
    return out;
}

struct ZEntry {
    std::set<IndexFreeForm> forms;
    bool truncated = false;
};

struct ZTable {
    std::map<ZSource, ZEntry> entries;
    std::size_t m = 1;
    std::size_t cover_length_bound = 2;  // C: maximum stored length, floored at 2
    std::size_t shrink_constant = 6;     // k = C^2 + 2
    bool complete = false;

    bool covered(const ZSource& src, const IndexFreeForm& form) const {
        auto it = entries.find(src);
        return it != entries.end() && it->second.forms.contains(form);
    }
};

inline ZSource source_of(const NonterminalSym& nt) {
    if (nt.stack.empty()) {
        return ZSource{nt.id, std::nullopt};
    }
    return ZSource{nt.id, nt.stack.front()};
}

struct IndexFreeEnumeration {
    std::set<IndexFreeForm> forms;
    bool truncated = false;
    SearchStats stats;
};

inline IndexFreeEnumeration enumerate_index_free(const Grammar& g, const SententialForm& origin,
                                                 const SearchBounds& b) {
    detail::FormSearch search(g, b, detail::ExpandMode::all_positions,
                              std::numeric_limits<std::size_t>::max());
    IndexFreeEnumeration out;
    search.run(origin, [&out](const SententialForm& form) {
        IndexFreeForm converted;
        converted.reserve(form.items.size());
        for (const FormItem& item : form.items) {
            if (is_terminal(item)) {
                converted.push_back(GSym{true, std::get<TerminalSym>(item).id});
            } else {
                const auto& nt = std::get<NonterminalSym>(item);
                if (!nt.stack.empty()) {
                    return false;
                }
                converted.push_back(GSym{false, nt.id});
            }
        }
        out.forms.insert(std::move(converted));
        return false;
    });
    out.stats = search.stats();
    out.truncated =
        out.stats.pruned_depth || out.stats.pruned_items || out.stats.aborted_steps;
    return out;
}

// Per source, a distinguished cover of the index-free forms reachable within
// bounds, plus every reachable form of length at most m. The true table is
// finite but not computable; truncation is recorded.
inline ZTable approximate_z(const Grammar& g, std::size_t m, const SearchBounds& b) {
    g.validate();
    if (auto violations = is_normal_form(g); !violations.empty()) {
        throw ValidationError("the Z table requires a normal-form grammar: " +
                              violations.front().detail);
    }
    if (m == 0) {
        throw std::invalid_argument("the distinguish parameter must be positive");
    }
    ZTable z;
    z.m = m;
    bool any_truncated = false;
    std::size_t max_len = 0;
    for (SymbolId a = 0; a < g.nonterminal_names.size(); ++a) {
        std::vector<std::optional<SymbolId>> variants = {std::nullopt};
        for (SymbolId f = 0; f < g.index_names.size(); ++f) {
            variants.push_back(f);
        }
        for (const std::optional<SymbolId>& f : variants) {
            SententialForm origin;
            origin.items.push_back(
                NonterminalSym{a, f ? std::vector<SymbolId>{*f} : std::vector<SymbolId>{}});
            IndexFreeEnumeration enumerated = enumerate_index_free(g, origin, b);
            ZEntry entry;
            entry.truncated = enumerated.truncated;
            entry.forms = distinguished_cover(enumerated.forms, m);
            for (const IndexFreeForm& form : enumerated.forms) {
                if (form.size() <= m) {
                    entry.forms.insert(form);
                }
            }
            for (const IndexFreeForm& form : entry.forms) {
                max_len = std::max(max_len, form.size());
            }
            any_truncated = any_truncated || entry.truncated;
            z.entries.emplace(ZSource{a, f}, std::move(entry));
        }
    }
    z.cover_length_bound = std::max<std::size_t>(max_len, 2);
    z.shrink_constant = z.cover_length_bound * z.cover_length_bound + 2;
    z.complete = !any_truncated;
    return z;
}

inline ZTable approximate_z(const Grammar& g, std::size_t m) {
    return approximate_z(g, m, SearchBounds::for_cover_enumeration(m, g));
}

// One symbol of β(p) together with the tree vertex deriving the corresponding
// factor.
struct BetaUnit {
    GSym sym;
    Vertex vertex = 0;
};

namespace detail {

inline void beta_walk(const Grammar& g, const DerivationTree& t, Vertex v, std::size_t d,
                      std::vector<BetaUnit>& out) {
    const TreeNode& node = t.node(v);
    if (!node.production) {
        throw ShrinkError("derivation tree is incomplete at vertex " + t.vertex_path(v));
    }
    const Production& p = g.productions.at(*node.production);
    bool pops = p.pop_index.has_value();
    if (pops && d == 1) {
        // The marked index is consumed here: the children are Γ-leaves.
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            Vertex c = node.children[i];
            if (is_terminal(p.rhs[i])) {
                out.push_back(BetaUnit{GSym{true, std::get<TerminalSym>(p.rhs[i]).id}, c});
                continue;
            }
            const auto& rhs_nt = std::get<NonterminalSym>(p.rhs[i]);
            if (!rhs_nt.stack.empty()) {
                throw ShrinkError(
                    "the production consuming the marked index pushes new indices at vertex " +
                    t.vertex_path(v) + "; β is undefined here");
            }
            out.push_back(BetaUnit{GSym{false, rhs_nt.id}, c});
        }
        return;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        Vertex c = node.children[i];
        if (is_terminal(p.rhs[i])) {
            out.push_back(BetaUnit{GSym{true, std::get<TerminalSym>(p.rhs[i]).id}, c});
            continue;
        }
        const auto& rhs_nt = std::get<NonterminalSym>(p.rhs[i]);
        beta_walk(g, t, c, d - (pops ? 1 : 0) + rhs_nt.stack.size(), out);
    }
}

}  // namespace detail

// β(p): for an index-free or terminal label, the terminal yield of the whole
// subtree, one unit per leaf; for λ(p) = (A, fω), the marked-index walk cut at
// the first consumption of f.
inline std::vector<BetaUnit> beta_units(const Grammar& g, const DerivationTree& t, Vertex p) {
    if (p >= t.size()) {
        throw ShrinkError("vertex out of range");
    }
    const TreeNode& node = t.node(p);
    if (is_terminal(node.label)) {
        return {BetaUnit{GSym{true, std::get<TerminalSym>(node.label).id}, p}};
    }
    const auto& nt = std::get<NonterminalSym>(node.label);
    if (!nt.stack.empty()) {
        std::vector<BetaUnit> out;
        detail::beta_walk(g, t, p, 1, out);
        return out;
    }
    std::vector<BetaUnit> out;
    std::vector<Vertex> stack = {p};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        const TreeNode& n = t.node(v);
        if (is_terminal(n.label)) {
            out.push_back(BetaUnit{GSym{true, std::get<TerminalSym>(n.label).id}, v});
            continue;
        }
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
            stack.push_back(*it);
        }
    }
    return out;
}

inline IndexFreeForm beta_view(const Grammar& g, const DerivationTree& t, Vertex p) {
    IndexFreeForm out;
    for (const BetaUnit& u : beta_units(g, t, p)) {
        out.push_back(u.sym);
    }
    return out;
}

// γ(p) = β(p)·ω: every nonterminal of β carries the suffix ω below the marked
// top index of λ(p).
inline SententialForm gamma_view(const Grammar& g, const DerivationTree& t, Vertex p) {
    std::vector<SymbolId> omega;
    const TreeNode& node = t.node(p);
    if (is_nonterminal(node.label)) {
        const auto& stack = std::get<NonterminalSym>(node.label).stack;
        if (!stack.empty()) {
            omega.assign(stack.begin() + 1, stack.end());
        }
    }
    SententialForm out;
    for (const BetaUnit& u : beta_units(g, t, p)) {
        if (u.sym.terminal) {
            out.items.push_back(TerminalSym{u.sym.id});
        } else {
            out.items.push_back(NonterminalSym{u.sym.id, omega});
        }
    }
    return out;
}

// Deepest vertex whose β lies outside the table entry for its source class,
// leftmost among the deepest; by depth-maximality all proper descendants of
// the result are covered, which is what the α search relies on.
inline Vertex select_vertex(const Grammar& g, const DerivationTree& t, const ZTable& z) {
    std::optional<Vertex> best;
    std::size_t best_rank = 0;
    std::vector<Vertex> order = t.preorder();
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        Vertex v = order[rank];
        const TreeNode& node = t.node(v);
        if (is_terminal(node.label)) {
            continue;
        }
        IndexFreeForm beta = beta_view(g, t, v);
        if (z.covered(source_of(std::get<NonterminalSym>(node.label)), beta)) {
            continue;
        }
        const TreeNode& chosen = best ? t.node(*best) : node;
        if (!best || node.depth > chosen.depth ||
            (node.depth == chosen.depth && rank < best_rank)) {
            best = v;
            best_rank = rank;
        }
    }
    if (!best) {
        std::string beta_text =
            format_index_free(g, beta_view(g, t, t.root()));
        throw ShrinkError(
            "every vertex is already covered by the Z table (root β = " + beta_text +
            "); the word is too short to shrink against this table");
    }
    return *best;
}

struct FactorOrigin {
    enum class Kind { left_context, unit, right_context };

    Kind kind = Kind::unit;
    std::optional<GSym> symbol;
    std::optional<Vertex> unit_vertex;
};

struct Factorization {
    std::vector<Word> factors;
    std::vector<FactorOrigin> origins;
    Vertex vertex = 0;
};

// w = w' u_1 ... u_t w'': the contexts are the yield strictly left and right
// of p's subtree, and u_i is the yield of the subtree at the i-th Γ(p)-leaf.
inline Factorization factorize(const Grammar& g, const DerivationTree& t, Vertex p) {
    std::vector<BetaUnit> units = beta_units(g, t, p);
    std::vector<std::pair<std::size_t, std::size_t>> spans = t.leaf_spans();
    Word yield = t.yield();

    Factorization out;
    out.vertex = p;
    auto push_factor = [&out, &yield](std::size_t first, std::size_t count, FactorOrigin origin) {
        if (count == 0) {
            return;
        }
        out.factors.emplace_back(yield.begin() + static_cast<std::ptrdiff_t>(first),
                                 yield.begin() + static_cast<std::ptrdiff_t>(first + count));
        out.origins.push_back(std::move(origin));
    };

    auto [p_first, p_count] = spans[p];
    push_factor(0, p_first, FactorOrigin{FactorOrigin::Kind::left_context, {}, {}});
    std::size_t cursor = p_first;
    for (const BetaUnit& u : units) {
        auto [first, count] = spans[u.vertex];
        if (first != cursor || count == 0) {
            throw ShrinkError("β units at vertex " + t.vertex_path(p) +
                              " do not tile the subtree yield; the tree is malformed");
        }
        push_factor(first, count,
                    FactorOrigin{FactorOrigin::Kind::unit, u.sym, u.vertex});
        cursor = first + count;
    }
    if (cursor != p_first + p_count) {
        throw ShrinkError("β units at vertex " + t.vertex_path(p) +
                          " do not cover the subtree yield; the tree is malformed");
    }
    push_factor(cursor, yield.size() - cursor,
                FactorOrigin{FactorOrigin::Kind::right_context, {}, {}});
    return out;
}

struct ShrinkCertificate {
    Factorization factorization;
    std::set<std::size_t> distinguished;
    IndexFreeForm alpha;
    std::vector<std::size_t> kept;
    Word v;
    DerivationTree membership_witness;
};

// The heart of the construction: find α in the source's table entry (or by a
// direct bounded search) that properly divides β(p) while covering every
// distinguished position, then keep the contexts plus exactly the units the
// embedding selects.
inline ShrinkCertificate shrink(const Grammar& g, const DerivationTree& t, const Factorization& fz,
                                const std::set<std::size_t>& distinguished, const ZTable& z,
                                std::optional<SearchBounds> membership_bounds = std::nullopt) {
    const std::size_t r = fz.factors.size();
    if (distinguished.size() > z.m) {
        throw std::invalid_argument("more distinguished factors than the table's m");
    }
    for (std::size_t d : distinguished) {
        if (d >= r) {
            throw std::invalid_argument("distinguished factor index out of range");
        }
    }
    const TreeNode& node = t.node(fz.vertex);
    if (!is_nonterminal(node.label)) {
        throw ShrinkError("the factorization vertex is terminal; nothing to shrink");
    }
    ZSource source = source_of(std::get<NonterminalSym>(node.label));

    // β positions of the unit factors, in factor order.
    std::vector<std::size_t> unit_factor_indices;
    IndexFreeForm beta;
    for (std::size_t i = 0; i < r; ++i) {
        if (fz.origins[i].kind == FactorOrigin::Kind::unit) {
            unit_factor_indices.push_back(i);
            beta.push_back(*fz.origins[i].symbol);
        }
    }

    std::set<std::size_t> required;
    for (std::size_t d : distinguished) {
        if (fz.origins[d].kind != FactorOrigin::Kind::unit) {
            continue;
        }
        std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(unit_factor_indices.begin(), unit_factor_indices.end(), d) -
            unit_factor_indices.begin());
        required.insert(pos);
    }
    for (std::size_t pos = 0; pos < beta.size() && required.size() < z.m; ++pos) {
        required.insert(pos);
    }
    if (required.size() < z.m) {
        throw ShrinkError("β at vertex " + t.vertex_path(fz.vertex) + " has only " +
                          std::to_string(beta.size()) + " symbols, fewer than m = " +
                          std::to_string(z.m) + "; no proper covering divisor can exist");
    }

    auto shorter_then_lex = [](const IndexFreeForm& a, const IndexFreeForm& b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    };
    auto pick = [&](const std::set<IndexFreeForm>& pool)
        -> std::optional<std::pair<IndexFreeForm, Embedding>> {
        std::vector<IndexFreeForm> sorted(pool.begin(), pool.end());
        std::sort(sorted.begin(), sorted.end(), shorter_then_lex);
        for (const IndexFreeForm& alpha : sorted) {
            if (alpha.size() >= beta.size()) {
                continue;
            }
            if (auto embedding = divides_covering(alpha, beta, required)) {
                return std::make_pair(alpha, *embedding);
            }
        }
        return std::nullopt;
    };

    std::optional<std::pair<IndexFreeForm, Embedding>> choice;
    if (auto it = z.entries.find(source); it != z.entries.end()) {
        choice = pick(it->second.forms);
    }
    if (!choice) {
        // Fall back to a direct bounded search from the source for any proper
        // covering divisor the approximate table missed.
        SearchBounds fb = SearchBounds::for_cover_enumeration(z.m, g);
        fb.max_items = beta.size() - 1;
        SententialForm origin;
        origin.items.push_back(NonterminalSym{
            source.nt, source.index ? std::vector<SymbolId>{*source.index}
                                    : std::vector<SymbolId>{}});
        choice = pick(enumerate_index_free(g, origin, fb).forms);
    }
    if (!choice) {
        throw ShrinkError("no proper covering divisor of β = " + format_index_free(g, beta) +
                          " found for source " + format_z_source(g, source) +
                          "; the Z table is too coarse for this tree");
    }

    ShrinkCertificate cert{fz,
                           distinguished,
                           choice->first,
                           {},
                           {},
                           DerivationTree{FormItem(NonterminalSym{g.start, {}})}};
    std::set<std::size_t> kept_units;
    for (std::size_t pos : choice->second) {
        kept_units.insert(unit_factor_indices[pos]);
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (fz.origins[i].kind != FactorOrigin::Kind::unit || kept_units.contains(i)) {
            cert.kept.push_back(i);
            cert.v.insert(cert.v.end(), fz.factors[i].begin(), fz.factors[i].end());
        }
    }

    MembershipResult member =
        membership_bounds ? is_member(g, cert.v, *membership_bounds) : is_member(g, cert.v);
    if (member.status != Membership::yes) {
        throw ShrinkError("the shrunk word " + format_word(g, cert.v) +
                          " failed the membership check (" +
                          (member.status == Membership::unknown ? "inconclusive search"
                                                                : "not derivable within bounds") +
                          "); this certificate cannot be issued");
    }
    cert.membership_witness = std::move(*member.tree);
    return cert;
}

enum class DistinguishStrategy { max_length_factor, parikh_per_letter };

inline std::set<std::size_t> choose_distinguished(const Grammar& g, const Factorization& fz,
                                                  std::size_t m, DistinguishStrategy strategy) {
    std::set<std::size_t> out;
    if (strategy == DistinguishStrategy::max_length_factor) {
        std::vector<std::size_t> order(fz.factors.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&fz](std::size_t a, std::size_t b) {
            return fz.factors[a].size() > fz.factors[b].size();
        });
        for (std::size_t i = 0; i < order.size() && out.size() < m; ++i) {
            out.insert(order[i]);
        }
        return out;
    }
    for (SymbolId letter = 0; letter < g.terminal_names.size(); ++letter) {
        std::size_t best = 0;
        std::size_t best_count = 0;
        for (std::size_t i = 0; i < fz.factors.size(); ++i) {
            std::size_t count = static_cast<std::size_t>(
                std::count(fz.factors[i].begin(), fz.factors[i].end(), letter));
            if (count > best_count) {
                best = i;
                best_count = count;
            }
        }
        if (best_count > 0) {
            out.insert(best);
        }
    }
    if (out.size() > m) {
        throw std::invalid_argument(
            "the per-letter strategy selected more factors than m; use m = alphabet size");
    }
    return out;
}

struct ChainResult {
    std::vector<Word> words;
    std::vector<ShrinkCertificate> certificates;
};

// Iterate the pipeline while |w| ≥ k. With m = 1 and the max-length strategy
// this realizes the fixed-ratio descent; with the per-letter strategy it
// preserves a share of every letter.
inline ChainResult shrink_chain(const Grammar& g, const Word& w, std::size_t m,
                                DistinguishStrategy strategy,
                                std::optional<ZTable> table = std::nullopt) {
    ZTable z = table ? std::move(*table) : approximate_z(g, m);
    MembershipResult start = is_member(g, w);
    if (start.status != Membership::yes) {
        throw ShrinkError("the chain's starting word is not derivable within bounds");
    }
    ChainResult out;
    out.words.push_back(w);
    Word current = w;
    DerivationTree tree = std::move(*start.tree);
    while (current.size() >= z.shrink_constant) {
        Vertex p = select_vertex(g, tree, z);
        Factorization fz = factorize(g, tree, p);
        std::set<std::size_t> distinguished = choose_distinguished(g, fz, m, strategy);
        ShrinkCertificate cert = shrink(g, tree, fz, distinguished, z);
        current = cert.v;
        out.words.push_back(current);
        out.certificates.push_back(std::move(cert));
        // The certificate's witness is a derivation of the new word; reuse it.
        tree = out.certificates.back().membership_witness;
    }
    return out;
}

struct SubsetOutcome {
    std::set<std::size_t> subset;
    std::optional<Word> v;
    bool passed = false;
    std::string message;
};

struct TheoremReport {
    Word w;
    std::size_t m = 0;
    std::size_t r = 0;
    std::size_t k = 0;
    bool passed = false;
    std::string message;
    std::vector<SubsetOutcome> outcomes;
};

// Check every condition of the factorization statement for one word: the
// factor-count window, nonemptiness, and, for every m-subset of factor
// indices, a verified proper subproduct that keeps the subset.
inline TheoremReport verify_theorem_a(const Grammar& g, const Word& w, std::size_t m,
                                      const ZTable& z) {
    if (w.size() < z.shrink_constant) {
        throw ShrinkError("the word is shorter than k = " +
                          std::to_string(z.shrink_constant) +
                          "; the factorization statement does not apply");
    }
    MembershipResult member = is_member(g, w);
    if (member.status != Membership::yes) {
        throw ShrinkError("the word is not derivable within bounds; nothing to verify");
    }

    TheoremReport report;
    report.w = w;
    report.m = m;
    report.k = z.shrink_constant;

    Vertex p = select_vertex(g, *member.tree, z);
    Factorization fz = factorize(g, *member.tree, p);
    report.r = fz.factors.size();

    bool conditions_ok = true;
    if (!(m < report.r && report.r <= report.k)) {
        conditions_ok = false;
        report.message = "factor count r = " + std::to_string(report.r) +
                         " is outside (m, k]";
    }
    for (const Word& factor : fz.factors) {
        if (factor.empty()) {
            conditions_ok = false;
            report.message = "a factor is empty";
        }
    }

    std::vector<std::size_t> subset(m);
    bool all_subsets_passed = true;
    auto run_subset = [&](const std::set<std::size_t>& chosen) {
        SubsetOutcome outcome;
        outcome.subset = chosen;
        try {
            ShrinkCertificate cert = shrink(g, *member.tree, fz, chosen, z);
            outcome.v = cert.v;
            std::size_t t_count = cert.kept.size();
            if (!std::includes(cert.kept.begin(), cert.kept.end(), chosen.begin(),
                               chosen.end())) {
                outcome.message = "a distinguished factor was dropped";
            } else if (!(m <= t_count && t_count < report.r)) {
                outcome.message = "kept count outside [m, r)";
            } else if (cert.v.size() >= w.size()) {
                outcome.message = "the subproduct is not proper";
            } else if (validate_tree(g, cert.membership_witness) != cert.v) {
                outcome.message = "the membership witness does not yield v";
            } else {
                outcome.passed = true;
            }
        } catch (const Error& e) {
            outcome.message = e.what();
        }
        all_subsets_passed = all_subsets_passed && outcome.passed;
        report.outcomes.push_back(std::move(outcome));
    };
    auto rec = [&](auto&& self, std::size_t index, std::size_t next) -> void {
        if (index == m) {
            run_subset(std::set<std::size_t>(subset.begin(), subset.end()));
            return;
        }
        for (std::size_t i = next; i + (m - index - 1) < report.r; ++i) {
            subset[index] = i;
            self(self, index + 1, i + 1);
        }
    };
    rec(rec, 0, 0);

    report.passed = conditions_ok && all_subsets_passed;
    if (report.passed) {
        report.message = "all conditions hold";
    } else if (report.message.empty()) {
        report.message = "a subset check failed";
    }
    return report;
}

// Maximum consecutive growth ratio of an increasing length sequence; for a
// single-letter indexed language this is bounded by k.
inline double growth_check(const std::vector<std::size_t>& lengths) {
    if (lengths.size() < 2) {
        throw std::invalid_argument("growth_check needs at least two lengths");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
        if (lengths[i] == 0 || lengths[i + 1] <= lengths[i]) {
            throw std::invalid_argument("lengths must be positive and strictly increasing");
        }
        worst = std::max(worst, static_cast<double>(lengths[i + 1]) /
                                    static_cast<double>(lengths[i]));
    }
    return worst;
}

}  // namespace shrinklab
