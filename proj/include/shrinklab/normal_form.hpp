#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "shrinklab/grammar.hpp"
#include "shrinklab/grammar_text.hpp"

namespace shrinklab {

// Normal form: the start symbol never occurs on a right-hand side, the only
// ε-production is for the start symbol, and every other production is one of
// A -> B C, A[f] -> B, A -> B[f], A -> a.

enum class ViolationKind {
    start_on_rhs,
    epsilon_production,
    bad_shape,
};

struct NormalFormViolation {
    ViolationKind kind;
    std::size_t production;
    std::string detail;
};

inline std::vector<NormalFormViolation> is_normal_form(const Grammar& g) {
    std::vector<NormalFormViolation> out;
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        const Production& p = g.productions[i];
        std::string text = format_production(g, p);
        for (const FormItem& item : p.rhs) {
            if (is_nonterminal(item) && std::get<NonterminalSym>(item).id == g.start) {
                out.push_back({ViolationKind::start_on_rhs, i,
                               "start symbol occurs on the right-hand side of '" + text + "'"});
            }
        }
        if (p.rhs.empty()) {
            if (p.lhs != g.start || p.pop_index) {
                out.push_back({ViolationKind::epsilon_production, i,
                               "ε-production '" + text + "' is only allowed for the start symbol"});
            }
            continue;
        }
        bool ok = false;
        if (p.pop_index) {
            ok = p.rhs.size() == 1 && is_nonterminal(p.rhs[0]) &&
                 std::get<NonterminalSym>(p.rhs[0]).stack.empty();
        } else if (p.rhs.size() == 1) {
            if (is_terminal(p.rhs[0])) {
                ok = true;
            } else {
                ok = std::get<NonterminalSym>(p.rhs[0]).stack.size() == 1;
            }
        } else if (p.rhs.size() == 2) {
            ok = is_nonterminal(p.rhs[0]) && std::get<NonterminalSym>(p.rhs[0]).stack.empty() &&
                 is_nonterminal(p.rhs[1]) && std::get<NonterminalSym>(p.rhs[1]).stack.empty();
        }
        if (!ok) {
            out.push_back({ViolationKind::bad_shape, i,
                           "'" + text +
                               "' is not of the form A -> B C, A[f] -> B, A -> B[f], or A -> a"});
        }
    }
    return out;
}

struct NormalizeResult {
    Grammar grammar;
    std::vector<std::string> notes;
};

namespace detail {

class Normalizer {
public:
    explicit Normalizer(const Grammar& input) : g_(input) {}

    NormalizeResult run() {
        g_.validate();
        reject_epsilon_conflicts();
        fresh_start();
        flatten_pops();
        expand_index_strings();
        lift_terminals();
        binarize();
        eliminate_units();
        prune_unreachable();
        g_.validate();
        if (!is_normal_form(g_).empty()) {
            throw Error("internal error: normalization left a non-normal production");
        }
        return NormalizeResult{std::move(g_), std::move(notes_)};
    }

private:
    bool name_taken(const std::string& name) const {
        return g_.find_terminal(name) || g_.find_nonterminal(name) || g_.find_index(name);
    }

    SymbolId add_nonterminal(const std::string& name) {
        g_.nonterminal_names.push_back(name);
        return static_cast<SymbolId>(g_.nonterminal_names.size() - 1);
    }

    SymbolId fresh_nonterminal(const std::string& base, bool try_exact = false) {
        if (try_exact && !name_taken(base)) {
            return add_nonterminal(base);
        }
        std::size_t& counter = counters_[base];
        while (true) {
            std::string name = base + std::to_string(counter++);
            if (!name_taken(name)) {
                return add_nonterminal(name);
            }
        }
    }

    static bool bare_nonterminal(const FormItem& item) {
        return is_nonterminal(item) && std::get<NonterminalSym>(item).stack.empty();
    }

    void reject_epsilon_conflicts() {
        bool start_epsilon = false;
        bool start_on_rhs = false;
        for (const Production& p : g_.productions) {
            if (p.rhs.empty()) {
                start_epsilon = true;
            }
            for (const FormItem& item : p.rhs) {
                if (is_nonterminal(item) && std::get<NonterminalSym>(item).id == g_.start) {
                    start_on_rhs = true;
                }
            }
        }
        if (start_epsilon && start_on_rhs) {
            throw ValidationError(
                "cannot normalize: the start symbol has an ε-production and also occurs on a "
                "right-hand side, and ε-elimination is out of scope");
        }
    }

    void fresh_start() {
        bool on_rhs = false;
        for (const Production& p : g_.productions) {
            for (const FormItem& item : p.rhs) {
                if (is_nonterminal(item) && std::get<NonterminalSym>(item).id == g_.start) {
                    on_rhs = true;
                }
            }
        }
        if (!on_rhs) {
            return;
        }
        SymbolId old_start = g_.start;
        SymbolId fresh = fresh_nonterminal(g_.nonterminal_name(old_start) + "'", true);
        std::vector<Production> mirrored;
        for (const Production& p : g_.productions) {
            if (p.lhs == old_start && !p.pop_index) {
                mirrored.push_back(Production{fresh, std::nullopt, p.rhs});
            }
        }
        g_.productions.insert(g_.productions.begin(), mirrored.begin(), mirrored.end());
        g_.start = fresh;
        notes_.push_back("added fresh start symbol " + g_.nonterminal_name(fresh));
    }

    void flatten_pops() {
        std::vector<Production> out;
        for (Production& p : g_.productions) {
            if (!p.pop_index || (p.rhs.size() == 1 && bare_nonterminal(p.rhs[0]))) {
                out.push_back(std::move(p));
                continue;
            }
            SymbolId aux = fresh_nonterminal("P");
            out.push_back(Production{p.lhs, p.pop_index, {NonterminalSym{aux, {}}}});
            out.push_back(Production{aux, std::nullopt, std::move(p.rhs)});
        }
        g_.productions = std::move(out);
    }

    void expand_index_strings() {
        std::vector<Production> out;
        for (Production& p : g_.productions) {
            std::vector<Production> chains;
            for (FormItem& item : p.rhs) {
                if (!is_nonterminal(item)) {
                    continue;
                }
                auto& nt = std::get<NonterminalSym>(item);
                std::size_t j = nt.stack.size();
                if (j == 0 || (j == 1 && p.rhs.size() == 1)) {
                    continue;
                }
                // Pushes happen bottom-up, so the chain pushes the last index
                // first and the original top index last.
                std::vector<SymbolId> links;
                links.push_back(fresh_nonterminal("D"));
                for (std::size_t i = 0; i + 1 < j; ++i) {
                    links.push_back(fresh_nonterminal("D"));
                    chains.push_back(Production{
                        links[i], std::nullopt, {NonterminalSym{links[i + 1], {nt.stack[j - 1 - i]}}}});
                }
                chains.push_back(Production{
                    links.back(), std::nullopt, {NonterminalSym{nt.id, {nt.stack[0]}}}});
                nt = NonterminalSym{links[0], {}};
            }
            out.push_back(std::move(p));
            for (Production& c : chains) {
                out.push_back(std::move(c));
            }
        }
        g_.productions = std::move(out);
    }

    void lift_terminals() {
        std::map<SymbolId, SymbolId> lifted;
        std::vector<Production> out;
        for (Production& p : g_.productions) {
            std::vector<Production> defs;
            if (p.rhs.size() >= 2) {
                for (FormItem& item : p.rhs) {
                    if (!is_terminal(item)) {
                        continue;
                    }
                    SymbolId t = std::get<TerminalSym>(item).id;
                    auto it = lifted.find(t);
                    if (it == lifted.end()) {
                        SymbolId aux = fresh_nonterminal("T_" + g_.terminal_name(t), true);
                        it = lifted.emplace(t, aux).first;
                        defs.push_back(Production{aux, std::nullopt, {TerminalSym{t}}});
                    }
                    item = NonterminalSym{it->second, {}};
                }
            }
            out.push_back(std::move(p));
            for (Production& d : defs) {
                out.push_back(std::move(d));
            }
        }
        g_.productions = std::move(out);
    }

    void binarize() {
        std::vector<Production> out;
        for (Production& p : g_.productions) {
            if (p.rhs.size() < 3) {
                out.push_back(std::move(p));
                continue;
            }
            std::vector<FormItem> rest(p.rhs.begin() + 1, p.rhs.end());
            SymbolId aux = fresh_nonterminal("R");
            out.push_back(Production{p.lhs, p.pop_index, {p.rhs[0], NonterminalSym{aux, {}}}});
            SymbolId lhs = aux;
            while (rest.size() > 2) {
                SymbolId next = fresh_nonterminal("R");
                out.push_back(Production{lhs, std::nullopt, {rest[0], NonterminalSym{next, {}}}});
                rest.erase(rest.begin());
                lhs = next;
            }
            out.push_back(Production{lhs, std::nullopt, {rest[0], rest[1]}});
        }
        g_.productions = std::move(out);
    }

    static bool is_bare_unit(const Production& p) {
        return !p.pop_index && p.rhs.size() == 1 && is_nonterminal(p.rhs[0]) &&
               std::get<NonterminalSym>(p.rhs[0]).stack.empty();
    }

    // Index-free units copy the whole stack, so A -> B makes A derive exactly
    // what B derives; CFG-style closure over such edges is sound, including
    // for pop productions of the target.
    void eliminate_units() {
        collapse_unit_cycles();

        std::map<SymbolId, std::vector<SymbolId>> unit_edges;
        std::map<SymbolId, std::vector<const Production*>> non_units;
        for (const Production& p : g_.productions) {
            if (is_bare_unit(p)) {
                unit_edges[p.lhs].push_back(std::get<NonterminalSym>(p.rhs[0]).id);
            } else {
                non_units[p.lhs].push_back(&p);
            }
        }
        if (unit_edges.empty()) {
            return;
        }

        std::vector<Production> out;
        for (const Production& p : g_.productions) {
            if (!is_bare_unit(p)) {
                out.push_back(p);
                continue;
            }
            std::vector<SymbolId> queue = {std::get<NonterminalSym>(p.rhs[0]).id};
            std::set<SymbolId> seen(queue.begin(), queue.end());
            seen.insert(p.lhs);
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                SymbolId target = queue[qi];
                if (auto it = non_units.find(target); it != non_units.end()) {
                    for (const Production* src : it->second) {
                        out.push_back(Production{p.lhs, src->pop_index, src->rhs});
                    }
                }
                if (auto it = unit_edges.find(target); it != unit_edges.end()) {
                    for (SymbolId next : it->second) {
                        if (seen.insert(next).second) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }

        std::set<Production> emitted;
        std::vector<Production> deduped;
        for (Production& p : out) {
            if (emitted.insert(p).second) {
                deduped.push_back(std::move(p));
            }
        }
        g_.productions = std::move(deduped);
    }

    void collapse_unit_cycles() {
        std::map<SymbolId, std::set<SymbolId>> closure;
        for (const Production& p : g_.productions) {
            if (is_bare_unit(p)) {
                closure[p.lhs].insert(std::get<NonterminalSym>(p.rhs[0]).id);
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [a, targets] : closure) {
                std::set<SymbolId> add;
                for (SymbolId b : targets) {
                    if (auto it = closure.find(b); it != closure.end()) {
                        add.insert(it->second.begin(), it->second.end());
                    }
                }
                for (SymbolId b : add) {
                    if (targets.insert(b).second) {
                        changed = true;
                    }
                }
            }
        }

        std::map<SymbolId, SymbolId> rep;
        for (const auto& [a, targets] : closure) {
            if (!targets.contains(a)) {
                continue;
            }
            SymbolId r = a;
            for (SymbolId b : targets) {
                if (b != a && closure.contains(b) && closure.at(b).contains(a)) {
                    r = std::min(r, b);
                }
            }
            rep[a] = r;
        }
        if (rep.empty()) {
            return;
        }

        std::set<std::string> noted;
        for (const auto& [a, r] : rep) {
            if (a != r && noted.insert(g_.nonterminal_name(r)).second) {
                notes_.push_back("collapsed a unit-production cycle into " +
                                 g_.nonterminal_name(r));
            }
        }

        auto subst = [&rep](SymbolId id) {
            auto it = rep.find(id);
            return it == rep.end() ? id : it->second;
        };
        std::vector<Production> out;
        for (Production& p : g_.productions) {
            p.lhs = subst(p.lhs);
            for (FormItem& item : p.rhs) {
                if (is_nonterminal(item)) {
                    auto& nt = std::get<NonterminalSym>(item);
                    nt.id = subst(nt.id);
                }
            }
            if (is_bare_unit(p) && std::get<NonterminalSym>(p.rhs[0]).id == p.lhs) {
                continue;
            }
            out.push_back(std::move(p));
        }
        g_.productions = std::move(out);
    }

    void prune_unreachable() {
        std::set<SymbolId> reachable = {g_.start};
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Production& p : g_.productions) {
                if (!reachable.contains(p.lhs)) {
                    continue;
                }
                for (const FormItem& item : p.rhs) {
                    if (is_nonterminal(item) &&
                        reachable.insert(std::get<NonterminalSym>(item).id).second) {
                        changed = true;
                    }
                }
            }
        }
        std::vector<Production> out;
        for (Production& p : g_.productions) {
            if (reachable.contains(p.lhs)) {
                out.push_back(std::move(p));
            }
        }
        g_.productions = std::move(out);
    }

    Grammar g_;
    std::vector<std::string> notes_;
    std::map<std::string, std::size_t> counters_;
};

}  // namespace detail

inline NormalizeResult to_normal_form(const Grammar& g) {
    return detail::Normalizer(g).run();
}

}  // namespace shrinklab
