#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shrinklab/grammar.hpp"

namespace shrinklab {

struct SearchBounds {
    std::size_t max_items = 64;
    std::size_t max_index_depth = 32;
    std::size_t max_steps = 100000;

    static SearchBounds for_word_length(std::size_t max_len, const Grammar& g) {
        SearchBounds b;
        b.max_items = std::max<std::size_t>(max_len, 1);
        b.max_index_depth = max_len + g.index_names.size() + 2;
        b.max_steps = 100000 + 50000 * max_len;
        return b;
    }

    static SearchBounds for_cover_enumeration(std::size_t m, const Grammar& g) {
        SearchBounds b;
        b.max_items = std::max<std::size_t>(m, 2);
        b.max_index_depth = std::max<std::size_t>(8, 2 * m + g.index_names.size() + 4);
        b.max_steps = 200000;
        return b;
    }
};

struct SearchStats {
    std::size_t forms = 0;
    std::size_t steps = 0;
    bool pruned_depth = false;
    bool pruned_items = false;
    bool aborted_steps = false;
};

struct RewriteStep {
    std::uint32_t position = 0;
    std::uint32_t production = 0;
};

using Vertex = std::uint32_t;

struct TreeNode {
    FormItem label;
    std::optional<std::uint32_t> production;
    std::vector<Vertex> children;
    Vertex parent = 0;
    std::uint32_t depth = 0;
};

class DerivationTree {
public:
    explicit DerivationTree(FormItem root_label) {
        nodes_.push_back(TreeNode{std::move(root_label), std::nullopt, {}, 0, 0});
    }

    Vertex root() const { return 0; }
    std::size_t size() const { return nodes_.size(); }
    const TreeNode& node(Vertex v) const { return nodes_.at(v); }
    TreeNode& node_mut(Vertex v) { return nodes_.at(v); }

    Vertex add_child(Vertex parent, FormItem label) {
        Vertex v = static_cast<Vertex>(nodes_.size());
        nodes_.push_back(
            TreeNode{std::move(label), std::nullopt, {}, parent, nodes_.at(parent).depth + 1});
        nodes_[parent].children.push_back(v);
        return v;
    }

    void set_production(Vertex v, std::uint32_t prod) { nodes_.at(v).production = prod; }

    std::vector<Vertex> preorder() const {
        std::vector<Vertex> order;
        std::vector<Vertex> stack = {0};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            order.push_back(v);
            const std::vector<Vertex>& ch = nodes_[v].children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
                stack.push_back(*it);
            }
        }
        return order;
    }

    Word yield() const {
        Word w;
        for (Vertex v : preorder()) {
            if (is_terminal(nodes_[v].label)) {
                w.push_back(std::get<TerminalSym>(nodes_[v].label).id);
            }
        }
        return w;
    }

    // Per vertex: index of its first terminal leaf in the yield and the number
    // of terminal leaves below it.
    std::vector<std::pair<std::size_t, std::size_t>> leaf_spans() const {
        std::vector<std::pair<std::size_t, std::size_t>> spans(nodes_.size(), {0, 0});
        std::size_t counter = 0;
        // Post-order accumulation over an explicit stack: (vertex, entered).
        std::vector<std::pair<Vertex, bool>> stack = {{0, false}};
        while (!stack.empty()) {
            auto [v, entered] = stack.back();
            stack.pop_back();
            if (!entered) {
                spans[v].first = counter;
                stack.push_back({v, true});
                const std::vector<Vertex>& ch = nodes_[v].children;
                for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
                    stack.push_back({*it, false});
                }
                if (is_terminal(nodes_[v].label)) {
                    ++counter;
                }
            } else {
                spans[v].second = counter - spans[v].first;
            }
        }
        return spans;
    }

    std::string vertex_path(Vertex v) const {
        std::vector<Vertex> chain;
        Vertex cur = v;
        while (true) {
            chain.push_back(cur);
            if (cur == 0) {
                break;
            }
            cur = nodes_.at(cur).parent;
        }
        std::string out = "0";
        for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
            Vertex parent = nodes_[*it].parent;
            const std::vector<Vertex>& ch = nodes_[parent].children;
            std::size_t idx = static_cast<std::size_t>(
                std::find(ch.begin(), ch.end(), *it) - ch.begin());
            out += '.';
            out += std::to_string(idx);
        }
        return out;
    }

private:
    std::vector<TreeNode> nodes_;
};

// Item counts never decrease when no production has an empty right-hand side;
// the only tolerated ε-production is for a start symbol that stays off all
// right-hand sides, so it can fire at most once, at the root.
inline void require_eps_safe(const Grammar& g) {
    bool has_eps = false;
    for (const Production& p : g.productions) {
        if (p.rhs.empty()) {
            if (p.lhs != g.start || p.pop_index) {
                throw ValidationError(
                    "search requires ε-productions to be restricted to the start symbol");
            }
            has_eps = true;
        }
    }
    if (!has_eps) {
        return;
    }
    for (const Production& p : g.productions) {
        for (const FormItem& item : p.rhs) {
            if (is_nonterminal(item) && std::get<NonterminalSym>(item).id == g.start) {
                throw ValidationError(
                    "search requires the start symbol to stay off right-hand sides when it has "
                    "an ε-production");
            }
        }
    }
}

namespace detail {

enum class ExpandMode { leftmost, all_positions };

// Breadth-first search over sentential forms with global deduplication.
// Item prunes at or above benign_item_cap are sound for ε-safe grammars
// (monotone item counts); prunes below it, depth prunes, and step aborts are
// recorded separately so callers can scope their claims.
class FormSearch {
public:
    FormSearch(const Grammar& g, const SearchBounds& b, ExpandMode mode,
               std::size_t benign_item_cap)
        : g_(g),
          bounds_(b),
          mode_(mode),
          item_cap_(std::min(b.max_items, benign_item_cap)),
          benign_cap_(benign_item_cap) {}

    void set_viable(std::function<bool(const SententialForm&)> fn) { viable_ = std::move(fn); }

    void run(const SententialForm& origin,
             const std::function<bool(const SententialForm&)>& visit) {
        if (origin.items.size() > item_cap_ || max_stack_depth(origin) > bounds_.max_index_depth ||
            (viable_ && !viable_(origin))) {
            return;
        }
        auto it = seen_.emplace(origin, std::nullopt).first;
        stats_.forms = 1;
        if (visit(it->first)) {
            return;
        }
        std::deque<const SententialForm*> queue = {&it->first};
        while (!queue.empty()) {
            const SententialForm* form = queue.front();
            queue.pop_front();
            if (!expand(*form, queue, visit)) {
                return;
            }
        }
    }

    const SearchStats& stats() const { return stats_; }

    bool reached(const SententialForm& form) const { return seen_.contains(form); }

    std::vector<RewriteStep> steps_to(const SententialForm& target) const {
        auto it = seen_.find(target);
        if (it == seen_.end()) {
            throw DerivationError("internal error: no derivation recorded for the target form");
        }
        std::vector<RewriteStep> steps;
        while (it->second) {
            steps.push_back(RewriteStep{it->second->position, it->second->production});
            it = seen_.find(*it->second->parent);
        }
        std::reverse(steps.begin(), steps.end());
        return steps;
    }

private:
    struct From {
        const SententialForm* parent;
        std::uint32_t position;
        std::uint32_t production;
    };

    bool expand(const SententialForm& form, std::deque<const SententialForm*>& queue,
                const std::function<bool(const SententialForm&)>& visit) {
        for (std::size_t pos = 0; pos < form.items.size(); ++pos) {
            if (!is_nonterminal(form.items[pos])) {
                continue;
            }
            const auto& nt = std::get<NonterminalSym>(form.items[pos]);
            for (std::uint32_t pi = 0; pi < g_.productions.size(); ++pi) {
                if (!production_applies(nt, g_.productions[pi])) {
                    continue;
                }
                if (stats_.steps >= bounds_.max_steps) {
                    stats_.aborted_steps = true;
                    return false;
                }
                ++stats_.steps;
                SententialForm next = apply_production(form, pos, g_.productions[pi]);
                if (next.items.size() > item_cap_) {
                    if (next.items.size() <= benign_cap_) {
                        stats_.pruned_items = true;
                    }
                    continue;
                }
                if (max_stack_depth(next) > bounds_.max_index_depth) {
                    stats_.pruned_depth = true;
                    continue;
                }
                if (viable_ && !viable_(next)) {
                    continue;
                }
                auto [it, fresh] = seen_.emplace(
                    std::move(next),
                    From{&form, static_cast<std::uint32_t>(pos), pi});
                if (!fresh) {
                    continue;
                }
                ++stats_.forms;
                queue.push_back(&it->first);
                if (visit(it->first)) {
                    return false;
                }
            }
            if (mode_ == ExpandMode::leftmost) {
                break;
            }
        }
        return true;
    }

    const Grammar& g_;
    SearchBounds bounds_;
    ExpandMode mode_;
    std::size_t item_cap_;
    std::size_t benign_cap_;
    std::function<bool(const SententialForm&)> viable_;
    std::map<SententialForm, std::optional<From>> seen_;
    SearchStats stats_;
};

inline bool member_viable(const SententialForm& form, const Word& w) {
    std::size_t n = form.items.size();
    std::size_t lead = 0;
    while (lead < n && is_terminal(form.items[lead])) {
        ++lead;
    }
    if (lead > w.size()) {
        return false;
    }
    for (std::size_t i = 0; i < lead; ++i) {
        if (std::get<TerminalSym>(form.items[i]).id != w[i]) {
            return false;
        }
    }
    if (lead == n) {
        return n == w.size();
    }
    std::size_t trail = 0;
    while (is_terminal(form.items[n - 1 - trail])) {
        ++trail;
    }
    if (lead + trail > w.size()) {
        return false;
    }
    for (std::size_t i = 0; i < trail; ++i) {
        if (std::get<TerminalSym>(form.items[n - 1 - i]).id != w[w.size() - 1 - i]) {
            return false;
        }
    }
    std::size_t j = 0;
    for (const FormItem& item : form.items) {
        if (!is_terminal(item)) {
            continue;
        }
        SymbolId t = std::get<TerminalSym>(item).id;
        while (j < w.size() && w[j] != t) {
            ++j;
        }
        if (j == w.size()) {
            return false;
        }
        ++j;
    }
    return true;
}

}  // namespace detail

inline DerivationTree tree_from_steps(const Grammar& g, const std::vector<RewriteStep>& steps) {
    DerivationTree tree{FormItem(NonterminalSym{g.start, {}})};
    std::vector<Vertex> frontier = {tree.root()};
    for (const RewriteStep& step : steps) {
        const Production& p = g.productions.at(step.production);
        Vertex v = frontier.at(step.position);
        std::vector<FormItem> children =
            expand_nonterminal(std::get<NonterminalSym>(tree.node(v).label), p);
        tree.set_production(v, step.production);
        std::vector<Vertex> added;
        added.reserve(children.size());
        for (FormItem& c : children) {
            added.push_back(tree.add_child(v, std::move(c)));
        }
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(step.position));
        frontier.insert(frontier.begin() + static_cast<std::ptrdiff_t>(step.position),
                        added.begin(), added.end());
    }
    return tree;
}

struct EnumerationResult {
    std::set<Word> words;
    bool complete = false;
    SearchStats stats;
};

inline EnumerationResult enumerate_words(const Grammar& g, std::size_t max_len,
                                         const SearchBounds& b) {
    g.validate();
    require_eps_safe(g);
    EnumerationResult out;
    detail::FormSearch search(g, b, detail::ExpandMode::leftmost,
                              std::max<std::size_t>(max_len, 1));
    search.run(start_form(g), [&](const SententialForm& form) {
        if (form.ground()) {
            Word w = project_word(form);
            if (w.size() <= max_len) {
                out.words.insert(std::move(w));
            }
        }
        return false;
    });
    out.stats = search.stats();
    out.complete =
        !out.stats.pruned_depth && !out.stats.pruned_items && !out.stats.aborted_steps;
    return out;
}

inline EnumerationResult enumerate_words(const Grammar& g, std::size_t max_len) {
    return enumerate_words(g, max_len, SearchBounds::for_word_length(max_len, g));
}

enum class Membership { yes, no_within_bounds, unknown };

struct MembershipResult {
    Membership status = Membership::unknown;
    std::optional<DerivationTree> tree;
    SearchStats stats;
};

// Exhaustive up to the given bounds: "no_within_bounds" claims exactly that
// no derivation exists with at most |w| items and the given index depth;
// "unknown" means the search itself was cut short (step budget, or an item
// cap below |w|).
inline MembershipResult is_member(const Grammar& g, const Word& w, const SearchBounds& b) {
    g.validate();
    require_eps_safe(g);
    for (SymbolId t : w) {
        if (t >= g.terminal_names.size()) {
            throw Error("word refers to an undeclared terminal id");
        }
    }
    SententialForm target;
    target.items.reserve(w.size());
    for (SymbolId t : w) {
        target.items.push_back(TerminalSym{t});
    }

    detail::FormSearch search(g, b, detail::ExpandMode::leftmost,
                              std::max<std::size_t>(w.size(), 1));
    search.set_viable(
        [&w](const SententialForm& form) { return detail::member_viable(form, w); });
    search.run(start_form(g),
               [&target](const SententialForm& form) { return form == target; });

    MembershipResult out;
    out.stats = search.stats();
    if (search.reached(target)) {
        out.status = Membership::yes;
        out.tree = tree_from_steps(g, search.steps_to(target));
        return out;
    }
    out.status = (out.stats.aborted_steps || out.stats.pruned_items) ? Membership::unknown
                                                                     : Membership::no_within_bounds;
    return out;
}

inline MembershipResult is_member(const Grammar& g, const Word& w) {
    return is_member(g, w, SearchBounds::for_word_length(w.size(), g));
}

inline Word validate_tree(const Grammar& g, const DerivationTree& t) {
    const TreeNode& root = t.node(t.root());
    if (!is_nonterminal(root.label) || std::get<NonterminalSym>(root.label).id != g.start ||
        !std::get<NonterminalSym>(root.label).stack.empty()) {
        throw DerivationError("root label must be the start symbol with an empty index stack");
    }
    Word w;
    for (Vertex v : t.preorder()) {
        const TreeNode& node = t.node(v);
        if (is_terminal(node.label)) {
            if (node.production || !node.children.empty()) {
                throw DerivationError("terminal vertex " + t.vertex_path(v) + " cannot expand");
            }
            w.push_back(std::get<TerminalSym>(node.label).id);
            continue;
        }
        if (!node.production) {
            throw DerivationError("nonterminal vertex " + t.vertex_path(v) +
                                  " has no production");
        }
        if (*node.production >= g.productions.size()) {
            throw DerivationError("vertex " + t.vertex_path(v) +
                                  " references an unknown production");
        }
        std::vector<FormItem> expected;
        try {
            expected = expand_nonterminal(std::get<NonterminalSym>(node.label),
                                          g.productions[*node.production]);
        } catch (const DerivationError& e) {
            throw DerivationError("vertex " + t.vertex_path(v) + ": " + e.what());
        }
        if (expected.size() != node.children.size()) {
            throw DerivationError("vertex " + t.vertex_path(v) +
                                  " has a child count inconsistent with its production");
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (t.node(node.children[i]).label != expected[i]) {
                throw DerivationError("child " + std::to_string(i) + " of vertex " +
                                      t.vertex_path(v) + " does not match its production");
            }
        }
    }
    return w;
}

struct LanguageComparison {
    bool equal = false;
    std::set<Word> only_left;
    std::set<Word> only_right;
    bool left_complete = false;
    bool right_complete = false;
};

inline LanguageComparison compare_languages(const Grammar& left, const Grammar& right,
                                            std::size_t max_len) {
    if (left.terminal_names != right.terminal_names) {
        throw Error("language comparison requires identical terminal alphabets");
    }
    EnumerationResult a = enumerate_words(left, max_len);
    EnumerationResult b = enumerate_words(right, max_len);
    LanguageComparison out;
    out.left_complete = a.complete;
    out.right_complete = b.complete;
    std::set_difference(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                        std::inserter(out.only_left, out.only_left.end()));
    std::set_difference(b.words.begin(), b.words.end(), a.words.begin(), a.words.end(),
                        std::inserter(out.only_right, out.only_right.end()));
    out.equal = out.only_left.empty() && out.only_right.empty();
    return out;
}

}  // namespace shrinklab
