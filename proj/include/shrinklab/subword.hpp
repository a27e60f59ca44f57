#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace shrinklab {

// Divisibility order: v divides w when v is a subsequence of w, symbols
// compared whole. An embedding lists one target position per source symbol,
// strictly increasing.
using Embedding = std::vector<std::size_t>;

template <typename Sym>
std::optional<Embedding> divides(const std::vector<Sym>& v, const std::vector<Sym>& w) {
    Embedding positions;
    positions.reserve(v.size());
    std::size_t j = 0;
    for (const Sym& s : v) {
        while (j < w.size() && !(w[j] == s)) {
            ++j;
        }
        if (j == w.size()) {
            return std::nullopt;
        }
        positions.push_back(j++);
    }
    return positions;
}

// Embedding of v into w whose positions include all of required. Feasibility
// table ok[i][j]: v[i..) embeds into w[j..) without skipping any required
// position at or after j. The witness is the match-first walk through the
// feasible region, so it is canonical.
template <typename Sym>
std::optional<Embedding> divides_covering(const std::vector<Sym>& v, const std::vector<Sym>& w,
                                          const std::set<std::size_t>& required) {
    for (std::size_t r : required) {
        if (r >= w.size()) {
            throw std::invalid_argument("required position beyond the target word");
        }
    }
    const std::size_t n = v.size();
    const std::size_t k = w.size();
    std::vector<std::vector<char>> ok(n + 1, std::vector<char>(k + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        ok[i][k] = (i == n);
    }
    for (std::size_t jj = k; jj-- > 0;) {
        bool skippable = !required.contains(jj);
        for (std::size_t i = 0; i <= n; ++i) {
            bool good = skippable && ok[i][jj + 1];
            if (!good && i < n && v[i] == w[jj]) {
                good = ok[i + 1][jj + 1];
            }
            ok[i][jj] = good;
        }
    }
    if (!ok[0][0]) {
        return std::nullopt;
    }
    Embedding positions;
    positions.reserve(n);
    std::size_t i = 0;
    for (std::size_t jj = 0; jj < k && i < n; ++jj) {
        if (v[i] == w[jj] && ok[i + 1][jj + 1]) {
            positions.push_back(jj);
            ++i;
        }
    }
    return positions;
}

template <typename Sym>
bool properly_divides(const std::vector<Sym>& v, const std::vector<Sym>& w) {
    return v.size() < w.size() && divides(v, w).has_value();
}

// Minimal elements under divisibility. Processing by nondecreasing length
// makes testing against the minima found so far sufficient: any divisor of a
// candidate is itself divisible by an earlier minimum.
template <typename Sym>
std::set<std::vector<Sym>> minimal_elements(const std::set<std::vector<Sym>>& ys) {
    std::vector<std::vector<Sym>> sorted(ys.begin(), ys.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const std::vector<Sym>& a, const std::vector<Sym>& b) {
                         return a.size() < b.size();
                     });
    std::vector<std::vector<Sym>> minima;
    for (const std::vector<Sym>& y : sorted) {
        bool dominated = false;
        for (const std::vector<Sym>& x : minima) {
            if (divides(x, y)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            minima.push_back(y);
        }
    }
    return std::set<std::vector<Sym>>(minima.begin(), minima.end());
}

// A symbol with a mark; copy 0 is unmarked, copies 1..m are the disjoint
// marked alphabets.
template <typename Sym>
struct Marked {
    Sym sym{};
    std::size_t copy = 0;

    auto operator<=>(const Marked&) const = default;
};

// The finite cover construction: mark every word of length at least m in all
// ways that use each of the m copies exactly once, take the minimal marked
// words, project the marks away, and absorb all words shorter than m. The
// result covers every choice of m distinguished positions in every input.
template <typename Sym>
std::set<std::vector<Sym>> distinguished_cover(const std::set<std::vector<Sym>>& ys,
                                               std::size_t m) {
    if (m == 0) {
        throw std::invalid_argument("the number of distinguished positions must be positive");
    }
    std::set<std::vector<Sym>> out;
    std::set<std::vector<Marked<Sym>>> marked_words;
    std::vector<std::size_t> assignment;
    for (const std::vector<Sym>& y : ys) {
        if (y.size() < m) {
            out.insert(y);
            continue;
        }
        std::vector<Marked<Sym>> base;
        base.reserve(y.size());
        for (const Sym& s : y) {
            base.push_back(Marked<Sym>{s, 0});
        }
        assignment.clear();
        auto emit = [&](auto&& self) -> void {
            if (assignment.size() == m) {
                std::vector<Marked<Sym>> word = base;
                for (std::size_t copy = 0; copy < m; ++copy) {
                    word[assignment[copy]].copy = copy + 1;
                }
                marked_words.insert(std::move(word));
                return;
            }
            for (std::size_t pos = 0; pos < y.size(); ++pos) {
                if (std::find(assignment.begin(), assignment.end(), pos) != assignment.end()) {
                    continue;
                }
                assignment.push_back(pos);
                self(self);
                assignment.pop_back();
            }
        };
        emit(emit);
    }
    for (const std::vector<Marked<Sym>>& x : minimal_elements(marked_words)) {
        std::vector<Sym> projected;
        projected.reserve(x.size());
        for (const Marked<Sym>& s : x) {
            projected.push_back(s.sym);
        }
        out.insert(std::move(projected));
    }
    return out;
}

}  // namespace shrinklab
