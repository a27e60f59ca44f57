#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shrinklab/subword.hpp"

// Independent reimplementations used to cross-check the subword module.

template <typename Sym>
bool dp_divides(const std::vector<Sym>& v, const std::vector<Sym>& w) {
    std::vector<char> reach(v.size() + 1, 0);
    reach[0] = 1;
    for (const Sym& t : w) {
        for (std::size_t i = v.size(); i-- > 0;) {
            if (reach[i] && v[i] == t) {
                reach[i + 1] = 1;
            }
        }
    }
    return reach[v.size()];
}

template <typename Sym>
std::vector<shrinklab::Embedding> all_embeddings(const std::vector<Sym>& v,
                                                 const std::vector<Sym>& w) {
    std::vector<shrinklab::Embedding> out;
    shrinklab::Embedding current;
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        if (i == v.size()) {
            out.push_back(current);
            return;
        }
        for (std::size_t p = j; p < w.size(); ++p) {
            if (w[p] == v[i]) {
                current.push_back(p);
                self(self, i + 1, p + 1);
                current.pop_back();
            }
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline bool embedding_covers(const shrinklab::Embedding& e, const std::set<std::size_t>& required) {
    for (std::size_t r : required) {
        bool found = false;
        for (std::size_t p : e) {
            if (p == r) {
                found = true;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

// First failure of the cover property, if any: every y outside the cover must,
// for every choice of m distinguished positions, have a covering divisor in
// the cover other than y itself.
template <typename Sym>
std::optional<std::string> cover_failure(const std::set<std::vector<Sym>>& ys,
                                         const std::set<std::vector<Sym>>& cover, std::size_t m) {
    for (const std::vector<Sym>& y : ys) {
        if (cover.contains(y) || y.size() < m) {
            continue;
        }
        std::vector<std::size_t> choice;
        std::optional<std::string> failure;
        auto rec = [&](auto&& self, std::size_t next) -> void {
            if (failure) {
                return;
            }
            if (choice.size() == m) {
                std::set<std::size_t> required(choice.begin(), choice.end());
                for (const std::vector<Sym>& x : cover) {
                    if (x != y && shrinklab::divides_covering(x, y, required)) {
                        return;
                    }
                }
                std::ostringstream msg;
                msg << "word of length " << y.size() << " with distinguished positions {";
                for (std::size_t p : choice) {
                    msg << ' ' << p;
                }
                msg << " } has no covering divisor";
                failure = msg.str();
                return;
            }
            for (std::size_t p = next; p < y.size(); ++p) {
                choice.push_back(p);
                self(self, p + 1);
                choice.pop_back();
            }
        };
        rec(rec, 0);
        if (failure) {
            return failure;
        }
    }
    return std::nullopt;
}
