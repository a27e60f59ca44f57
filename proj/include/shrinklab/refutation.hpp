#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shrinklab {

enum class RefutationStatus { no_valid_decomposition, decomposition_found, inconclusive };

// A satisfying factorization: for every m-subset of factor indices
// (lexicographic order), the kept index set whose concatenation lies in the
// sample.
struct Decomposition {
    std::vector<std::string> factors;
    std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> witnesses;
};

struct RefutationVerdict {
    RefutationStatus status = RefutationStatus::no_valid_decomposition;
    std::optional<Decomposition> decomposition;
    std::size_t factorizations = 0;
    std::size_t subproducts = 0;
};

namespace detail {

inline void compositions_of(std::size_t n, std::size_t r,
                            const std::function<bool(const std::vector<std::size_t>&)>& emit) {
    std::vector<std::size_t> parts(r);
    auto rec = [&](auto&& self, std::size_t index, std::size_t remaining) -> bool {
        if (index + 1 == r) {
            parts[index] = remaining;
            return emit(parts);
        }
        for (std::size_t first = 1; remaining >= first + (r - index - 1); ++first) {
            parts[index] = first;
            if (!self(self, index + 1, remaining - first)) {
                return false;
            }
        }
        return true;
    };
    if (r >= 1 && n >= r) {
        rec(rec, 0, n);
    }
}

}  // namespace detail

// Exhaustively test whether w admits a factorization w = w_1 ... w_r with
// m < r <= k such that every m-subset of factors extends to a proper
// subproduct inside the sample. "No valid decomposition" backs a
// non-indexedness argument for this k when the sample stands for a length
// section of the language. Exponential by design; meant for short words.
inline RefutationVerdict refute_decomposition(const std::set<std::string>& sample,
                                              const std::string& w, std::size_t k, std::size_t m,
                                              std::size_t work_cap = 50000000) {
    if (m == 0) {
        throw std::invalid_argument("the subset size m must be positive");
    }
    if (!sample.contains(w)) {
        throw std::invalid_argument("the word must belong to the sample");
    }

    RefutationVerdict verdict;
    std::size_t r_max = std::min(k, w.size());
    bool capped = false;

    for (std::size_t r = m + 1; r <= r_max && !capped &&
                                verdict.status == RefutationStatus::no_valid_decomposition;
         ++r) {
        if (r > 63) {
            capped = true;
            break;
        }
        detail::compositions_of(w.size(), r, [&](const std::vector<std::size_t>& parts) {
            if (verdict.factorizations >= work_cap) {
                capped = true;
                return false;
            }
            ++verdict.factorizations;

            std::vector<std::string> factors(r);
            std::size_t offset = 0;
            for (std::size_t i = 0; i < r; ++i) {
                factors[i] = w.substr(offset, parts[i]);
                offset += parts[i];
            }

            std::vector<std::uint64_t> good;
            const std::uint64_t full = (std::uint64_t{1} << r) - 1;
            for (std::uint64_t mask = 1; mask < full; ++mask) {
                if (static_cast<std::size_t>(std::popcount(mask)) < m) {
                    continue;
                }
                if (verdict.subproducts >= work_cap) {
                    capped = true;
                    return false;
                }
                ++verdict.subproducts;
                std::string sub;
                for (std::size_t i = 0; i < r; ++i) {
                    if (mask & (std::uint64_t{1} << i)) {
                        sub += factors[i];
                    }
                }
                if (sample.contains(sub)) {
                    good.push_back(mask);
                }
            }

            // Every m-subset must sit inside some good mask; record the
            // smallest witness (fewest kept factors, then lowest indices).
            std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> witnesses;
            std::vector<std::size_t> subset(m);
            bool all_covered = true;
            auto cover = [&](auto&& self, std::size_t index, std::size_t next) -> bool {
                if (index == m) {
                    std::uint64_t d = 0;
                    for (std::size_t i : subset) {
                        d |= std::uint64_t{1} << i;
                    }
                    std::optional<std::uint64_t> best;
                    for (std::uint64_t s : good) {
                        if ((s & d) != d) {
                            continue;
                        }
                        if (!best || std::popcount(s) < std::popcount(*best) ||
                            (std::popcount(s) == std::popcount(*best) && s < *best)) {
                            best = s;
                        }
                    }
                    if (!best) {
                        return false;
                    }
                    std::set<std::size_t> kept;
                    for (std::size_t i = 0; i < r; ++i) {
                        if (*best & (std::uint64_t{1} << i)) {
                            kept.insert(i);
                        }
                    }
                    witnesses.emplace_back(std::set<std::size_t>(subset.begin(), subset.end()),
                                           std::move(kept));
                    return true;
                }
                for (std::size_t i = next; i + (m - index - 1) < r; ++i) {
                    subset[index] = i;
                    if (!self(self, index + 1, i + 1)) {
                        return false;
                    }
                }
                return true;
            };
            all_covered = cover(cover, 0, 0);

            if (all_covered) {
                verdict.status = RefutationStatus::decomposition_found;
                verdict.decomposition = Decomposition{std::move(factors), std::move(witnesses)};
                return false;
            }
            return true;
        });
    }

    if (capped && verdict.status != RefutationStatus::decomposition_found) {
        verdict.status = RefutationStatus::inconclusive;
        verdict.decomposition.reset();
    }
    return verdict;
}

}  // namespace shrinklab
