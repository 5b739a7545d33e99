#pragma once

#include <span>
#include <vector>

#include "cokatz/sparse.hpp"

namespace cokatz {

/// Deterministic ranking of a score vector: descending score, ties broken by
/// ascending node id. Two scores tie when they differ by at most
/// tie_rel_tol * max score.
struct Ranking {
    std::vector<Index> order;                  // permutation of 0..n-1
    std::vector<double> scores;                // the input
    std::vector<std::vector<Index>> tie_groups;  // only groups of size >= 2
};

inline constexpr double kTieRelTol = 1e-12;

/// Throws std::invalid_argument on NaN/Inf entries.
Ranking rank(std::span<const double> scores, double tie_rel_tol = kTieRelTol);

/// Tie-adjusted Kendall tau (tau-b) in [-1, 1], O(n log n) by merge counting.
/// Ties are exact score equalities. Throws on length mismatch, n < 2, or a
/// constant vector on either side (tau undefined).
double kendall_tau(std::span<const double> a, std::span<const double> b);

/// True iff the two score vectors produce the same order and the same tie
/// structure.
bool same_ranking(std::span<const double> a, std::span<const double> b,
                  double tie_rel_tol = kTieRelTol);

}  // namespace cokatz
