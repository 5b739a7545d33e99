#pragma once

// Independent dense oracles and seeded instance generators used by the unit
// and acceptance suites. Everything here deliberately avoids the library's
// sparse solve / complement code paths: solves go through Eigen's dense LU,
// spectra through the dense eigensolver, and Kendall's tau through the naive
// O(n^2) pair count.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cokatz/graph.hpp"
#include "cokatz/rng.hpp"
#include "cokatz/sparse.hpp"

namespace oracles {

using cokatz::Edge;
using cokatz::Graph;
using cokatz::Index;
using cokatz::LoopPolicy;
using cokatz::SparseMatrix;
using cokatz::SplitMix64;

inline Eigen::MatrixXd to_eigen(const SparseMatrix& m) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m.n_rows, m.n_cols);
    for (Index i = 0; i < m.n_rows; ++i) {
        for (Index k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
            dense(i, m.col_indices[k]) = m.values[k];
        }
    }
    return dense;
}

/// (I - tA)^{-1} e by dense partial-pivoted LU.
inline std::vector<double> dense_katz(const SparseMatrix& a, double t) {
    const Index n = a.n_rows;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - t * to_eigen(a);
    Eigen::VectorXd x = m.partialPivLu().solve(Eigen::VectorXd::Ones(n));
    return {x.data(), x.data() + n};
}

/// (I + sB)^{-1} e by dense LU.
inline std::vector<double> dense_shifted_solve(const SparseMatrix& b, double s) {
    const Index n = b.n_rows;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + s * to_eigen(b);
    Eigen::VectorXd x = m.partialPivLu().solve(Eigen::VectorXd::Ones(n));
    return {x.data(), x.data() + n};
}

inline double dense_rho(const SparseMatrix& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a), /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Perron vector (eigenvector of the largest-modulus eigenvalue, which is
/// real and nonnegative for these matrices), normalized to unit 1-norm.
inline std::vector<double> dense_perron(const SparseMatrix& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
    const auto& values = solver.eigenvalues();
    Index best = 0;
    for (Index i = 1; i < values.size(); ++i) {
        if (std::abs(values[i]) > std::abs(values[best])) best = i;
    }
    Eigen::VectorXcd vec = solver.eigenvectors().col(best);
    Eigen::VectorXd real = vec.real();
    double total = real.sum();
    if (total == 0.0) throw std::runtime_error("degenerate Perron vector");
    real /= total;
    return {real.data(), real.data() + real.size()};
}

/// Tie-adjusted tau-b by brute force over all pairs.
inline double kendall_tau_pairwise(std::span<const double> a, std::span<const double> b) {
    const long long n = static_cast<long long>(a.size());
    long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0, ties_both = 0;
    for (long long i = 0; i < n; ++i) {
        for (long long j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) {
                ++ties_both;
            } else if (da == 0.0) {
                ++ties_a;
            } else if (db == 0.0) {
                ++ties_b;
            } else if ((da > 0.0) == (db > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const long long n0 = n * (n - 1) / 2;
    const long long denom_a = n0 - (ties_a + ties_both);
    const long long denom_b = n0 - (ties_b + ties_both);
    if (denom_a == 0 || denom_b == 0) throw std::invalid_argument("tau undefined");
    return static_cast<double>(concordant - discordant) /
           std::sqrt(static_cast<double>(denom_a) * static_cast<double>(denom_b));
}

/// Uniformly random directed graph; each admissible cell is present with
/// probability density. Weighted graphs draw weights uniform on (0, 1].
inline Graph random_graph(Index n, double density, LoopPolicy policy, bool weighted,
                          std::uint64_t seed, std::uint64_t stream = 0) {
    SplitMix64 rng(seed, stream);
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (policy == LoopPolicy::loopless && i == j) continue;
            if (rng.uniform01() < density) {
                double w = weighted ? 1.0 - rng.uniform01() : 1.0;  // (0, 1]
                edges.push_back({i, j, w});
            }
        }
    }
    if (edges.empty()) {
        Index j = n > 1 ? 1 : 0;
        if (policy == LoopPolicy::loopless && n == 1)
            throw std::invalid_argument("cannot build a loopless single-node edge");
        edges.push_back({0, j, 1.0});
    }
    return build_graph(n, edges, policy, /*directed=*/true, weighted);
}

inline bool strongly_connected(const SparseMatrix& adj) {
    const Index n = adj.n_rows;
    auto reaches_all = [n](const std::vector<std::vector<Index>>& out) {
        std::vector<char> seen(n, 0);
        std::vector<Index> stack{0};
        seen[0] = 1;
        Index count = 1;
        while (!stack.empty()) {
            Index v = stack.back();
            stack.pop_back();
            for (Index w : out[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n;
    };
    std::vector<std::vector<Index>> fwd(n), bwd(n);
    for (Index i = 0; i < n; ++i) {
        for (Index k = adj.row_offsets[i]; k < adj.row_offsets[i + 1]; ++k) {
            fwd[i].push_back(adj.col_indices[k]);
            bwd[adj.col_indices[k]].push_back(i);
        }
    }
    return reaches_all(fwd) && reaches_all(bwd);
}

}  // namespace oracles
