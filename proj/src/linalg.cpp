#include "cokatz/linalg.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cokatz/rng.hpp"

namespace cokatz {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Eigen::SparseMatrix<double> shifted_identity(const SparseMatrix& b, double s) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(b.nnz() + b.n_rows));
    for (Index i = 0; i < b.n_rows; ++i) {
        for (Index k = b.row_offsets[i]; k < b.row_offsets[i + 1]; ++k) {
            triplets.emplace_back(static_cast<int>(i), static_cast<int>(b.col_indices[k]),
                                  s * b.values[k]);
        }
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
    }
    Eigen::SparseMatrix<double> m(static_cast<int>(b.n_rows), static_cast<int>(b.n_cols));
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

// Residual of (I + sB) x = rhs through the CSR kernel, independent of the
// Eigen representation used by the factorization.
std::vector<double> residual_vec(const SparseMatrix& b, double s, std::span<const double> rhs,
                                 std::span<const double> x) {
    std::vector<double> r = spmv(b, x);
    for (Index i = 0; i < b.n_rows; ++i) r[i] = rhs[i] - (x[i] + s * r[i]);
    return r;
}

}  // namespace

std::vector<double> spmv(const SparseMatrix& m, std::span<const double> v) {
    if (static_cast<Index>(v.size()) != m.n_cols)
        throw std::invalid_argument("spmv dimension mismatch");
    std::vector<double> y(m.n_rows, 0.0);
    for (Index i = 0; i < m.n_rows; ++i) {
        double acc = 0.0;
        for (Index k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
            acc += m.values[k] * v[m.col_indices[k]];
        }
        y[i] = acc;
    }
    return y;
}

std::vector<double> implicit_matvec(const ComplementView& view, std::span<const double> v) {
    if (static_cast<Index>(v.size()) != view.n)
        throw std::invalid_argument("implicit_matvec dimension mismatch");
    double uv = 0.0;
    for (Index i = 0; i < view.n; ++i) uv += view.rank_one_right[i] * v[i];
    std::vector<double> y = spmv(view.sparse_part, v);
    for (Index i = 0; i < view.n; ++i) {
        y[i] = uv + view.diagonal_shift * v[i] - y[i];
    }
    return y;
}

std::vector<double> solve_shifted(const SparseMatrix& b, double s, std::span<const double> rhs,
                                  const SolveOptions& opts) {
    if (b.n_rows != b.n_cols) throw std::invalid_argument("solve_shifted needs a square matrix");
    if (static_cast<Index>(rhs.size()) != b.n_rows)
        throw std::invalid_argument("solve_shifted rhs dimension mismatch");
    const Index n = b.n_rows;
    const Index max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;
    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) return std::vector<double>(n, 0.0);

    SolveMethod method = opts.method;
    if (method == SolveMethod::automatic) {
        method = (b.nnz() + n <= 100000) ? SolveMethod::direct_factorization : SolveMethod::iterative;
    }

    Eigen::SparseMatrix<double> m = shifted_identity(b, s);
    Eigen::Map<const Eigen::VectorXd> rhs_map(rhs.data(), n);
    Eigen::VectorXd x;

    if (method == SolveMethod::direct_factorization) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(m);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("solve_shifted: singular or numerically singular system");
        x = lu.solve(rhs_map);
        // Iterative refinement pushes the residual to the contract even for
        // ill-conditioned shifts (t close to the convergence boundary).
        for (int pass = 0; pass < 4; ++pass) {
            std::vector<double> r = residual_vec(b, s, rhs, {x.data(), static_cast<std::size_t>(n)});
            if (norm2(r) <= opts.tol * rhs_norm) break;
            Eigen::Map<const Eigen::VectorXd> r_map(r.data(), n);
            x += lu.solve(r_map);
        }
    } else {
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double>> solver;
        solver.setTolerance(opts.tol * 0.5);
        solver.setMaxIterations(max_iter);
        solver.compute(m);
        x = solver.solveWithGuess(rhs_map, rhs_map);
        if (solver.info() == Eigen::NumericalIssue)
            throw std::runtime_error("solve_shifted: singular or numerically singular system");
    }

    std::vector<double> result(x.data(), x.data() + n);
    std::vector<double> r = residual_vec(b, s, rhs, result);
    if (!(norm2(r) <= opts.tol * rhs_norm)) {
        throw std::runtime_error(method == SolveMethod::iterative
                                     ? "solve_shifted: no convergence within the iteration cap"
                                     : "solve_shifted: residual bound not met (numerically singular)");
    }
    return result;
}

SpectralEstimate spectral_radius(const MatVec& apply, Index n, double tol, Index max_iter,
                                 std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("spectral_radius needs n >= 1");
    if (tol <= 0.0 || max_iter < 1) throw std::invalid_argument("spectral_radius: bad tol/max_iter");

    // sigma = ||A e||_inf is the max row sum for a nonnegative operator, an
    // upper bound on rho. Iterating on A + sigma I keeps the dominant
    // eigenvalue unique even for periodic (e.g. bipartite) patterns, where
    // the plain Rayleigh estimate stalls at a wrong value.
    std::vector<double> ones(n, 1.0);
    std::vector<double> row_sums = apply(ones);
    double sigma = 0.0;
    for (double r : row_sums) sigma = std::max(sigma, std::abs(r));
    if (sigma == 0.0) return {0.0, 0, true, 0.0};

    SplitMix64 rng(seed);
    std::vector<double> v(n);
    for (Index i = 0; i < n; ++i) v[i] = 1.0 / static_cast<double>(n) + 1e-3 * rng.uniform01();
    double nv = norm2(v);
    for (double& x : v) x /= nv;

    double prev = std::numeric_limits<double>::quiet_NaN();
    double est = 0.0;
    double residual = 0.0;
    for (Index k = 1; k <= max_iter; ++k) {
        std::vector<double> w = apply(v);
        for (Index i = 0; i < n; ++i) w[i] += sigma * v[i];
        double rayleigh_shifted = 0.0;
        for (Index i = 0; i < n; ++i) rayleigh_shifted += v[i] * w[i];
        est = rayleigh_shifted - sigma;
        double res = 0.0;
        for (Index i = 0; i < n; ++i) {
            double d = w[i] - rayleigh_shifted * v[i];
            res += d * d;
        }
        residual = std::sqrt(res);
        if (k >= 2 && std::abs(est - prev) <= tol * std::max(1.0, std::abs(est))) {
            return {std::max(est, 0.0), k, true, residual};
        }
        prev = est;
        double nw = norm2(w);
        for (Index i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    return {std::max(est, 0.0), max_iter, false, residual};
}

SpectralEstimate spectral_radius(const SparseMatrix& m, double tol, Index max_iter,
                                 std::uint64_t seed) {
    if (m.n_rows != m.n_cols) throw std::invalid_argument("spectral_radius needs a square matrix");
    return spectral_radius([&m](std::span<const double> v) { return spmv(m, v); }, m.n_rows, tol,
                           max_iter, seed);
}

SpectralEstimate spectral_radius(const ComplementView& view, double tol, Index max_iter,
                                 std::uint64_t seed) {
    return spectral_radius([&view](std::span<const double> v) { return implicit_matvec(view, v); },
                           view.n, tol, max_iter, seed);
}

}  // namespace cokatz
