#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cokatz/graph.hpp"
#include "cokatz/sparse.hpp"

namespace cokatz {

enum class SolveMethod {
    automatic,             // direct up to a factorization budget, iterative above
    direct_factorization,  // sparse LU with partial pivoting
    iterative,             // BiCGSTAB
};

struct SolveOptions {
    SolveMethod method = SolveMethod::automatic;
    double tol = 1e-12;   // relative residual bound, the contract of every solve
    Index max_iter = 0;   // 0 means 10 * n
};

struct SpectralEstimate {
    double rho = 0.0;
    Index iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

/// y = M * v for CSR M.
std::vector<double> spmv(const SparseMatrix& m, std::span<const double> v);

/// y = A * v through the view, computed as e*(u^T v) + shift*v - B*v in
/// O(n + nnz(B)).
std::vector<double> implicit_matvec(const ComplementView& view, std::span<const double> v);

/// Solves (I + s*B) x = rhs to a relative residual <= opts.tol. Throws
/// std::runtime_error on a (numerically) singular system or when the
/// iterative method stalls.
std::vector<double> solve_shifted(const SparseMatrix& b, double s, std::span<const double> rhs,
                                  const SolveOptions& opts = {});

using MatVec = std::function<std::vector<double>(std::span<const double>)>;

/// Power iteration for the spectral radius of a nonnegative operator given
/// only its action. Converged when successive Rayleigh estimates differ by
/// <= tol * max(1, estimate); on max_iter the best estimate is returned with
/// converged = false and the caller decides.
SpectralEstimate spectral_radius(const MatVec& apply, Index n, double tol = 1e-12,
                                 Index max_iter = 10000, std::uint64_t seed = 0);

SpectralEstimate spectral_radius(const SparseMatrix& m, double tol = 1e-12,
                                 Index max_iter = 10000, std::uint64_t seed = 0);

SpectralEstimate spectral_radius(const ComplementView& view, double tol = 1e-12,
                                 Index max_iter = 10000, std::uint64_t seed = 0);

}  // namespace cokatz
