#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cokatz/graph.hpp"
#include "cokatz/katz.hpp"

namespace cokatz {

struct ThresholdedComplement {
    SparseMatrix b0;
    double epsilon = 0.0;
    Index dropped_count = 0;
    double density_before = 0.0;  // nnz / n^2
    double density_after = 0.0;
};

enum class Verdict { certified, uncertified };

/// Everything Theorem-style exact-recovery certification produces. The
/// verdict is certified iff the spectral bound and the c-vector condition
/// both hold; the e-vector condition implies the c-vector one.
struct SufficiencyReport {
    double epsilon = 0.0;
    double x = 0.0;  // min_{i != j} |w_i - w_j| / max_i w_i
    std::vector<double> c;
    double cTw = 0.0;
    double eTw = 0.0;
    double rhs_sufficient1 = 0.0;  // x / (t (c^T w) (1 + x)), +inf when c^T w = 0
    double rhs_sufficient3 = 0.0;  // x / (t (e^T w) (1 + x))
    bool rho_bound_ok = false;     // t < 1/rho(A + eps e c^T)
    bool cond_c_ok = false;
    bool cond_e_ok = false;
    Verdict verdict = Verdict::uncertified;
};

struct CheckOptions {
    SolveOptions solve;
    double spectral_tol = 1e-10;
    Index spectral_max_iter = 20000;
    std::uint64_t seed = 0;
    Index max_exact_n = 5000;  // refuse to certify above this size
};

/// Entries <= epsilon are removed (B0 = B above epsilon, 0 otherwise).
ThresholdedComplement sparsify(const SparseMatrix& b, double epsilon);

/// c_j = eps^{-1} max_i (B - B0)_{ij}; 0 <= c <= e.
std::vector<double> defect_vector(const SparseMatrix& b, const SparseMatrix& b0, double epsilon);

/// Gap ratio of a positive score vector; zero iff two components are equal.
double gap_ratio(std::span<const double> w);

/// Exact-recovery certification for the thresholded complement B0 of the
/// weighted graph g. The exact Katz vector w is computed at full precision
/// (complement route when B is the sparser side, direct sparse solve
/// otherwise) and refused above opts.max_exact_n.
SufficiencyReport check_sufficient(const Graph& g, const SparseMatrix& b, const SparseMatrix& b0,
                                   double epsilon, double t, LoopPolicy variant,
                                   const CheckOptions& opts = {});

/// Approximate Katz ranking from the thresholded complement. When the
/// matching SufficiencyReport is certified the ranking equals the exact one.
/// t is validated against the view built from B0 (that dense side is
/// A + eps*C >= A, so the bound is conservative).
CentralityResult katz_thresholded(const SparseMatrix& b0, double t, ComplementMode mode,
                                  const std::optional<WeightScale>& scale = std::nullopt,
                                  const KatzOptions& opts = {});

}  // namespace cokatz
