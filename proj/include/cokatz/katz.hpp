#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cokatz/graph.hpp"
#include "cokatz/linalg.hpp"

namespace cokatz {

enum class RouteChoice { direct, complement_auto, complement_forced };
enum class Route { direct, complement, thresholded };

const char* route_name(Route r);

struct KatzParams {
    double t = 0.0;
    RouteChoice route = RouteChoice::complement_auto;
    std::optional<double> rho_hint;  // skips the spectral-radius estimate
};

struct KatzOptions {
    SolveOptions solve;
    std::optional<double> rho_hint;
    double spectral_tol = 1e-10;
    Index spectral_max_iter = 20000;
    std::uint64_t seed = 0;
};

struct CentralityResult {
    std::vector<double> v;
    double t_used = 0.0;
    Route route = Route::direct;
    std::map<std::string, double> scalar_certificates;  // gamma / chi / denominator
    std::vector<Index> ranking;  // descending centrality, ties by ascending id
};

/// v = (I - tA)^{-1} e for 0 < t < 1/rho(A); v >= 1 elementwise.
CentralityResult katz_direct(const Graph& g, double t, const KatzOptions& opts = {});

/// gamma(t, B) = e^T (I + tB)^{-1} e.
double gamma_scalar(const SparseMatrix& b, double t, const SolveOptions& opts = {});

/// Katz ranking computed on the sparse complement adjacency B. Per mode the
/// sparse system solved and the positive scalar tying it to the direct
/// vector are:
///   unweighted_loops:    v0 = (I + tB)^{-1} e,           v = v0 / (1 - t*gamma)
///   unweighted_loopless: v0 = (I + sB)^{-1} e, s=t/(1+t), v = v0 / (1 + t - t*chi)
///   weighted_loops:      v0 = (I + tB)^{-1} e,           v = v0 / (1 - t * u^T v0)
///   weighted_loopless:   v0 = (I + sB)^{-1} e, s=t/(1+Omega t),
///                                                        v = v0 / (1 + Omega t - t*Omega*chi)
/// with gamma = chi = e^T v0. The result carries v0 as scores (the ranking is
/// the same) plus the scalar certificates. 0 < t < 1/rho(A) is validated
/// through the implicit view; a nonpositive denominator is an error.
CentralityResult katz_complement(const Graph& complement, double t, ComplementMode mode,
                                 const std::optional<WeightScale>& scale = std::nullopt,
                                 const KatzOptions& opts = {});

/// Truncated even/odd walk sums: (sum_{k even <= K} t^k B^k e,
/// sum_{k odd <= K} t^k B^k e). Their difference tends to (I + tB)^{-1} e.
std::pair<std::vector<double>, std::vector<double>> katz_negative_series_check(
    const SparseMatrix& b, double t, Index truncation_order);

/// Perron vector of the original graph through its complement B, iterating
///     v <- (e - B v) / (n - e^T B v)
/// which is the power method on ee^T - B. For a with-loops complement that
/// matrix is A itself; for a loopless complement it is A + I, which has the
/// same Perron vector and stays convergent on bipartite graphs. Iterates keep
/// e^T v = 1; stops when ||v_{k+1} - v_k||_1 <= tol. Throws on max_iter or a
/// nonpositive denominator.
CentralityResult eigenvector_centrality_complement(const SparseMatrix& b, LoopPolicy loop_policy,
                                                   double tol = 1e-10, Index max_iter = 100000,
                                                   std::optional<std::vector<double>> v0 = std::nullopt);

/// Perron ranking as a single resolvent solve: (I + B/rho_A)^{-1} e with
/// loops, (I + B/(rho_A + 1))^{-1} e loopless. Fails when the shifted system
/// is singular (the excluded-eigenvalue case).
CentralityResult eigenvector_centrality_resolvent(const SparseMatrix& b, double rho_a,
                                                  LoopPolicy loop_policy,
                                                  const SolveOptions& opts = {});

/// Route dispatcher: direct, forced complement, or whichever side has fewer
/// nonzeros (complement_auto). Weighted with-loops inputs are renormalized to
/// unit max weight internally (t is scaled in inverse proportion, which
/// leaves the centrality vector unchanged).
CentralityResult katz(const Graph& g, const KatzParams& params, const KatzOptions& opts = {});

namespace detail {

/// Shared complement-side solve: used by katz_complement on the exact B and
/// by katz_thresholded on B0.
CentralityResult complement_route(const SparseMatrix& b, double t, ComplementMode mode,
                                  const std::optional<WeightScale>& scale, const KatzOptions& opts,
                                  Route route_tag);

}  // namespace detail

}  // namespace cokatz
