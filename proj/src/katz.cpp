#include "cokatz/katz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cokatz/ranking.hpp"

namespace cokatz {

namespace {

constexpr double kRhoSafety = 1e-8;

std::vector<double> ones(Index n) { return std::vector<double>(n, 1.0); }

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void validate_t(double t, double rho) {
    if (!std::isfinite(t) || t <= 0.0)
        throw std::domain_error("katz parameter t must be positive and finite");
    const double inflated = rho * (1.0 + kRhoSafety);
    if (inflated > 0.0 && t >= 1.0 / inflated) {
        throw std::domain_error("t exceeds 1/rho(A): t=" + std::to_string(t) +
                                ", 1/rho=" + std::to_string(1.0 / inflated));
    }
}

double rho_or_hint(const KatzOptions& opts, const MatVec& apply, Index n) {
    if (opts.rho_hint) return *opts.rho_hint;
    SpectralEstimate est =
        spectral_radius(apply, n, opts.spectral_tol, opts.spectral_max_iter, opts.seed);
    return est.rho;
}

// Negative entries below solver noise are rounding dust; anything larger
// means the parameter validation was fooled (e.g. a bad rho hint).
void clamp_nonnegative(std::vector<double>& v, const char* what) {
    double max_abs = 0.0;
    for (double x : v) max_abs = std::max(max_abs, std::abs(x));
    const double slack = 1e-12 * std::max(1.0, max_abs);
    for (double& x : v) {
        if (x < -slack)
            throw std::runtime_error(std::string(what) +
                                     ": negative centrality entry, parameter out of range");
        if (x < 0.0) x = 0.0;
    }
}

bool is_loops_mode(ComplementMode mode) {
    return mode == ComplementMode::unweighted_loops || mode == ComplementMode::weighted_loops;
}

}  // namespace

const char* route_name(Route r) {
    switch (r) {
        case Route::direct: return "direct";
        case Route::complement: return "complement";
        case Route::thresholded: return "thresholded";
    }
    return "unknown";
}

CentralityResult katz_direct(const Graph& g, double t, const KatzOptions& opts) {
    const SparseMatrix& a = g.adj;
    const double rho =
        rho_or_hint(opts, [&a](std::span<const double> v) { return spmv(a, v); }, g.n);
    validate_t(t, rho);

    CentralityResult result;
    result.v = solve_shifted(a, -t, ones(g.n), opts.solve);
    clamp_nonnegative(result.v, "katz_direct");
    result.t_used = t;
    result.route = Route::direct;
    result.ranking = rank(result.v).order;
    return result;
}

double gamma_scalar(const SparseMatrix& b, double t, const SolveOptions& opts) {
    return sum(solve_shifted(b, t, ones(b.n_rows), opts));
}

namespace detail {

CentralityResult complement_route(const SparseMatrix& b, double t, ComplementMode mode,
                                  const std::optional<WeightScale>& scale, const KatzOptions& opts,
                                  Route route_tag) {
    const Index n = b.n_rows;
    const ComplementView view = dense_view_from_complement(b, mode, scale);
    const double rho =
        rho_or_hint(opts, [&view](std::span<const double> v) { return implicit_matvec(view, v); }, n);
    validate_t(t, rho);

    const double omega = mode == ComplementMode::weighted_loopless ? scale->omega : 1.0;
    const double s = is_loops_mode(mode) ? t : t / (1.0 + omega * t);

    CentralityResult result;
    result.v = solve_shifted(b, s, ones(n), opts.solve);
    clamp_nonnegative(result.v, "complement route");
    result.t_used = t;
    result.route = route_tag;

    double denominator = 0.0;
    switch (mode) {
        case ComplementMode::unweighted_loops: {
            const double gamma = sum(result.v);
            denominator = 1.0 - t * gamma;
            result.scalar_certificates["gamma"] = gamma;
            break;
        }
        case ComplementMode::unweighted_loopless: {
            const double chi = sum(result.v);
            denominator = 1.0 + t - t * chi;
            result.scalar_certificates["chi"] = chi;
            break;
        }
        case ComplementMode::weighted_loops: {
            const double gamma = dot(scale->u, result.v);  // u^T v0
            denominator = 1.0 - t * gamma;
            result.scalar_certificates["gamma"] = gamma;
            break;
        }
        case ComplementMode::weighted_loopless: {
            const double chi = sum(result.v);
            denominator = 1.0 + omega * t - t * omega * chi;
            result.scalar_certificates["chi"] = chi;
            break;
        }
    }
    if (!(denominator > 0.0)) {
        throw std::runtime_error(
            "complement route: nonpositive denominator certificate (t out of range or numerical "
            "breakdown): " +
            std::to_string(denominator));
    }
    result.scalar_certificates["denominator"] = denominator;
    result.ranking = rank(result.v).order;
    return result;
}

}  // namespace detail

CentralityResult katz_complement(const Graph& complement, double t, ComplementMode mode,
                                 const std::optional<WeightScale>& scale, const KatzOptions& opts) {
    const bool weighted_mode =
        mode == ComplementMode::weighted_loops || mode == ComplementMode::weighted_loopless;
    if (complement.weighted != weighted_mode)
        throw std::invalid_argument("complement graph weightedness does not match the mode");
    return detail::complement_route(complement.adj, t, mode, scale, opts, Route::complement);
}

std::pair<std::vector<double>, std::vector<double>> katz_negative_series_check(
    const SparseMatrix& b, double t, Index truncation_order) {
    if (b.n_rows != b.n_cols) throw std::invalid_argument("series check needs a square matrix");
    if (truncation_order < 0) throw std::invalid_argument("truncation order must be >= 0");
    const Index n = b.n_rows;
    std::vector<double> even = ones(n);  // k = 0 term
    std::vector<double> odd(n, 0.0);
    std::vector<double> walk = ones(n);
    for (Index k = 1; k <= truncation_order; ++k) {
        walk = spmv(b, walk);
        for (double& x : walk) x *= t;
        auto& target = (k % 2 == 0) ? even : odd;
        for (Index i = 0; i < n; ++i) target[i] += walk[i];
    }
    return {std::move(even), std::move(odd)};
}

CentralityResult eigenvector_centrality_complement(const SparseMatrix& b, LoopPolicy loop_policy,
                                                   double tol, Index max_iter,
                                                   std::optional<std::vector<double>> v0) {
    if (b.n_rows != b.n_cols) throw std::invalid_argument("complement adjacency must be square");
    const Index n = b.n_rows;
    if (tol <= 0.0 || max_iter < 1)
        throw std::invalid_argument("eigenvector iteration: bad tol/max_iter");

    std::vector<double> v;
    if (v0) {
        if (static_cast<Index>(v0->size()) != n)
            throw std::invalid_argument("start vector dimension mismatch");
        double s = 0.0;
        for (double x : *v0) {
            if (x < 0.0) throw std::invalid_argument("start vector must be nonnegative");
            s += x;
        }
        if (s <= 0.0) throw std::invalid_argument("start vector must have positive sum");
        v = std::move(*v0);
        for (double& x : v) x /= s;
    } else {
        v.assign(n, 1.0 / static_cast<double>(n));
    }

    // v <- (e - Bv) / (n - e^T Bv) is the power step for ee^T - B. With a
    // with-loops complement that matrix is A (the printed iteration); with a
    // loopless complement it is A + I, whose Perron vector is the same while
    // the positive diagonal keeps bipartite spectra from cycling.
    (void)loop_policy;
    double max_drift = 0.0;
    double denominator = 0.0;
    for (Index k = 1; k <= max_iter; ++k) {
        std::vector<double> bv = spmv(b, v);
        denominator = static_cast<double>(n) - sum(bv);
        if (!(denominator > 0.0)) {
            throw std::runtime_error(
                "eigenvector iteration: nonpositive denominator (spectral ordering violated or "
                "reducible graph)");
        }
        double delta = 0.0;
        double new_sum = 0.0;
        for (Index i = 0; i < n; ++i) {
            double next = (1.0 - bv[i]) / denominator;
            delta += std::abs(next - v[i]);
            v[i] = next;
            new_sum += next;
        }
        max_drift = std::max(max_drift, std::abs(new_sum - 1.0));
        if (delta <= tol) {
            CentralityResult result;
            result.v = std::move(v);
            result.t_used = 0.0;
            result.route = Route::complement;
            result.scalar_certificates["denominator"] = denominator;
            result.scalar_certificates["iterations"] = static_cast<double>(k);
            result.scalar_certificates["normalization_drift"] = max_drift;
            result.ranking = rank(result.v).order;
            return result;
        }
    }
    throw std::runtime_error("eigenvector iteration: no convergence within max_iter");
}

CentralityResult eigenvector_centrality_resolvent(const SparseMatrix& b, double rho_a,
                                                  LoopPolicy loop_policy,
                                                  const SolveOptions& opts) {
    if (!(rho_a > 0.0) || !std::isfinite(rho_a))
        throw std::invalid_argument("resolvent route needs rho(A) > 0");
    const double s =
        loop_policy == LoopPolicy::with_loops ? 1.0 / rho_a : 1.0 / (rho_a + 1.0);
    CentralityResult result;
    result.v = solve_shifted(b, s, ones(b.n_rows), opts);
    clamp_nonnegative(result.v, "eigenvector_centrality_resolvent");
    result.t_used = 0.0;
    result.route = Route::complement;
    result.ranking = rank(result.v).order;
    return result;
}

CentralityResult katz(const Graph& g, const KatzParams& params, const KatzOptions& opts) {
    KatzOptions local = opts;
    if (params.rho_hint) local.rho_hint = params.rho_hint;

    if (params.route == RouteChoice::direct) return katz_direct(g, params.t, local);
    if (params.route == RouteChoice::complement_auto && g.adj.nnz() <= complement_nnz(g)) {
        return katz_direct(g, params.t, local);
    }

    if (!g.weighted) {
        Graph b = complement_unweighted(g);
        ComplementMode mode = g.loop_policy == LoopPolicy::with_loops
                                  ? ComplementMode::unweighted_loops
                                  : ComplementMode::unweighted_loopless;
        return katz_complement(b, params.t, mode, std::nullopt, local);
    }

    if (g.loop_policy == LoopPolicy::with_loops) {
        // Normalize to max weight 1 and scale t in inverse proportion; the
        // matrix I - tA is unchanged, so the scores are identical.
        auto [scaled, scale] = rescale_to_unit_max(g);
        double t_scaled = params.t * scale.omega;
        if (local.rho_hint) local.rho_hint = *local.rho_hint / scale.omega;
        auto [b, view] = complement_weighted(scaled, scale);
        CentralityResult result =
            katz_complement(b, t_scaled, ComplementMode::weighted_loops, scale, local);
        result.t_used = params.t;
        return result;
    }

    WeightScale scale;
    scale.u = column_max_vector(g);
    scale.omega = g.adj.nnz() ? *std::max_element(g.adj.values.begin(), g.adj.values.end()) : 0.0;
    if (scale.omega <= 0.0) throw std::invalid_argument("weighted complement route needs edges");
    auto [b, view] = complement_weighted(g, scale);
    return katz_complement(b, params.t, ComplementMode::weighted_loopless, scale, local);
}

}  // namespace cokatz
