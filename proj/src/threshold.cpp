#include "cokatz/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cokatz/linalg.hpp"
#include "cokatz/ranking.hpp"

namespace cokatz {

namespace {

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Exact Katz vector w = (I - tA)^{-1} e of the original graph, through the
// cheaper of the two sides. Positivity of w doubles as the t-validity guard.
std::vector<double> exact_katz_vector(const Graph& g, const SparseMatrix& b, double t,
                                      LoopPolicy variant, const CheckOptions& opts) {
    const Index n = g.n;
    std::vector<double> w;
    if (b.nnz() <= g.adj.nnz()) {
        std::vector<double> e(n, 1.0);
        double denominator = 0.0;
        std::vector<double> v0;
        if (variant == LoopPolicy::with_loops) {
            std::vector<double> u = column_max_vector(g);
            v0 = solve_shifted(b, t, e, opts.solve);
            denominator = 1.0 - t * dot(u, v0);
        } else {
            double omega =
                g.adj.nnz() ? *std::max_element(g.adj.values.begin(), g.adj.values.end()) : 1.0;
            double s = t / (1.0 + omega * t);
            v0 = solve_shifted(b, s, e, opts.solve);
            denominator = 1.0 + omega * t - t * omega * sum(v0);
        }
        if (!(denominator > 0.0))
            throw std::runtime_error("check_sufficient: nonpositive complement denominator");
        w = std::move(v0);
        for (double& x : w) x /= denominator;
    } else {
        std::vector<double> e(n, 1.0);
        w = solve_shifted(g.adj, -t, e, opts.solve);
    }
    for (double x : w) {
        if (!(x > 0.0))
            throw std::runtime_error("check_sufficient: exact Katz vector not positive, t out of range");
    }
    return w;
}

}  // namespace

ThresholdedComplement sparsify(const SparseMatrix& b, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("sparsify: epsilon must be nonnegative");
    for (double v : b.values) {
        if (v < 0.0) throw std::invalid_argument("sparsify: B must be nonnegative");
    }
    ThresholdedComplement out;
    out.epsilon = epsilon;
    SparseMatrix b0(b.n_rows, b.n_cols);
    for (Index i = 0; i < b.n_rows; ++i) {
        for (Index k = b.row_offsets[i]; k < b.row_offsets[i + 1]; ++k) {
            if (b.values[k] > epsilon) {
                b0.col_indices.push_back(b.col_indices[k]);
                b0.values.push_back(b.values[k]);
            }
        }
        b0.row_offsets[i + 1] = static_cast<Index>(b0.col_indices.size());
    }
    const double cells = static_cast<double>(b.n_rows) * static_cast<double>(b.n_cols);
    out.dropped_count = b.nnz() - b0.nnz();
    out.density_before = cells > 0 ? static_cast<double>(b.nnz()) / cells : 0.0;
    out.density_after = cells > 0 ? static_cast<double>(b0.nnz()) / cells : 0.0;
    out.b0 = std::move(b0);
    return out;
}

std::vector<double> defect_vector(const SparseMatrix& b, const SparseMatrix& b0, double epsilon) {
    if (b.n_rows != b0.n_rows || b.n_cols != b0.n_cols)
        throw std::invalid_argument("defect_vector: dimension mismatch");
    std::vector<double> c(b.n_cols, 0.0);
    for (Index i = 0; i < b.n_rows; ++i) {
        auto cols = b.row_cols(i);
        auto vals = b.row_vals(i);
        auto cols0 = b0.row_cols(i);
        auto vals0 = b0.row_vals(i);
        std::size_t k0 = 0;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k0 < cols0.size() && cols0[k0] == cols[k]) {
                if (vals0[k0] != vals[k])
                    throw std::invalid_argument("defect_vector: B0 entry differs from B");
                ++k0;
                continue;
            }
            // dropped entry
            if (epsilon == 0.0)
                throw std::invalid_argument("defect_vector: epsilon = 0 with nonzero B - B0");
            if (vals[k] > epsilon)
                throw std::invalid_argument("defect_vector: B0 dropped an entry above epsilon");
            c[cols[k]] = std::max(c[cols[k]], vals[k] / epsilon);
        }
        if (k0 != cols0.size())
            throw std::invalid_argument("defect_vector: B0 has an entry missing from B");
    }
    return c;
}

double gap_ratio(std::span<const double> w) {
    if (w.empty()) throw std::invalid_argument("gap_ratio: empty vector");
    if (w.size() < 2) throw std::invalid_argument("gap_ratio: needs at least two components");
    for (double x : w) {
        if (!(x > 0.0)) throw std::invalid_argument("gap_ratio: vector must be positive");
    }
    std::vector<double> sorted(w.begin(), w.end());
    std::sort(sorted.begin(), sorted.end());
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);
    }
    return min_gap / sorted.back();
}

SufficiencyReport check_sufficient(const Graph& g, const SparseMatrix& b, const SparseMatrix& b0,
                                   double epsilon, double t, LoopPolicy variant,
                                   const CheckOptions& opts) {
    if (!g.weighted) throw std::invalid_argument("check_sufficient: graph must be weighted");
    if (g.loop_policy != variant)
        throw std::invalid_argument("check_sufficient: variant does not match the graph loop policy");
    if (g.n != b.n_rows || g.n != b0.n_rows)
        throw std::invalid_argument("check_sufficient: dimension mismatch");
    if (g.n > opts.max_exact_n) {
        throw std::runtime_error("check_sufficient: n=" + std::to_string(g.n) +
                                 " exceeds the exact-certification budget of " +
                                 std::to_string(opts.max_exact_n) +
                                 " (raise CheckOptions::max_exact_n to override)");
    }
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("check_sufficient: t must be positive and finite");

    SufficiencyReport report;
    report.epsilon = epsilon;
    report.c = defect_vector(b, b0, epsilon);

    // rho(A + eps e c^T) through the implicit view of A plus the rank-one term.
    WeightScale scale;
    ComplementMode mode;
    if (variant == LoopPolicy::with_loops) {
        scale.u = column_max_vector(g);
        scale.omega = scale.u.empty() ? 0.0 : *std::max_element(scale.u.begin(), scale.u.end());
        mode = ComplementMode::weighted_loops;
    } else {
        scale.omega = g.adj.nnz() ? *std::max_element(g.adj.values.begin(), g.adj.values.end()) : 1.0;
        scale.u.assign(g.n, scale.omega);
        mode = ComplementMode::weighted_loopless;
    }
    const ComplementView view = dense_view_from_complement(b, mode, scale);
    const std::vector<double>& c = report.c;
    auto perturbed = [&](std::span<const double> v) {
        std::vector<double> y = implicit_matvec(view, v);
        double cv = dot(c, v);
        for (double& yi : y) yi += epsilon * cv;
        return y;
    };
    SpectralEstimate rho_pert =
        spectral_radius(perturbed, g.n, opts.spectral_tol, opts.spectral_max_iter, opts.seed);
    report.rho_bound_ok = t * rho_pert.rho * (1.0 + 1e-8) < 1.0;

    std::vector<double> w = exact_katz_vector(g, b, t, variant, opts);
    report.x = gap_ratio(w);
    report.cTw = dot(c, w);
    report.eTw = sum(w);
    report.rhs_sufficient1 = report.cTw > 0.0
                                 ? report.x / (t * report.cTw * (1.0 + report.x))
                                 : std::numeric_limits<double>::infinity();
    report.rhs_sufficient3 = report.x / (t * report.eTw * (1.0 + report.x));
    report.cond_c_ok = epsilon < report.rhs_sufficient1;
    report.cond_e_ok = epsilon < report.rhs_sufficient3;
    report.verdict =
        (report.rho_bound_ok && report.cond_c_ok) ? Verdict::certified : Verdict::uncertified;
    return report;
}

CentralityResult katz_thresholded(const SparseMatrix& b0, double t, ComplementMode mode,
                                  const std::optional<WeightScale>& scale, const KatzOptions& opts) {
    return detail::complement_route(b0, t, mode, scale, opts, Route::thresholded);
}

}  // namespace cokatz
