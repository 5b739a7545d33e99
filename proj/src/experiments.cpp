#include "cokatz/experiments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "cokatz/katz.hpp"
#include "cokatz/linalg.hpp"
#include "cokatz/ranking.hpp"
#include "cokatz/rng.hpp"
#include "cokatz/threshold.hpp"
#include "cokatz/version.hpp"

namespace cokatz {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// D with i.i.d. entries of cdf x^(1/power) on [0,1].
Eigen::MatrixXd draw_power_matrix(Index size, double power, SplitMix64& rng) {
    Eigen::MatrixXd d(size, size);
    for (Index i = 0; i < size; ++i) {
        for (Index j = 0; j < size; ++j) {
            d(i, j) = rng.uniform_pow(power);
        }
    }
    return d;
}

// rho of A = ee^T - D given dense D.
double rho_of_ones_minus(const Eigen::MatrixXd& d, double tol, std::uint64_t seed) {
    const Index n = d.rows();
    auto apply = [&d, n](std::span<const double> v) {
        Eigen::Map<const Eigen::VectorXd> vm(v.data(), n);
        double total = vm.sum();
        Eigen::VectorXd y = Eigen::VectorXd::Constant(n, total) - d * vm;
        return std::vector<double>(y.data(), y.data() + n);
    };
    SpectralEstimate est = spectral_radius(apply, n, tol, 20000, seed);
    return est.rho;
}

SparseMatrix sparse_above(const Eigen::MatrixXd& b, double threshold) {
    const Index n = b.rows();
    SparseMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (b(i, j) > threshold) {
                m.col_indices.push_back(j);
                m.values.push_back(b(i, j));
            }
        }
        m.row_offsets[i + 1] = static_cast<Index>(m.col_indices.size());
    }
    return m;
}

Graph cells_to_graph(Index n, const std::vector<std::vector<Index>>& keep_sorted) {
    Graph g;
    g.n = n;
    g.loop_policy = LoopPolicy::with_loops;
    g.weighted = false;
    g.directed = true;
    SparseMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j : keep_sorted[i]) m.col_indices.push_back(j);
        m.row_offsets[i + 1] = static_cast<Index>(m.col_indices.size());
    }
    m.values.assign(m.col_indices.size(), 1.0);
    g.adj = std::move(m);
    return g;
}

std::unordered_set<long long> sample_cells(Index n, Index count, SplitMix64& rng) {
    if (count > n * n) throw std::invalid_argument("cannot sample more cells than n^2");
    std::unordered_set<long long> cells;
    cells.reserve(static_cast<std::size_t>(count) * 2);
    while (static_cast<Index>(cells.size()) < count) {
        long long i = static_cast<long long>(rng.below(static_cast<std::uint64_t>(n)));
        long long j = static_cast<long long>(rng.below(static_cast<std::uint64_t>(n)));
        cells.insert(i * n + j);
    }
    return cells;
}

}  // namespace

RandomExperimentReport run_random_experiment(const ExperimentConfig& config) {
    if (config.base_n < 1 || config.trials < 1)
        throw std::invalid_argument("experiment needs base_n >= 1 and trials >= 1");
    const Index size = 3 * config.base_n;
    RandomExperimentReport report;
    report.config = config;
    report.version = kVersion;
    report.taus.reserve(config.trials);

    double total_time = 0.0;
    double total_nnz = 0.0;
    for (Index trial = 0; trial < config.trials; ++trial) {
        SplitMix64 rng(config.seed, static_cast<std::uint64_t>(trial) + 1);
        Eigen::MatrixXd d = draw_power_matrix(size, static_cast<double>(config.base_n), rng);

        const double rho = rho_of_ones_minus(d, 1e-10, config.seed);
        const double t = config.t_fraction / rho;

        // B = e u^T - A with A = ee^T - D and u the column maxima of A, which
        // reduces to subtracting the column minima of D.
        Eigen::VectorXd col_min = d.colwise().minCoeff();
        d.rowwise() -= col_min.transpose();  // d now holds B

        Eigen::MatrixXd system = t * d;
        system.diagonal().array() += 1.0;
        Eigen::VectorXd v_exact = system.partialPivLu().solve(Eigen::VectorXd::Ones(size));

        SparseMatrix b0 = sparse_above(d, config.threshold);
        total_nnz += static_cast<double>(b0.nnz());

        std::vector<double> e(size, 1.0);
        auto start = Clock::now();
        std::vector<double> v0 = solve_shifted(b0, t, e);
        total_time += seconds_since(start);

        std::vector<double> v_vec(v_exact.data(), v_exact.data() + size);
        report.taus.push_back(kendall_tau(v_vec, v0));
    }

    report.mean_tau = 0.0;
    report.min_tau = report.taus.front();
    for (double tau : report.taus) {
        report.mean_tau += tau;
        report.min_tau = std::min(report.min_tau, tau);
    }
    report.mean_tau /= static_cast<double>(config.trials);
    report.mean_sparse_solve_seconds = total_time / static_cast<double>(config.trials);
    report.mean_b0_nnz = total_nnz / static_cast<double>(config.trials);
    return report;
}

SufficiencyExperimentReport run_sufficiency_experiment(const ExperimentConfig& config) {
    if (config.base_n < 1) throw std::invalid_argument("experiment needs base_n >= 1");
    const Index size = 3 * config.base_n;
    double epsilon = 0.0;
    if (config.epsilon_fixed) {
        epsilon = *config.epsilon_fixed;
    } else if (config.epsilon_power) {
        epsilon = std::pow(static_cast<double>(size), -static_cast<double>(*config.epsilon_power));
    } else {
        throw std::invalid_argument("sufficiency experiment needs an epsilon rule");
    }
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");

    SufficiencyExperimentReport report;
    report.config = config;
    report.version = kVersion;
    report.epsilon = epsilon;

    SplitMix64 rng(config.seed, 1);
    Eigen::MatrixXd d = draw_power_matrix(size, static_cast<double>(config.base_n), rng);

    const double rho = rho_of_ones_minus(d, 1e-10, config.seed);
    const double t = config.t_fraction / rho;
    report.t = t;

    // w = (I - tA)^{-1} e with A = ee^T - D.
    Eigen::MatrixXd system = t * d;
    system.array() -= t;
    system.diagonal().array() += 1.0;
    Eigen::VectorXd w_vec = system.partialPivLu().solve(Eigen::VectorXd::Ones(size));
    system.resize(0, 0);
    std::vector<double> w(w_vec.data(), w_vec.data() + size);

    Eigen::VectorXd col_min = d.colwise().minCoeff();
    d.rowwise() -= col_min.transpose();  // d now holds B
    Eigen::VectorXd u = Eigen::VectorXd::Ones(size) - col_min;  // column maxima of A

    Index kept = 0;
    std::vector<double> c(size, 0.0);
    for (Index j = 0; j < size; ++j) {
        for (Index i = 0; i < size; ++i) {
            const double value = d(i, j);
            if (value > epsilon) {
                ++kept;
            } else if (value > 0.0 && epsilon > 0.0) {
                c[j] = std::max(c[j], value / epsilon);
            }
        }
    }
    report.sparsity =
        1.0 - static_cast<double>(kept) / (static_cast<double>(size) * static_cast<double>(size));

    const double x = gap_ratio(w);
    double cTw = 0.0, eTw = 0.0;
    for (Index i = 0; i < size; ++i) {
        cTw += c[i] * w[i];
        eTw += w[i];
    }
    report.rhs_sufficient1 = cTw > 0.0 ? x / (t * cTw * (1.0 + x))
                                       : std::numeric_limits<double>::infinity();
    report.rhs_sufficient3 = x / (t * eTw * (1.0 + x));
    report.cond_c_ok = epsilon < report.rhs_sufficient1;
    report.cond_e_ok = epsilon < report.rhs_sufficient3;

    // rho(A + eps e c^T) through A = e u^T - B.
    auto apply = [&](std::span<const double> v) {
        Eigen::Map<const Eigen::VectorXd> vm(v.data(), size);
        double uv = u.dot(vm);
        double cv = 0.0;
        for (Index i = 0; i < size; ++i) cv += c[i] * v[i];
        Eigen::VectorXd y =
            Eigen::VectorXd::Constant(size, uv + epsilon * cv) - d * vm;
        return std::vector<double>(y.data(), y.data() + size);
    };
    SpectralEstimate rho_pert = spectral_radius(apply, size, 1e-10, 20000, config.seed);
    report.rho_bound_ok = t * rho_pert.rho * (1.0 + 1e-8) < 1.0;
    report.certified = report.rho_bound_ok && report.cond_c_ok;
    return report;
}

BenchReport run_bench(const Graph& g, double t_fraction, Index reps, std::uint64_t seed) {
    if (g.weighted) throw std::invalid_argument("bench expects an unweighted graph");
    if (reps < 1) throw std::invalid_argument("bench needs reps >= 1");
    const Index n = g.n;

    Graph complement = complement_unweighted(g);
    const SparseMatrix& a = g.adj;
    const SparseMatrix& b = complement.adj;

    double rho = 0.0;
    if (b.nnz() <= a.nnz()) {
        ComplementMode mode = g.loop_policy == LoopPolicy::with_loops
                                  ? ComplementMode::unweighted_loops
                                  : ComplementMode::unweighted_loopless;
        rho = spectral_radius(dense_view_from_complement(b, mode), 1e-10, 20000, seed).rho;
    } else {
        rho = spectral_radius(a, 1e-10, 20000, seed).rho;
    }
    const double t = t_fraction / rho;
    const double s_complement =
        g.loop_policy == LoopPolicy::with_loops ? t : t / (1.0 + t);

    BenchReport report;
    report.n = n;
    report.nnz_a = a.nnz();
    report.nnz_b = b.nnz();
    report.reps = reps;
    report.t = t;

    std::vector<double> e(n, 1.0);
    auto time_sparse = [&](const SparseMatrix& m, double shift) {
        std::vector<double> x = solve_shifted(m, shift, e);  // warm-up
        auto start = Clock::now();
        for (Index r = 0; r < reps; ++r) x = solve_shifted(m, shift, e);
        return std::make_pair(seconds_since(start) / static_cast<double>(reps), x);
    };
    auto time_dense = [&](const SparseMatrix& m, double shift) {
        Eigen::MatrixXd dense = Eigen::MatrixXd::Identity(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
                dense(i, m.col_indices[k]) += shift * m.values[k];
            }
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
        Eigen::VectorXd x = dense.partialPivLu().solve(rhs);  // warm-up
        auto start = Clock::now();
        for (Index r = 0; r < reps; ++r) x = dense.partialPivLu().solve(rhs);
        return seconds_since(start) / static_cast<double>(reps);
    };

    auto [direct_sparse, v_direct] = time_sparse(a, -t);
    report.direct_sparse_seconds = direct_sparse;
    report.direct_dense_seconds = time_dense(a, -t);
    auto [complement_sparse, v0] = time_sparse(b, s_complement);
    report.complement_sparse_seconds = complement_sparse;
    report.complement_dense_seconds = time_dense(b, s_complement);

    report.direct_seconds = std::min(report.direct_dense_seconds, report.direct_sparse_seconds);
    report.complement_seconds =
        std::min(report.complement_dense_seconds, report.complement_sparse_seconds);
    report.rankings_agree = same_ranking(v_direct, v0);
    report.faster = report.complement_seconds < report.direct_seconds ? "complement" : "direct";
    return report;
}

Graph make_dense_unweighted_graph(Index n, Index missing, std::uint64_t seed) {
    if (n < 1 || missing < 0 || missing > n * n)
        throw std::invalid_argument("bad dense-graph generator parameters");
    SplitMix64 rng(seed, 0xdead);
    auto holes = sample_cells(n, missing, rng);
    std::vector<std::vector<Index>> keep(n);
    for (Index i = 0; i < n; ++i) {
        keep[i].reserve(n);
        for (Index j = 0; j < n; ++j) {
            if (!holes.contains(static_cast<long long>(i) * n + j)) keep[i].push_back(j);
        }
    }
    return cells_to_graph(n, keep);
}

Graph make_sparse_unweighted_graph(Index n, Index nnz, std::uint64_t seed) {
    if (n < 1 || nnz < 0 || nnz > n * n)
        throw std::invalid_argument("bad sparse-graph generator parameters");
    SplitMix64 rng(seed, 0xbeef);
    auto cells = sample_cells(n, nnz, rng);
    std::vector<std::vector<Index>> keep(n);
    for (long long cell : cells) {
        keep[static_cast<Index>(cell / n)].push_back(static_cast<Index>(cell % n));
    }
    for (auto& row : keep) std::sort(row.begin(), row.end());
    return cells_to_graph(n, keep);
}

}  // namespace cokatz
