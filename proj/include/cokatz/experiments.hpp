#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cokatz/graph.hpp"

namespace cokatz {

/// Random dense-matrix protocol: each trial draws a (3n x 3n) matrix D with
/// i.i.d. entries of cdf x^(1/n) on [0,1] (U^n for U uniform), sets
/// A = ee^T - D, u = column maxima of A, B = e u^T - A, and B0 from B by the
/// drop threshold. t = t_fraction / rho(A).
struct ExperimentConfig {
    Index base_n = 100;  // matrix size is 3 * base_n
    Index trials = 100;
    std::uint64_t seed = 1;
    double t_fraction = 0.5;
    double threshold = 0.1;                // random experiment: drop B entries <= this
    std::optional<double> epsilon_fixed;   // sufficiency experiment
    std::optional<int> epsilon_power;      // epsilon = (3 base_n)^(-k)
};

struct RandomExperimentReport {
    ExperimentConfig config;
    std::string version;
    double mean_tau = 0.0;
    double min_tau = 0.0;
    double mean_sparse_solve_seconds = 0.0;  // v0 solve only
    double mean_b0_nnz = 0.0;
    std::vector<double> taus;
};

struct SufficiencyExperimentReport {
    ExperimentConfig config;
    std::string version;
    double epsilon = 0.0;
    double t = 0.0;
    double sparsity = 0.0;  // fraction of zero entries of B0
    double rhs_sufficient1 = 0.0;
    double rhs_sufficient3 = 0.0;
    bool cond_c_ok = false;
    bool cond_e_ok = false;
    bool rho_bound_ok = false;
    bool certified = false;
};

/// Timing comparison of the two routes on one graph: (I - tA)^{-1}e versus
/// (I + tB)^{-1}e, each timed with dense and sparse storage and taking the
/// better of the two, averaged over reps after one warm-up.
struct BenchReport {
    Index n = 0;
    Index nnz_a = 0;
    Index nnz_b = 0;
    Index reps = 0;
    double t = 0.0;
    double direct_dense_seconds = 0.0;
    double direct_sparse_seconds = 0.0;
    double complement_dense_seconds = 0.0;
    double complement_sparse_seconds = 0.0;
    double direct_seconds = 0.0;      // min of the two storages
    double complement_seconds = 0.0;  // min of the two storages
    bool rankings_agree = false;
    std::string faster;  // "direct" or "complement"
};

RandomExperimentReport run_random_experiment(const ExperimentConfig& config);

/// One D realization; reports B0 sparsity and the exact-recovery conditions.
SufficiencyExperimentReport run_sufficiency_experiment(const ExperimentConfig& config);

BenchReport run_bench(const Graph& g, double t_fraction, Index reps, std::uint64_t seed = 0);

/// Unweighted with-loops graph missing `missing` uniformly chosen entries
/// (complement nnz = missing).
Graph make_dense_unweighted_graph(Index n, Index missing, std::uint64_t seed);

/// Unweighted with-loops graph with `nnz` uniformly chosen entries.
Graph make_sparse_unweighted_graph(Index n, Index nnz, std::uint64_t seed);

}  // namespace cokatz
