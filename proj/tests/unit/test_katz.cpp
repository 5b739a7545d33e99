#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cokatz/katz.hpp"
#include "cokatz/ranking.hpp"
#include "support/oracles.hpp"

using namespace cokatz;

namespace {

Graph p3_loopless() {
    return build_graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}, LoopPolicy::loopless, false, false);
}

Graph two_node_loops() {
    // A = [[1,1],[1,0]]
    return build_graph(2, {{0, 0}, {0, 1}, {1, 0}}, LoopPolicy::with_loops, true, false);
}

}  // namespace

TEST_CASE("katz_direct worked cases") {
    Graph empty = build_graph(4, {}, LoopPolicy::loopless, true, false);
    CentralityResult r = katz_direct(empty, 0.5);
    CHECK(r.v == std::vector<double>{1.0, 1.0, 1.0, 1.0});

    CentralityResult p3 = katz_direct(p3_loopless(), 0.5);
    CHECK(p3.v[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p3.v[1] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(p3.v[2] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p3.ranking == std::vector<Index>{1, 0, 2});

    CentralityResult two = katz_direct(two_node_loops(), 0.25);
    CHECK(two.v[0] == doctest::Approx(20.0 / 11.0).epsilon(1e-12));
    CHECK(two.v[1] == doctest::Approx(16.0 / 11.0).epsilon(1e-12));

    CHECK_THROWS_AS(katz_direct(p3_loopless(), 2.0), std::domain_error);
    CHECK_THROWS_AS(katz_direct(p3_loopless(), -0.1), std::domain_error);
}

TEST_CASE("katz_direct is at least one everywhere") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = oracles::random_graph(20, 0.3, LoopPolicy::loopless, true, 5, seed);
        double rho = oracles::dense_rho(g.adj);
        CentralityResult r = katz_direct(g, 0.5 / rho);
        for (double x : r.v) CHECK(x >= 1.0 - 1e-12);
    }
}

TEST_CASE("gamma_scalar worked cases") {
    CHECK(gamma_scalar(SparseMatrix(5, 5), 0.3) == doctest::Approx(5.0));

    SparseMatrix diag = SparseMatrix::from_triplets(2, 2, {{1, 1, 1.0}});
    CHECK(gamma_scalar(diag, 0.25) == doctest::Approx(1.8).epsilon(1e-13));

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(gamma_scalar(diag, 1.0 / phi) == doctest::Approx(phi).epsilon(1e-10));
}

TEST_CASE("katz_complement worked cases") {
    // complete with-loops graph: complement is empty, everything ties
    Graph b_empty = build_graph(3, {}, LoopPolicy::with_loops, false, false);
    CentralityResult tied = katz_complement(b_empty, 0.2, ComplementMode::unweighted_loops);
    CHECK(tied.v == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(rank(tied.v).tie_groups.size() == 1);

    // A = [[1,1],[1,0]], B = diag(0,1), t = 1/4
    Graph b2 = build_graph(2, {{1, 1}}, LoopPolicy::with_loops, true, false);
    CentralityResult c2 = katz_complement(b2, 0.25, ComplementMode::unweighted_loops);
    CHECK(c2.v[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c2.v[1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(c2.scalar_certificates.at("gamma") == doctest::Approx(1.8).epsilon(1e-12));
    const double denom2 = c2.scalar_certificates.at("denominator");
    CHECK(denom2 == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(c2.v[0] / denom2 == doctest::Approx(20.0 / 11.0).epsilon(1e-11));
    CHECK(c2.v[1] / denom2 == doctest::Approx(16.0 / 11.0).epsilon(1e-11));

    // P3 loopless: B has edges {(0,2),(2,0)}, s = 1/3
    Graph b3 = build_graph(3, {{0, 2}, {2, 0}}, LoopPolicy::loopless, false, false);
    CentralityResult c3 = katz_complement(b3, 0.5, ComplementMode::unweighted_loopless);
    CHECK(c3.v[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(c3.v[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c3.scalar_certificates.at("chi") == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(c3.scalar_certificates.at("denominator") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(same_ranking(c3.v, katz_direct(p3_loopless(), 0.5).v));
}

TEST_CASE("complement route matches the dense oracle in all four modes") {
    int per_mode = 15;
    for (int mode_idx = 0; mode_idx < 4; ++mode_idx) {
        ComplementMode mode = static_cast<ComplementMode>(mode_idx);
        bool weighted = mode == ComplementMode::weighted_loops ||
                        mode == ComplementMode::weighted_loopless;
        LoopPolicy policy = (mode == ComplementMode::unweighted_loops ||
                             mode == ComplementMode::weighted_loops)
                                ? LoopPolicy::with_loops
                                : LoopPolicy::loopless;
        for (int i = 0; i < per_mode; ++i) {
            SplitMix64 rng(900 + mode_idx, i);
            Index n = 5 + static_cast<Index>(rng.below(56));
            double density = 0.3 + 0.5 * rng.uniform01();
            Graph raw = oracles::random_graph(n, density, policy, weighted, 321, i + 100 * mode_idx);

            Graph g = raw;
            std::optional<WeightScale> scale;
            Graph b;
            if (weighted) {
                if (policy == LoopPolicy::with_loops) {
                    auto [scaled, sc] = rescale_to_unit_max(raw);
                    g = scaled;
                    scale = sc;
                } else {
                    WeightScale sc;
                    sc.u = column_max_vector(g);
                    sc.omega = *std::max_element(sc.u.begin(), sc.u.end());
                    scale = sc;
                }
                auto [bb, view] = complement_weighted(g, *scale);
                b = bb;
            } else {
                b = complement_unweighted(g);
            }

            double rho = oracles::dense_rho(g.adj);
            double t = 0.9 / rho;
            std::vector<double> direct = oracles::dense_katz(g.adj, t);
            CentralityResult comp = katz_complement(b, t, mode, scale);

            CHECK(same_ranking(direct, comp.v));

            // componentwise scalar-certificate identity
            const double denom = comp.scalar_certificates.at("denominator");
            CHECK(denom > 0.0);
            for (Index k = 0; k < n; ++k) {
                CHECK(comp.v[k] / denom == doctest::Approx(direct[k]).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("negative-parameter series split") {
    auto [even0, odd0] = katz_negative_series_check(SparseMatrix(3, 3), 0.4, 10);
    CHECK(even0 == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(odd0 == std::vector<double>{0.0, 0.0, 0.0});

    SparseMatrix diag = SparseMatrix::from_triplets(2, 2, {{1, 1, 1.0}});
    auto [even1, odd1] = katz_negative_series_check(diag, 0.25, 1);
    CHECK(even1 == std::vector<double>{1.0, 1.0});
    CHECK(odd1 == std::vector<double>{0.0, 0.25});

    auto [evenk, oddk] = katz_negative_series_check(diag, 0.25, 0);
    CHECK(evenk == std::vector<double>{1.0, 1.0});
    CHECK(oddk == std::vector<double>{0.0, 0.0});
}

TEST_CASE("series difference converges to the resolvent") {
    Graph bg = oracles::random_graph(12, 0.3, LoopPolicy::with_loops, true, 71, 3);
    const SparseMatrix& b = bg.adj;
    double rho_b = oracles::dense_rho(b);
    double t = 0.4 / rho_b;  // t < 1/(2 rho(B))
    std::vector<double> exact = oracles::dense_shifted_solve(b, t);
    double prev_err = std::numeric_limits<double>::infinity();
    for (Index k : {2, 4, 8, 16}) {
        auto [even, odd] = katz_negative_series_check(b, t, k);
        double err = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i) {
            err = std::max(err, std::abs(even[i] - odd[i] - exact[i]));
        }
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err <= 1e-4);
}

TEST_CASE("eigenvector iteration worked cases") {
    CentralityResult uniform =
        eigenvector_centrality_complement(SparseMatrix(4, 4), LoopPolicy::with_loops);
    for (double x : uniform.v) CHECK(x == doctest::Approx(0.25).epsilon(1e-14));

    CentralityResult k3 =
        eigenvector_centrality_complement(SparseMatrix(3, 3), LoopPolicy::loopless);
    for (double x : k3.v) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    SparseMatrix b = SparseMatrix::from_triplets(3, 3, {{0, 2, 1.0}, {2, 0, 1.0}});
    CentralityResult p3 = eigenvector_centrality_complement(b, LoopPolicy::loopless, 1e-12);
    const double s2 = std::sqrt(2.0);
    CHECK(p3.v[0] == doctest::Approx(1.0 / (2.0 + s2)).epsilon(1e-9));
    CHECK(p3.v[1] == doctest::Approx(s2 / (2.0 + s2)).epsilon(1e-9));
    CHECK(p3.v[2] == doctest::Approx(1.0 / (2.0 + s2)).epsilon(1e-9));
    CHECK(p3.scalar_certificates.at("normalization_drift") <= 1e-12);
    CHECK(p3.ranking == std::vector<Index>{1, 0, 2});
}

TEST_CASE("eigenvector iteration error paths") {
    SparseMatrix b = SparseMatrix::from_triplets(3, 3, {{0, 2, 1.0}, {2, 0, 1.0}});
    CHECK_THROWS_AS(eigenvector_centrality_complement(b, LoopPolicy::loopless, 1e-14, 2),
                    std::runtime_error);

    // e^T B v >= n makes the denominator nonpositive
    SparseMatrix heavy = SparseMatrix::from_triplets(2, 2, {{0, 1, 10.0}, {1, 0, 10.0}});
    CHECK_THROWS_AS(eigenvector_centrality_complement(heavy, LoopPolicy::with_loops),
                    std::runtime_error);

    CHECK_THROWS_AS(eigenvector_centrality_complement(b, LoopPolicy::loopless, 1e-10, 1000,
                                                      std::vector<double>{1.0, -1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("eigenvector resolvent worked cases") {
    CentralityResult tied =
        eigenvector_centrality_resolvent(SparseMatrix(4, 4), 4.0, LoopPolicy::with_loops);
    CHECK(tied.v == std::vector<double>{1.0, 1.0, 1.0, 1.0});

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    SparseMatrix b2 = SparseMatrix::from_triplets(2, 2, {{1, 1, 1.0}});
    CentralityResult golden =
        eigenvector_centrality_resolvent(b2, phi, LoopPolicy::with_loops);
    CHECK(golden.v[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(golden.v[1] == doctest::Approx(phi / (phi + 1.0)).epsilon(1e-12));
    CHECK(golden.ranking == std::vector<Index>{0, 1});

    SparseMatrix b3 = SparseMatrix::from_triplets(3, 3, {{0, 2, 1.0}, {2, 0, 1.0}});
    CentralityResult p3 =
        eigenvector_centrality_resolvent(b3, std::sqrt(2.0), LoopPolicy::loopless);
    CHECK(p3.ranking == std::vector<Index>{1, 0, 2});
    CHECK(rank(p3.v).tie_groups == std::vector<std::vector<Index>>{{0, 2}});

    // -rho(A) an eigenvalue of B: singular resolvent
    SparseMatrix swap = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
    CHECK_THROWS_AS(eigenvector_centrality_resolvent(swap, 1.0, LoopPolicy::with_loops),
                    std::runtime_error);
}

TEST_CASE("katz ranking approaches the eigenvector ranking near the radius") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Index n = 8 + static_cast<Index>(seed) * 5;
        Graph g = oracles::random_graph(n, 0.5, LoopPolicy::loopless, false, 62, seed);
        if (!oracles::strongly_connected(g.adj)) continue;
        Graph b = complement_unweighted(g);
        double rho = oracles::dense_rho(g.adj);
        CentralityResult near_limit =
            katz_complement(b, (1.0 - 1e-6) / rho, ComplementMode::unweighted_loopless);
        CentralityResult perron =
            eigenvector_centrality_complement(b.adj, LoopPolicy::loopless, 1e-12, 200000);
        CHECK(near_limit.ranking == perron.ranking);
    }
}

TEST_CASE("katz dispatcher picks routes by nonzero count") {
    // dense graph: complement is the sparse side
    std::vector<Edge> almost_all;
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j)
            if (!(i == 0 && j == 5)) almost_all.push_back({i, j});
    Graph dense = build_graph(6, almost_all, LoopPolicy::with_loops, true, false);
    KatzParams params;
    params.t = 0.9 / oracles::dense_rho(dense.adj);
    CentralityResult via_complement = katz(dense, params);
    CHECK(via_complement.route == Route::complement);

    Graph sparse = p3_loopless();
    KatzParams direct_params;
    direct_params.t = 0.5;
    CentralityResult via_direct = katz(sparse, direct_params);
    CHECK(via_direct.route == Route::direct);
    CHECK(via_direct.v[1] == doctest::Approx(4.0));

    // forced complement on a weighted with-loops graph renormalizes internally
    Graph weighted = oracles::random_graph(10, 0.7, LoopPolicy::with_loops, true, 99, 2);
    for (double& w : weighted.adj.values) w *= 3.7;  // un-normalized weights
    double rho = oracles::dense_rho(weighted.adj);
    KatzParams forced;
    forced.t = 0.5 / rho;
    forced.route = RouteChoice::complement_forced;
    CentralityResult forced_result = katz(weighted, forced);
    CHECK(forced_result.route == Route::complement);
    CHECK(same_ranking(forced_result.v, oracles::dense_katz(weighted.adj, forced.t)));
}

TEST_CASE("lemma value of gamma at the reciprocal radius") {
    // 2x2 golden-ratio case is exact to 1e-10; random dense graphs to 1e-6.
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 10; ++seed) {
        SplitMix64 rng(1414, seed);
        Index n = 8 + static_cast<Index>(rng.below(25));
        Graph b_graph = oracles::random_graph(n, 0.15, LoopPolicy::with_loops, false, 8, seed);
        if (4 * b_graph.adj.nnz() >= n * n) continue;  // keep rho(B) < rho(A)
        ComplementView view =
            dense_view_from_complement(b_graph.adj, ComplementMode::unweighted_loops);
        SpectralEstimate rho_a = spectral_radius(view, 1e-13, 100000, seed);
        REQUIRE(rho_a.converged);
        double gamma = gamma_scalar(b_graph.adj, 1.0 / rho_a.rho);
        CHECK(std::abs(gamma - rho_a.rho) <= 1e-6 * rho_a.rho);
        ++checked;
    }
}
