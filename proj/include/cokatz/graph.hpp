#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cokatz/sparse.hpp"

namespace cokatz {

enum class LoopPolicy { with_loops, loopless };

/// Which complement construction a sparse matrix came from. The weighted
/// variants need a WeightScale to recover the dense side.
enum class ComplementMode {
    unweighted_loops,
    unweighted_loopless,
    weighted_loops,
    weighted_loopless,
};

/// Immutable graph with CSR adjacency. Row i / column j holds the weight of
/// edge (i,j); absent edges are not stored. Unweighted graphs store 1.0.
struct Graph {
    Index n = 0;
    LoopPolicy loop_policy = LoopPolicy::loopless;
    bool weighted = false;
    bool directed = false;
    SparseMatrix adj;
};

/// Largest weight Omega and the vector of per-column maxima, as produced by
/// column_max_vector / rescale_to_unit_max.
struct WeightScale {
    double omega = 1.0;
    std::vector<double> u;
};

/// Implicit representation of the dense matrix
///     A = e * u^T + diagonal_shift * I - B
/// where e is the all-ones vector and B is sparse. Lets the dense side be
/// applied to vectors in O(n + nnz(B)) without materializing it.
struct ComplementView {
    Index n = 0;
    std::vector<double> rank_one_right;  // u, or Omega * e
    double diagonal_shift = 0.0;         // 0 with loops, -Omega loopless
    SparseMatrix sparse_part;            // B, applied with sign -1

    double reconstruct_entry(Index i, Index j) const {
        double a = rank_one_right[j] - sparse_part.entry(i, j);
        if (i == j) a += diagonal_shift;
        return a;
    }
};

struct Edge {
    Index u = 0;
    Index v = 0;
    double weight = 1.0;
};

/// Validates indices, positivity, loop policy and duplicates; for undirected
/// graphs also checks that the edge list is symmetric with equal weights.
Graph build_graph(Index n, const std::vector<Edge>& edges, LoopPolicy loop_policy,
                  bool directed, bool weighted);

/// u_j = max_i adj(i,j); zero for an all-zero column.
std::vector<double> column_max_vector(const Graph& g);

/// Divides all weights by Omega = max weight; errors on an edgeless graph.
/// The returned scale records Omega and the post-scaling column maxima.
std::pair<Graph, WeightScale> rescale_to_unit_max(const Graph& g);

/// B = ee^T - A (with loops) or ee^T - I - A (loopless).
Graph complement_unweighted(const Graph& g);

/// Weighted complement. With loops: B = e u^T - A (requires weights
/// normalized to max 1); loopless: B = Omega ee^T - Omega I - A. Entries that
/// cancel to below drop_tol are treated as structural zeros. The returned
/// view reconstructs A exactly (up to drop_tol).
std::pair<Graph, ComplementView> complement_weighted(const Graph& g, const WeightScale& scale,
                                                     double drop_tol = 1e-14);

/// View of the dense original A given its complement adjacency B. The scale
/// is required for the weighted modes (u for with-loops, omega for loopless).
ComplementView dense_view_from_complement(const SparseMatrix& b, ComplementMode mode,
                                          const std::optional<WeightScale>& scale = std::nullopt);

/// Nonzero count of the complement adjacency without materializing it.
Index complement_nnz(const Graph& g, double drop_tol = 1e-14);

}  // namespace cokatz
