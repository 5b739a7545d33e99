#include "cokatz/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cokatz {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Graph build_graph(Index n, const std::vector<Edge>& edges, LoopPolicy loop_policy, bool directed,
                  bool weighted) {
    require(n >= 1, "graph needs at least one node");
    std::vector<Triplet> triplets;
    triplets.reserve(edges.size());
    for (const Edge& e : edges) {
        require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n,
                "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
        require(e.weight > 0.0, "edge weights must be strictly positive");
        if (loop_policy == LoopPolicy::loopless)
            require(e.u != e.v, "loop (" + std::to_string(e.u) + "," + std::to_string(e.u) +
                                    ") not allowed under the loopless policy");
        triplets.push_back({e.u, e.v, weighted ? e.weight : 1.0});
    }
    Graph g;
    g.n = n;
    g.loop_policy = loop_policy;
    g.weighted = weighted;
    g.directed = directed;
    try {
        g.adj = SparseMatrix::from_triplets(n, n, std::move(triplets));
    } catch (const std::invalid_argument& err) {
        throw std::invalid_argument(std::string("edge list: ") + err.what());
    }
    if (!directed) {
        for (Index i = 0; i < n; ++i) {
            auto cols = g.adj.row_cols(i);
            auto vals = g.adj.row_vals(i);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                require(g.adj.entry(cols[k], i) == vals[k],
                        "undirected graph needs matching reverse edges");
            }
        }
    }
    return g;
}

std::vector<double> column_max_vector(const Graph& g) {
    std::vector<double> u(g.n, 0.0);
    const SparseMatrix& a = g.adj;
    for (Index i = 0; i < a.n_rows; ++i) {
        for (Index k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            u[a.col_indices[k]] = std::max(u[a.col_indices[k]], a.values[k]);
        }
    }
    return u;
}

std::pair<Graph, WeightScale> rescale_to_unit_max(const Graph& g) {
    require(g.adj.nnz() > 0, "cannot rescale an edgeless graph: the largest weight is undefined");
    double omega = *std::max_element(g.adj.values.begin(), g.adj.values.end());
    Graph scaled = g;
    for (double& v : scaled.adj.values) v /= omega;
    WeightScale scale{omega, column_max_vector(scaled)};
    return {std::move(scaled), std::move(scale)};
}

Graph complement_unweighted(const Graph& g) {
    require(!g.weighted, "complement_unweighted needs an unweighted graph");
    const bool loops = g.loop_policy == LoopPolicy::with_loops;
    Graph b;
    b.n = g.n;
    b.loop_policy = g.loop_policy;
    b.weighted = false;
    b.directed = g.directed;
    SparseMatrix m(g.n, g.n);
    m.col_indices.reserve(static_cast<std::size_t>(g.n) * g.n - g.adj.nnz());
    for (Index i = 0; i < g.n; ++i) {
        auto cols = g.adj.row_cols(i);
        std::size_t k = 0;
        for (Index j = 0; j < g.n; ++j) {
            if (k < cols.size() && cols[k] == j) {
                ++k;
                continue;
            }
            if (!loops && i == j) continue;
            m.col_indices.push_back(j);
        }
        m.row_offsets[i + 1] = static_cast<Index>(m.col_indices.size());
    }
    m.values.assign(m.col_indices.size(), 1.0);
    b.adj = std::move(m);
    return b;
}

std::pair<Graph, ComplementView> complement_weighted(const Graph& g, const WeightScale& scale,
                                                     double drop_tol) {
    require(g.weighted, "complement_weighted needs a weighted graph");
    require(drop_tol >= 0.0, "drop tolerance must be nonnegative");
    const bool loops = g.loop_policy == LoopPolicy::with_loops;
    const Index n = g.n;

    std::vector<double> u;
    double shift = 0.0;
    if (loops) {
        // B = e u^T - A, with weights normalized so that max A_ij = 1.
        require(static_cast<Index>(scale.u.size()) == n, "scale.u must have one entry per node");
        u = scale.u;
        double max_w = g.adj.nnz() ? *std::max_element(g.adj.values.begin(), g.adj.values.end()) : 0.0;
        require(max_w <= 1.0 + 1e-12, "with-loops weighted complement needs weights normalized to max 1");
    } else {
        // B = Omega ee^T - Omega I - A.
        require(scale.omega > 0.0, "scale.omega must be positive");
        u.assign(n, scale.omega);
        shift = -scale.omega;
    }

    SparseMatrix m(n, n);
    std::vector<double> dense_row(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        auto cols = g.adj.row_cols(i);
        auto vals = g.adj.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) dense_row[cols[k]] = vals[k];
        for (Index j = 0; j < n; ++j) {
            if (!loops && i == j) continue;
            double value = u[j] - dense_row[j];
            require(value >= -drop_tol, "complement entry would be negative; inconsistent scale");
            if (value > drop_tol) {
                m.col_indices.push_back(j);
                m.values.push_back(value);
            }
        }
        m.row_offsets[i + 1] = static_cast<Index>(m.col_indices.size());
        for (std::size_t k = 0; k < cols.size(); ++k) dense_row[cols[k]] = 0.0;
    }

    Graph b;
    b.n = n;
    b.loop_policy = g.loop_policy;
    b.weighted = true;
    b.directed = g.directed;
    b.adj = m;

    ComplementView view;
    view.n = n;
    view.rank_one_right = std::move(u);
    view.diagonal_shift = shift;
    view.sparse_part = std::move(m);
    return {std::move(b), std::move(view)};
}

ComplementView dense_view_from_complement(const SparseMatrix& b, ComplementMode mode,
                                          const std::optional<WeightScale>& scale) {
    require(b.n_rows == b.n_cols, "complement adjacency must be square");
    ComplementView view;
    view.n = b.n_rows;
    view.sparse_part = b;
    switch (mode) {
        case ComplementMode::unweighted_loops:
            view.rank_one_right.assign(view.n, 1.0);
            view.diagonal_shift = 0.0;
            break;
        case ComplementMode::unweighted_loopless:
            view.rank_one_right.assign(view.n, 1.0);
            view.diagonal_shift = -1.0;
            break;
        case ComplementMode::weighted_loops:
            require(scale.has_value() && static_cast<Index>(scale->u.size()) == view.n,
                    "weighted with-loops mode needs the column-max vector in the scale");
            view.rank_one_right = scale->u;
            view.diagonal_shift = 0.0;
            break;
        case ComplementMode::weighted_loopless:
            require(scale.has_value() && scale->omega > 0.0,
                    "weighted loopless mode needs a positive omega in the scale");
            view.rank_one_right.assign(view.n, scale->omega);
            view.diagonal_shift = -scale->omega;
            break;
    }
    return view;
}

Index complement_nnz(const Graph& g, double drop_tol) {
    const Index n = g.n;
    const bool loops = g.loop_policy == LoopPolicy::with_loops;
    if (!g.weighted) {
        return (loops ? n * n : n * (n - 1)) - g.adj.nnz();
    }
    // Weighted: count entries of e u^T - A (loops) or Omega(ee^T - I) - A above drop_tol.
    std::vector<double> u;
    if (loops) {
        u = column_max_vector(g);
    } else {
        double omega = g.adj.nnz() ? *std::max_element(g.adj.values.begin(), g.adj.values.end()) : 0.0;
        u.assign(n, omega);
    }
    std::vector<Index> col_nnz(n, 0);
    Index count = 0;
    const SparseMatrix& a = g.adj;
    for (Index i = 0; i < n; ++i) {
        for (Index k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
            Index j = a.col_indices[k];
            ++col_nnz[j];
            if (u[j] - a.values[k] > drop_tol) ++count;
        }
    }
    for (Index j = 0; j < n; ++j) {
        if (u[j] > drop_tol) count += (loops ? n : n - 1) - col_nnz[j];
    }
    return count;
}

}  // namespace cokatz
