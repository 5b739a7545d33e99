#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cokatz {

using Index = std::int64_t;

struct Triplet {
    Index row = 0;
    Index col = 0;
    double value = 0.0;
};

/// Compressed-sparse-row matrix of doubles. Column indices are strictly
/// increasing within each row and no explicit zeros are stored.
struct SparseMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<Index> row_offsets;  // size n_rows + 1
    std::vector<Index> col_indices;
    std::vector<double> values;

    SparseMatrix() : row_offsets{0} {}
    SparseMatrix(Index rows, Index cols);

    Index nnz() const { return static_cast<Index>(col_indices.size()); }

    std::span<const Index> row_cols(Index i) const {
        return {col_indices.data() + row_offsets[i],
                static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
    }
    std::span<const double> row_vals(Index i) const {
        return {values.data() + row_offsets[i],
                static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
    }

    /// Entry lookup by binary search; zero when not stored.
    double entry(Index i, Index j) const;

    std::vector<double> to_dense() const;  // row-major, n_rows * n_cols

    /// Throws std::invalid_argument when a CSR invariant is broken.
    void check_invariants() const;

    /// Sorts, rejects duplicate coordinates, drops exact zeros.
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);
};

bool operator==(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace cokatz
