#include "cokatz/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cokatz {

SparseMatrix::SparseMatrix(Index rows, Index cols) : n_rows(rows), n_cols(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("sparse matrix dimensions must be nonnegative");
    row_offsets.assign(static_cast<std::size_t>(rows) + 1, 0);
}

double SparseMatrix::entry(Index i, Index j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values[static_cast<std::size_t>(row_offsets[i] + (it - cols.begin()))];
}

std::vector<double> SparseMatrix::to_dense() const {
    std::vector<double> dense(static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols), 0.0);
    for (Index i = 0; i < n_rows; ++i) {
        for (Index k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            dense[static_cast<std::size_t>(i) * n_cols + col_indices[k]] = values[k];
        }
    }
    return dense;
}

void SparseMatrix::check_invariants() const {
    if (static_cast<Index>(row_offsets.size()) != n_rows + 1)
        throw std::invalid_argument("row_offsets size must be n_rows + 1");
    if (row_offsets.front() != 0 || row_offsets.back() != nnz())
        throw std::invalid_argument("row_offsets must start at 0 and end at nnz");
    if (col_indices.size() != values.size())
        throw std::invalid_argument("col_indices and values length mismatch");
    for (Index i = 0; i < n_rows; ++i) {
        if (row_offsets[i + 1] < row_offsets[i])
            throw std::invalid_argument("row_offsets must be nondecreasing");
        for (Index k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            if (col_indices[k] < 0 || col_indices[k] >= n_cols)
                throw std::invalid_argument("column index out of bounds");
            if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1])
                throw std::invalid_argument("column indices must be strictly increasing within a row");
            if (values[k] == 0.0)
                throw std::invalid_argument("explicit zeros must not be stored");
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
    SparseMatrix m(rows, cols);
    std::erase_if(triplets, [](const Triplet& t) { return t.value == 0.0; });
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("triplet index (" + std::to_string(t.row) + "," +
                                        std::to_string(t.col) + ") out of bounds");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t k = 1; k < triplets.size(); ++k) {
        if (triplets[k].row == triplets[k - 1].row && triplets[k].col == triplets[k - 1].col)
            throw std::invalid_argument("duplicate entry at (" + std::to_string(triplets[k].row) +
                                        "," + std::to_string(triplets[k].col) + ")");
    }
    m.col_indices.reserve(triplets.size());
    m.values.reserve(triplets.size());
    for (const Triplet& t : triplets) {
        ++m.row_offsets[t.row + 1];
        m.col_indices.push_back(t.col);
        m.values.push_back(t.value);
    }
    for (Index i = 0; i < rows; ++i) m.row_offsets[i + 1] += m.row_offsets[i];
    return m;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.n_rows == b.n_rows && a.n_cols == b.n_cols && a.row_offsets == b.row_offsets &&
           a.col_indices == b.col_indices && a.values == b.values;
}

}  // namespace cokatz
