#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cokatz/graph.hpp"
#include "cokatz/katz.hpp"
#include "cokatz/threshold.hpp"

namespace cokatz {

enum class EdgeFileFormat { tsv, matrix_market };
enum class ResultFormat { json, csv };

/// TSV rows are "u<TAB>v[<TAB>weight]" with 0-based ids. Matrix Market is
/// 1-based coordinate format; "general" is read as directed, "symmetric" is
/// expanded to both directions. Parse errors carry the line number.
Graph read_edge_list(const std::filesystem::path& path, EdgeFileFormat format,
                     LoopPolicy loop_policy, bool weighted);

/// Coordinate Matrix Market, 1-based, values with 17 significant digits
/// (pattern banner for unweighted graphs).
void write_matrix_market(const Graph& g, const std::filesystem::path& path);

/// Dense symmetric matrix with unit diagonal and entries in [-1, 1].
struct CorrelationMatrix {
    Index n = 0;
    std::vector<double> values;  // row-major n*n

    double at(Index i, Index j) const { return values[i * n + j]; }

    /// Validates symmetry (1e-12), unit diagonal and the [-1, 1] range.
    static CorrelationMatrix from_dense(Index n, std::vector<double> values);
};

/// Dense CSV, one row per line, optional header row (skipped when the first
/// field is not numeric).
CorrelationMatrix read_correlation_csv(const std::filesystem::path& path);

enum class CorrelationMode { unweighted, weighted };
enum class CorrelationSign { signed_value, absolute_value };

/// A_ij = 1 (or C_ij) when C_ij > eta (strict); absolute_value compares
/// |C_ij| instead. The diagonal is removed under the default loopless policy.
Graph correlation_to_adjacency(const CorrelationMatrix& c, double eta, CorrelationMode mode,
                               LoopPolicy loop_policy = LoopPolicy::loopless,
                               CorrelationSign sign = CorrelationSign::signed_value);

/// JSON object {n, t, route, scores[], ranking[], certificates{}} or CSV with
/// header "node,score,rank" ordered by rank.
void write_result(const CentralityResult& result, const std::filesystem::path& path,
                  ResultFormat format);
void write_result(const SufficiencyReport& report, const std::filesystem::path& path,
                  ResultFormat format);

/// Reads scores back from either write_result format (for comparisons).
std::vector<double> read_scores(const std::filesystem::path& path);

}  // namespace cokatz
