#include "cokatz/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cokatz/ranking.hpp"
#include "cokatz/version.hpp"

namespace cokatz {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& msg) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool parse_double(const std::string& token, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(token, &pos);
        return pos == token.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_index(const std::string& token, Index& out) {
    try {
        std::size_t pos = 0;
        out = std::stoll(token, &pos);
        return pos == token.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

Graph read_matrix_market(const std::filesystem::path& path, LoopPolicy loop_policy, bool weighted) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
    ++lineno;
    auto banner = split_ws(line);
    if (banner.size() != 5 || lower(banner[0]) != "%%matrixmarket" || lower(banner[1]) != "matrix")
        parse_fail(path, lineno, "malformed Matrix Market header");
    if (lower(banner[2]) != "coordinate")
        parse_fail(path, lineno, "only coordinate format is supported");
    const std::string field = lower(banner[3]);
    if (field != "real" && field != "integer" && field != "pattern")
        parse_fail(path, lineno, "unsupported field '" + banner[3] + "'");
    const std::string symmetry = lower(banner[4]);
    if (symmetry != "general" && symmetry != "symmetric")
        parse_fail(path, lineno, "unsupported symmetry '" + banner[4] + "'");
    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";

    Index rows = 0, cols = 0, entries = 0;
    bool have_size = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        auto tokens = split_ws(line);
        if (tokens.size() != 3 || !parse_index(tokens[0], rows) || !parse_index(tokens[1], cols) ||
            !parse_index(tokens[2], entries))
            parse_fail(path, lineno, "expected size line 'rows cols entries'");
        have_size = true;
        break;
    }
    if (!have_size) parse_fail(path, lineno, "missing size line");
    if (rows != cols) parse_fail(path, lineno, "adjacency matrix must be square");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(entries) * (symmetric ? 2 : 1));
    Index seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        auto tokens = split_ws(line);
        const std::size_t expected = pattern ? 2 : 3;
        Index i = 0, j = 0;
        double value = 1.0;
        if (tokens.size() != expected || !parse_index(tokens[0], i) || !parse_index(tokens[1], j) ||
            (!pattern && !parse_double(tokens[2], value)))
            parse_fail(path, lineno, pattern ? "expected entry 'i j'" : "expected entry 'i j value'");
        if (i < 1 || i > rows || j < 1 || j > cols)
            parse_fail(path, lineno, "entry index out of bounds");
        ++seen;
        if (seen > entries) parse_fail(path, lineno, "more entries than announced in the header");
        edges.push_back({i - 1, j - 1, value});
        if (symmetric && i != j) edges.push_back({j - 1, i - 1, value});
    }
    if (seen != entries)
        parse_fail(path, lineno, "header announced " + std::to_string(entries) + " entries, found " +
                                     std::to_string(seen));
    try {
        return build_graph(rows, edges, loop_policy, /*directed=*/!symmetric, weighted);
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(path.string() + ": " + err.what());
    }
}

Graph read_tsv(const std::filesystem::path& path, LoopPolicy loop_policy, bool weighted) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    std::vector<Edge> edges;
    Index max_node = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tokens = split_ws(line);
        Index u = 0, v = 0;
        double w = 1.0;
        if (tokens.size() < 2 || tokens.size() > 3 || !parse_index(tokens[0], u) ||
            !parse_index(tokens[1], v) || (tokens.size() == 3 && !parse_double(tokens[2], w)))
            parse_fail(path, lineno, "expected 'u<TAB>v[<TAB>weight]'");
        if (u < 0 || v < 0) parse_fail(path, lineno, "node ids must be nonnegative");
        edges.push_back({u, v, w});
        max_node = std::max({max_node, u, v});
    }
    if (max_node < 0) throw std::runtime_error(path.string() + ": no edges found");
    try {
        return build_graph(max_node + 1, edges, loop_policy, /*directed=*/true, weighted);
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(path.string() + ": " + err.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Graph read_edge_list(const std::filesystem::path& path, EdgeFileFormat format,
                     LoopPolicy loop_policy, bool weighted) {
    switch (format) {
        case EdgeFileFormat::matrix_market: return read_matrix_market(path, loop_policy, weighted);
        case EdgeFileFormat::tsv: return read_tsv(path, loop_policy, weighted);
    }
    throw std::invalid_argument("unknown edge file format");
}

void write_matrix_market(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const bool symmetric = !g.directed;
    const char* field = g.weighted ? "real" : "pattern";
    out << "%%MatrixMarket matrix coordinate " << field << ' '
        << (symmetric ? "symmetric" : "general") << '\n';
    out << "% written by cokatz " << kVersion << '\n';

    std::vector<std::pair<std::pair<Index, Index>, double>> entries;
    for (Index i = 0; i < g.n; ++i) {
        auto cols = g.adj.row_cols(i);
        auto vals = g.adj.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (symmetric && cols[k] > i) continue;  // keep the lower triangle
            entries.push_back({{i + 1, cols[k] + 1}, vals[k]});
        }
    }
    out << g.n << ' ' << g.n << ' ' << entries.size() << '\n';
    for (const auto& [ij, value] : entries) {
        out << ij.first << ' ' << ij.second;
        if (g.weighted) out << ' ' << format_double(value);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

CorrelationMatrix CorrelationMatrix::from_dense(Index n, std::vector<double> values) {
    if (n < 1 || static_cast<Index>(values.size()) != n * n)
        throw std::invalid_argument("correlation matrix: bad dimensions");
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            double v = values[i * n + j];
            if (!(v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12))
                throw std::invalid_argument("correlation entries must lie in [-1, 1]");
            if (std::abs(v - values[j * n + i]) > 1e-12)
                throw std::invalid_argument("correlation matrix must be symmetric");
        }
        if (std::abs(values[i * n + i] - 1.0) > 1e-12)
            throw std::invalid_argument("correlation matrix must have unit diagonal");
    }
    CorrelationMatrix c;
    c.n = n;
    c.values = std::move(values);
    return c;
}

CorrelationMatrix read_correlation_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            // trim spaces
            cell.erase(0, cell.find_first_not_of(" \t\r"));
            cell.erase(cell.find_last_not_of(" \t\r") + 1);
            if (!parse_double(cell, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (rows.empty()) continue;  // header row
            parse_fail(path, lineno, "non-numeric cell");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path.string() + ": no data rows");
    const Index n = static_cast<Index>(rows.size());
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<Index>(rows[i].size()) != n)
            throw std::runtime_error(path.string() + ": row " + std::to_string(i + 1) + " has " +
                                     std::to_string(rows[i].size()) + " columns, expected " +
                                     std::to_string(n));
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return CorrelationMatrix::from_dense(n, std::move(values));
}

Graph correlation_to_adjacency(const CorrelationMatrix& c, double eta, CorrelationMode mode,
                               LoopPolicy loop_policy, CorrelationSign sign) {
    if (!(eta > -1.0 && eta < 1.0))
        throw std::invalid_argument("eta must lie in (-1, 1)");
    const bool weighted = mode == CorrelationMode::weighted;
    if (weighted && sign == CorrelationSign::signed_value && eta < 0.0)
        throw std::invalid_argument("weighted thresholding needs eta >= 0 so weights stay positive");
    std::vector<Edge> edges;
    for (Index i = 0; i < c.n; ++i) {
        for (Index j = 0; j < c.n; ++j) {
            if (loop_policy == LoopPolicy::loopless && i == j) continue;
            const double value = c.at(i, j);
            const double tested = sign == CorrelationSign::absolute_value ? std::abs(value) : value;
            if (tested > eta) {
                edges.push_back({i, j, weighted ? tested : 1.0});
            }
        }
    }
    return build_graph(c.n, edges, loop_policy, /*directed=*/false, weighted);
}

void write_result(const CentralityResult& result, const std::filesystem::path& path,
                  ResultFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (format == ResultFormat::json) {
        json j;
        j["n"] = result.v.size();
        j["t"] = result.t_used;
        j["route"] = route_name(result.route);
        j["scores"] = result.v;
        j["ranking"] = result.ranking;
        j["certificates"] = result.scalar_certificates;
        out << j.dump(2) << '\n';
    } else {
        out << "node,score,rank\n";
        for (std::size_t pos = 0; pos < result.ranking.size(); ++pos) {
            Index node = result.ranking[pos];
            out << node << ',' << format_double(result.v[node]) << ',' << pos + 1 << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_result(const SufficiencyReport& report, const std::filesystem::path& path,
                  ResultFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const char* verdict = report.verdict == Verdict::certified ? "certified" : "uncertified";
    if (format == ResultFormat::json) {
        json j;
        j["epsilon"] = report.epsilon;
        j["x"] = report.x;
        j["cTw"] = report.cTw;
        j["eTw"] = report.eTw;
        j["rhs_sufficient1"] =
            std::isfinite(report.rhs_sufficient1) ? json(report.rhs_sufficient1) : json();
        j["rhs_sufficient3"] = report.rhs_sufficient3;
        j["rho_bound_ok"] = report.rho_bound_ok;
        j["cond_c_ok"] = report.cond_c_ok;
        j["cond_e_ok"] = report.cond_e_ok;
        j["verdict"] = verdict;
        j["c"] = report.c;
        out << j.dump(2) << '\n';
    } else {
        out << "key,value\n";
        out << "epsilon," << format_double(report.epsilon) << '\n';
        out << "x," << format_double(report.x) << '\n';
        out << "cTw," << format_double(report.cTw) << '\n';
        out << "eTw," << format_double(report.eTw) << '\n';
        out << "rhs_sufficient1," << format_double(report.rhs_sufficient1) << '\n';
        out << "rhs_sufficient3," << format_double(report.rhs_sufficient3) << '\n';
        out << "rho_bound_ok," << (report.rho_bound_ok ? 1 : 0) << '\n';
        out << "cond_c_ok," << (report.cond_c_ok ? 1 : 0) << '\n';
        out << "cond_e_ok," << (report.cond_e_ok ? 1 : 0) << '\n';
        out << "verdict," << verdict << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<double> read_scores(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::runtime_error(path.string() + ": empty file");

    if (content[first] == '{') {
        json j = json::parse(content);
        if (!j.contains("scores")) throw std::runtime_error(path.string() + ": no 'scores' field");
        return j["scores"].get<std::vector<double>>();
    }

    // CSV written by write_result: header node,score,rank
    std::stringstream ss(content);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<Index, double>> pairs;
    Index max_node = -1;
    while (std::getline(ss, line)) {
        ++lineno;
        if (line.empty() || line.rfind("node,", 0) == 0) continue;
        std::stringstream row(line);
        std::string node_s, score_s, rank_s;
        if (!std::getline(row, node_s, ',') || !std::getline(row, score_s, ',') ||
            !std::getline(row, rank_s))
            parse_fail(path, lineno, "expected 'node,score,rank'");
        Index node = 0;
        double score = 0.0;
        if (!parse_index(node_s, node) || !parse_double(score_s, score))
            parse_fail(path, lineno, "bad node or score");
        pairs.emplace_back(node, score);
        max_node = std::max(max_node, node);
    }
    if (pairs.empty()) throw std::runtime_error(path.string() + ": no score rows");
    std::vector<double> scores(max_node + 1, 0.0);
    for (auto [node, score] : pairs) scores[node] = score;
    return scores;
}

}  // namespace cokatz
