#pragma once

#include "specnet/analysis.hpp"
#include "specnet/graph.hpp"
#include "specnet/optimizer.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace specnet {

inline constexpr const char* kVersion = "0.1.0";

struct GraphFile {
  WeightMatrix w;
  nlohmann::json metadata = nlohmann::json::object();
};

/// {"n": int, "weights": [n*n row-major, 17 significant digits], "metadata": {...}}
std::string graph_to_json(const WeightMatrix& w,
                          const nlohmann::json& metadata = nlohmann::json::object());

/// Accepts a graph document or a design result document (its "graph" member).
GraphFile graph_from_json(std::string_view text);

/// n rows of n comma-separated values, no header.
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(std::string_view text);

/// Seed provenance is echoed verbatim under "seeds".
std::string result_to_json(const DesignResult& r, const nlohmann::json& seeds);

/// seed,iteration,objective
std::string trace_csv(const DesignResult& r);

std::string clustering_to_json(const Clustering& c);
/// Reads the "assignment" array written by clustering_to_json.
Clustering clustering_from_json(std::string_view text, const WeightMatrix& w);
std::string fans_to_json(const FanSet& f);
std::string condensed_to_json(const CondensedGraph& g);

/// name,lambda_1..lambda_n,objective,lambda2,mixing_deviation,modularity_deviation
/// with a final "ideal" row for the bound spectrum.
std::string comparison_csv(const SpectraComparison& c);

/// Undirected DOT; nodes grouped by cluster when `c` is given, pen width
/// proportional to weight, ties below display_threshold omitted.
std::string graph_to_dot(const WeightMatrix& w, const Clustering* c,
                         double display_threshold);
std::string condensed_to_dot(const CondensedGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// %.17g
std::string format_double(double x);

}  // namespace specnet
