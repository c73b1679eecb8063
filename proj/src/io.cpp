#include "specnet/io.hpp"

#include "specnet/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace specnet {

using nlohmann::json;

namespace {

constexpr std::string_view kWeightsPlaceholder = "\"@@specnet-weights@@\"";

std::string weights_array(const Matrix& w) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (i || j) out += ", ";
      out += format_double(w(i, j));
    }
  }
  out += "]";
  return out;
}

// Serializes `doc` with the weights placeholder swapped for a 17-digit array.
std::string dump_with_weights(const json& doc, const Matrix& w) {
  std::string text = doc.dump(2);
  const auto at = text.find(kWeightsPlaceholder);
  if (at != std::string::npos) {
    text.replace(at, kWeightsPlaceholder.size(), weights_array(w));
  }
  return text + "\n";
}

json graph_object(int n, const json& metadata) {
  json g = json::object();
  g["n"] = n;
  g["weights"] = std::string(kWeightsPlaceholder.substr(1, kWeightsPlaceholder.size() - 2));
  g["metadata"] = metadata;
  return g;
}

json record_json(const StartRecord& r) {
  json j;
  j["seed"] = r.seed;
  j["objective"] = r.objective;
  j["lambda2"] = r.lambda2;
  j["outer_iterations"] = r.outer_iterations;
  j["converged"] = r.converged;
  j["failed"] = r.failed;
  j["stop_reason"] = stop_reason_name(r.stop);
  j["max_violation"] = r.max_violation;
  j["final_rho"] = r.final_rho;
  j["degenerate_linearizations"] = r.degenerate_linearizations;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

json config_json(const SolverConfig& c, int n) {
  json j;
  j["outer_tol"] = c.outer_tol;
  j["outer_max_iter"] = c.outer_max_iter;
  j["inner_tol"] = c.inner_tol;
  j["inner_max_iter"] = c.inner_max_iter;
  j["inner_patience"] = c.inner_patience;
  j["penalty_rho"] = c.rho_for(n);
  j["penalty_doublings"] = c.penalty_doublings;
  j["step_rule"] = c.step_rule.describe();
  j["step_eta0"] = c.eta0_for(n);
  j["feasibility_tol"] = c.feasibility_tol;
  j["smoothing_mu0"] = c.smoothing_mu0;
  j["smoothing_decay"] = c.smoothing_decay;
  j["smoothing_floor"] = c.smoothing_floor;
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string graph_to_json(const WeightMatrix& w, const json& metadata) {
  return dump_with_weights(graph_object(w.n(), metadata), w.weights());
}

GraphFile graph_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Status::invalid_argument, std::string("graph JSON: ") + e.what());
  }
  if (doc.is_object() && !doc.contains("weights") && doc.contains("graph")) {
    doc = doc["graph"];
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("weights")) {
    throw Error(Status::invalid_argument, "graph JSON needs \"n\" and \"weights\"");
  }
  if (!doc["n"].is_number_integer()) {
    throw Error(Status::invalid_argument, "graph JSON \"n\" must be an integer");
  }
  const auto n = doc["n"].get<long long>();
  const json& weights = doc["weights"];
  if (n < 2 || !weights.is_array() || static_cast<long long>(weights.size()) != n * n) {
    throw Error(Status::invalid_argument, "graph JSON \"weights\" must hold n*n values, n >= 2");
  }
  Matrix w(n, n);
  for (long long k = 0; k < n * n; ++k) {
    if (!weights[k].is_number()) {
      throw Error(Status::invalid_argument, "graph JSON weights must be numbers");
    }
    w(k / n, k % n) = weights[k].get<double>();
  }
  GraphFile out{WeightMatrix(std::move(w))};
  if (doc.contains("metadata") && doc["metadata"].is_object()) out.metadata = doc["metadata"];
  return out;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(Status::invalid_argument, "matrix CSV: bad value '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const auto n = rows.size();
  if (n == 0) throw Error(Status::invalid_argument, "matrix CSV is empty");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(Status::invalid_argument, "matrix CSV must be square");
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string result_to_json(const DesignResult& r, const json& seeds) {
  const int n = r.problem.n();
  json doc;
  doc["library"] = "specnet";
  doc["version"] = kVersion;
  doc["problem"] = {{"n", n}, {"ell", r.problem.ell()}, {"m", r.problem.m()}};
  doc["config"] = config_json(r.config, n);
  doc["seeds"] = seeds;
  doc["objective"] = r.objective;
  doc["lambda2"] = r.lambda2;
  doc["bound"] = r.bound;
  doc["ratio"] = r.ratio;
  doc["best_seed"] = r.best_seed;
  doc["diagonal_mass"] = r.w_best.diagonal_mass();
  json starts = json::array();
  for (const auto& s : r.starts) starts.push_back(record_json(s));
  doc["starts"] = std::move(starts);
  json meta = {{"source", "design"}, {"n", n}, {"ell", r.problem.ell()},
               {"m", r.problem.m()}, {"seed", r.best_seed}};
  doc["graph"] = graph_object(n, meta);
  doc["wall_time_seconds"] = r.wall_time.count();
  return dump_with_weights(doc, r.w_best.weights());
}

std::string trace_csv(const DesignResult& r) {
  std::string out = "seed,iteration,objective\n";
  for (const auto& s : r.starts) {
    for (std::size_t t = 0; t < s.trace.size(); ++t) {
      out += std::to_string(s.seed) + ',' + std::to_string(t) + ',' + format_double(s.trace[t]) + '\n';
    }
  }
  return out;
}

std::string clustering_to_json(const Clustering& c) {
  json doc;
  doc["count"] = c.count();
  doc["assignment"] = c.assignment;
  doc["intra_mass"] = c.intra_mass;
  doc["method"] = c.method;
  return doc.dump(2) + "\n";
}

Clustering clustering_from_json(std::string_view text, const WeightMatrix& w) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Status::invalid_argument, std::string("clustering JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("assignment") || !doc["assignment"].is_array()) {
    throw Error(Status::invalid_argument, "clustering JSON needs an \"assignment\" array");
  }
  std::vector<int> assignment;
  for (const json& id : doc["assignment"]) {
    if (!id.is_number_integer()) {
      throw Error(Status::invalid_argument, "clustering ids must be integers");
    }
    assignment.push_back(id.get<int>());
  }
  std::string method = doc.value("method", std::string("file"));
  return make_clustering(w, assignment, std::move(method));
}

std::string fans_to_json(const FanSet& f) {
  json fans = json::array();
  for (const Fan& fan : f.fans) {
    json ties = json::array();
    for (const auto& [node, weight] : fan.ties) ties.push_back({{"node", node}, {"weight", weight}});
    fans.push_back({{"liaison", fan.liaison},
                    {"home", fan.home},
                    {"target", fan.target},
                    {"total_weight", fan.total_weight()},
                    {"ties", std::move(ties)}});
  }
  return json{{"fans", std::move(fans)}}.dump(2) + "\n";
}

std::string condensed_to_json(const CondensedGraph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  json doc;
  doc["clusters"] = g.clusters;
  doc["edges"] = std::move(edges);
  doc["is_dag"] = g.is_dag;
  doc["out_degrees"] = g.out_degrees();
  return doc.dump(2) + "\n";
}

std::string comparison_csv(const SpectraComparison& c) {
  std::string out = "name";
  for (int k = 1; k <= c.n; ++k) out += ",lambda_" + std::to_string(k);
  out += ",objective,lambda2,mixing_deviation,modularity_deviation\n";
  auto row = [&](const std::string& name, const Vector& values, double obj, double l2,
                 double mix, double mod) {
    out += name;
    for (Eigen::Index k = 0; k < values.size(); ++k) out += ',' + format_double(values[k]);
    out += ',' + format_double(obj) + ',' + format_double(l2) + ',' + format_double(mix) + ',' +
           format_double(mod) + '\n';
  };
  for (const auto& r : c.rows) {
    row(r.name, r.values, r.objective, r.lambda2, r.mixing_deviation, r.modularity_deviation);
  }
  row("ideal", c.ideal, c.bound, c.ideal.size() > 1 ? c.ideal[1] : 0.0, 0.0, 0.0);
  return out;
}

std::string graph_to_dot(const WeightMatrix& w, const Clustering* c, double display_threshold) {
  const int n = w.n();
  double max_off = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) max_off = std::max(max_off, w(i, j));
  }
  std::ostringstream os;
  os << "graph specnet {\n  node [shape=circle];\n";
  if (c != nullptr) {
    const auto members = c->members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      os << "  subgraph cluster_" << k << " {\n    label=\"team " << k << "\";\n";
      for (int v : members[k]) os << "    " << v << ";\n";
      os << "  }\n";
    }
  } else {
    for (int v = 0; v < n; ++v) os << "  " << v << ";\n";
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double x = w(i, j);
      if (x <= 0 || x < display_threshold) continue;
      const double pen = max_off > 0 ? 0.25 + 4.75 * x / max_off : 1.0;
      char buf[96];
      std::snprintf(buf, sizeof buf, "  %d -- %d [penwidth=%.3f, weight=%.6g];\n", i, j, pen, x);
      os << buf;
    }
  }
  os << "}\n";
  return os.str();
}

std::string condensed_to_dot(const CondensedGraph& g) {
  std::ostringstream os;
  os << "digraph condensed {\n  node [shape=box];\n";
  for (int k = 0; k < g.clusters; ++k) os << "  t" << k << " [label=\"team " << k << "\"];\n";
  for (auto [a, b] : g.edges) os << "  t" << a << " -> t" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Status::io, "cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Status::io, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(Status::io, "failed writing '" + path + "'");
}

}  // namespace specnet
