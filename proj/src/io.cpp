#include "hbc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hbc/errors.hpp"
#include "hbc/synth.hpp"

namespace hbc::io {

using nlohmann::json;
using nlohmann::ordered_json;

std::string parse_error_prefix(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool skippable(std::string_view line) {
  const auto t = tokens(line);
  return t.empty() || t.front().front() == '%';
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  const auto* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, value);
  return res.ec == std::errc() && res.ptr == end;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json ids_json(const VertexSet& vs) {
  json a = json::array();
  for (VertexId v : vs) a.push_back(static_cast<std::uint64_t>(v) + 1);
  return a;
}

std::string start_name(const DiffusionConfig& c) {
  switch (c.start) {
    case StartKind::CliqueEigenvector: return "clique";
    case StartKind::Random: return "random:" + std::to_string(c.seed);
    case StartKind::UserSupplied: return "file";
  }
  return "?";
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw DataError(parse_error_prefix(source, lineno) + msg);
  };

  bool header = false;
  std::size_t m = 0, n = 0;
  int fmt = 0;
  std::vector<Hypergraph::Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto t = tokens(line);
    if (!header) {
      if (t.size() < 2 || t.size() > 3) fail("header must be '<num_edges> <num_vertices> [fmt]'");
      if (!parse_number(t[0], m) || !parse_number(t[1], n)) fail("malformed header counts");
      if (t.size() == 3 && !parse_number(t[2], fmt)) fail("malformed header fmt");
      if (fmt != 0 && fmt != 1) fail("unsupported fmt " + std::to_string(fmt) + " (expected 0 or 1)");
      if (n == 0) fail("hypergraph needs at least one vertex");
      header = true;
      continue;
    }
    if (edges.size() == m) fail("more edge lines than the declared " + std::to_string(m));
    Hypergraph::Edge e;
    std::size_t first = 0;
    if (fmt == 1) {
      if (t.empty() || !parse_number(t[0], e.weight)) fail("malformed edge weight");
      if (!std::isfinite(e.weight) || !(e.weight > 0.0)) fail("edge weight must be positive");
      first = 1;
    }
    for (std::size_t k = first; k < t.size(); ++k) {
      std::uint64_t id = 0;
      if (!parse_number(t[k], id)) fail("malformed vertex id '" + std::string(t[k]) + "'");
      if (id < 1 || id > n) {
        fail("vertex id " + std::to_string(id) + " out of range 1.." + std::to_string(n));
      }
      e.vertices.push_back(static_cast<VertexId>(id - 1));
    }
    if (e.vertices.size() < 2) fail("edge needs at least two vertices");
    auto sorted = e.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail("duplicate vertex within edge");
    }
    edges.push_back(std::move(e));
  }
  if (!header) fail("missing header");
  if (edges.size() != m) {
    fail("declared " + std::to_string(m) + " edges but found " + std::to_string(edges.size()));
  }
  return Hypergraph(n, edges);
}

Hypergraph parse_hypergraph_file(const std::string& path) {
  auto in = open_in(path);
  return parse_hypergraph(in, path);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  bool weighted = false;
  for (double w : h.weights()) weighted |= w != 1.0;
  out << h.num_edges() << ' ' << h.num_vertices() << ' ' << (weighted ? 1 : 0) << '\n';
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    std::string line;
    if (weighted) line = fmt_double(h.weight(e));
    for (VertexId v : h.edge(e)) {
      if (!line.empty()) line += ' ';
      line += std::to_string(static_cast<std::uint64_t>(v) + 1);
    }
    out << line << '\n';
  }
}

void write_hypergraph_file(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_hypergraph(out, h);
}

Labels parse_labels(std::istream& in, std::size_t num_vertices, const std::string& source) {
  Labels out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto t = tokens(line);
    std::uint64_t id = 0;
    if (t.size() != 2 || !parse_number(t[0], id)) {
      throw DataError(parse_error_prefix(source, lineno) + "expected '<vertex-id> <label>'");
    }
    if (id < 1 || id > num_vertices) {
      throw DataError(parse_error_prefix(source, lineno) + "vertex id " + std::to_string(id) +
                      " out of range 1.." + std::to_string(num_vertices));
    }
    if (!out.label.emplace(static_cast<VertexId>(id - 1), std::string(t[1])).second) {
      throw DataError(parse_error_prefix(source, lineno) + "vertex " + std::to_string(id) +
                      " labelled twice");
    }
  }
  return out;
}

Labels parse_labels_file(const std::string& path, std::size_t num_vertices) {
  auto in = open_in(path);
  return parse_labels(in, num_vertices, path);
}

void write_labels(std::ostream& out, const Bipartition& truth, const std::string& left_label,
                  const std::string& right_label) {
  std::vector<std::pair<VertexId, const std::string*>> rows;
  for (VertexId v : truth.left) rows.emplace_back(v, &left_label);
  for (VertexId v : truth.right) rows.emplace_back(v, &right_label);
  std::sort(rows.begin(), rows.end());
  for (const auto& [v, label] : rows) out << static_cast<std::uint64_t>(v) + 1 << ' ' << *label << '\n';
}

Bipartition truth_from_labels(const Labels& labels, const std::string& left_label,
                              const std::string& right_label) {
  std::string a = left_label, b = right_label;
  if (a.empty() || b.empty()) {
    std::set<std::string> names;
    for (const auto& [v, l] : labels.label) names.insert(l);
    if (names.size() != 2) {
      throw DataError("labels: expected exactly two distinct labels, found " +
                      std::to_string(names.size()) + "; name the two clusters explicitly");
    }
    a = *names.begin();
    b = *names.rbegin();
  }
  Bipartition out;
  for (const auto& [v, l] : labels.label) {
    if (l == a) out.left.push_back(v);
    if (l == b) out.right.push_back(v);
  }
  if (out.left.empty() || out.right.empty()) {
    throw DataError("labels: cluster '" + (out.left.empty() ? a : b) + "' is empty");
  }
  return out;
}

VertexVector parse_vector(std::istream& in, std::size_t expected_size, const std::string& source) {
  VertexVector out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto t = tokens(line);
    double x = 0.0;
    if (t.size() != 1 || !parse_number(t[0], x) || !std::isfinite(x)) {
      throw DataError(parse_error_prefix(source, lineno) + "expected one finite number");
    }
    out.push_back(x);
  }
  if (out.size() != expected_size) {
    throw DataError(source + ": expected " + std::to_string(expected_size) + " values, found " +
                    std::to_string(out.size()));
  }
  return out;
}

VertexVector parse_vector_file(const std::string& path, std::size_t expected_size) {
  auto in = open_in(path);
  return parse_vector(in, expected_size, path);
}

ordered_json to_json(const ResultRecord& r, bool include_timing) {
  ordered_json j;
  j["algorithm"] = r.algorithm;
  ordered_json params;
  if (r.algorithm == "CliqueCut") {
    params["eigen_tolerance"] = r.config.eigen_tolerance;
  } else {
    params["epsilon"] = r.config.epsilon;
    params["theta"] = r.config.theta;
    params["window"] = r.config.window;
    params["max_steps"] = r.config.max_steps;
    params["renormalize"] = r.config.renormalize;
    params["max_halvings"] = r.config.max_halvings;
    params["stop_at_events"] = r.config.stop_at_events;
    params["min_event_fraction"] = r.config.min_event_fraction;
    params["start"] = start_name(r.config);
  }
  j["parameters"] = params;
  j["num_vertices"] = r.num_vertices;
  j["L"] = ids_json(r.part.left);
  j["R"] = ids_json(r.part.right);
  j["beta_hyper"] = r.beta_hyper;
  j["beta_graph"] = r.beta_graph;
  j["lambda"] = r.lambda;
  if (r.algorithm != "CliqueCut") {
    const double bound = std::sqrt(2.0 * std::max(r.lambda, 0.0));
    j["cheeger_bound"] = bound;
    j["cheeger_holds"] = r.beta_hyper <= bound + 1e-6;
  }
  j["f1"] = r.f1 ? json(*r.f1) : json(nullptr);
  j["accuracy"] = r.accuracy ? json(*r.accuracy) : json(nullptr);
  j["steps"] = r.steps;
  j["converged"] = r.converged;
  if (include_timing) j["seconds"] = r.seconds;
  return j;
}

ResultRecord result_from_json(const json& j) {
  try {
    ResultRecord r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.num_vertices = j.at("num_vertices").get<std::size_t>();
    auto ids = [&](const char* key) {
      VertexSet out;
      for (const auto& x : j.at(key)) {
        const auto id = x.get<std::uint64_t>();
        if (id < 1 || id > r.num_vertices) throw DataError("result: vertex id out of range");
        out.push_back(static_cast<VertexId>(id - 1));
      }
      return out;
    };
    r.part.left = ids("L");
    r.part.right = ids("R");
    r.beta_hyper = j.value("beta_hyper", 0.0);
    r.beta_graph = j.value("beta_graph", 0.0);
    r.lambda = j.value("lambda", 0.0);
    r.steps = j.value("steps", std::size_t{0});
    r.converged = j.value("converged", true);
    r.seconds = j.value("seconds", 0.0);
    return r;
  } catch (const json::exception& ex) {
    throw DataError(std::string("result: ") + ex.what());
  }
}

void write_trace_csv(std::ostream& out, const DiffusionState& s, bool include_timing) {
  out << "step,R,rnorm_w,step_size" << (include_timing ? ",seconds" : "") << '\n';
  for (std::size_t t = 0; t < s.rayleigh.size(); ++t) {
    out << t << ',' << fmt_double(s.rayleigh[t]) << ',';
    if (t < s.rate_norm.size()) out << fmt_double(s.rate_norm[t]);
    out << ',';
    if (t < s.step_size.size()) out << fmt_double(s.step_size[t]);
    if (include_timing) out << ',' << fmt_double(t == 0 ? 0.0 : s.seconds[t - 1]);
    out << '\n';
  }
}

ordered_json rate_trace_json(const RateResult& rate) {
  ordered_json steps = ordered_json::array();
  for (const auto& step : rate.trace) {
    ordered_json s;
    s["class"] = step.class_index;
    s["P"] = ids_json(step.assigned);
    s["delta"] = step.delta;
    s["C"] = step.net_flow;
    ordered_json consumed = ordered_json::array();
    for (const auto& role : step.consumed) {
      ordered_json c;
      c["edge"] = role.edge + 1;
      c["role"] = std::string(role.side == Side::Max ? "S" : "I") + (role.inflow ? "+" : "-");
      c["cost"] = role.cost;
      consumed.push_back(c);
    }
    s["consumed"] = consumed;
    steps.push_back(s);
  }
  ordered_json j;
  j["rate"] = rate.rate;
  j["trace"] = steps;
  return j;
}

void write_experiment_csv(std::ostream& out, const ExperimentResult& result, bool include_timing) {
  out << "n,r,p,q,algorithm,trials,mean_edges,beta_hyper_mean,beta_hyper_stderr,"
         "beta_graph_mean,beta_graph_stderr,f1_mean,f1_stderr";
  if (include_timing) out << ",seconds_mean,seconds_stderr";
  out << '\n';
  for (const auto& row : result.summary) {
    out << row.n << ',' << row.r << ',' << fmt_double(row.p) << ',' << fmt_double(row.q) << ','
        << row.algorithm << ',' << row.trials << ',' << fmt_double(row.mean_edges);
    for (const Summary* s : {&row.beta_hyper, &row.beta_graph, &row.f1}) {
      out << ',' << fmt_double(s->mean) << ',' << fmt_double(s->stderr_);
    }
    if (include_timing) {
      out << ',' << fmt_double(row.seconds.mean) << ',' << fmt_double(row.seconds.stderr_);
    }
    out << '\n';
  }
}

ordered_json experiment_json(const ExperimentResult& result, bool include_timing) {
  auto summary_json = [&](const Summary& s) {
    ordered_json j;
    j["mean"] = s.mean;
    j["stderr"] = s.stderr_;
    return j;
  };
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.summary) {
    ordered_json j;
    j["n"] = row.n;
    j["r"] = row.r;
    j["p"] = row.p;
    j["q"] = row.q;
    j["algorithm"] = row.algorithm;
    j["trials"] = row.trials;
    j["mean_edges"] = row.mean_edges;
    j["beta_hyper"] = summary_json(row.beta_hyper);
    j["beta_graph"] = summary_json(row.beta_graph);
    j["f1"] = summary_json(row.f1);
    if (include_timing) j["seconds"] = summary_json(row.seconds);
    rows.push_back(j);
  }
  ordered_json trials = ordered_json::array();
  for (const auto& t : result.trials) {
    ordered_json j;
    j["q"] = t.q;
    j["trial"] = t.trial;
    j["seed"] = t.seed;
    j["algorithm"] = t.algorithm;
    j["num_edges"] = t.num_edges;
    j["beta_hyper"] = t.beta_hyper;
    j["beta_graph"] = t.beta_graph;
    j["f1"] = t.f1;
    j["steps"] = t.steps;
    j["converged"] = t.converged;
    if (include_timing) j["seconds"] = t.seconds;
    trials.push_back(j);
  }
  ordered_json out;
  out["summary"] = rows;
  out["trials"] = trials;
  return out;
}

ExperimentGrid parse_grid(const json& j) {
  try {
    ExperimentGrid g;
    g.n = j.value("n", g.n);
    g.r = j.value("r", g.r);
    g.p = j.value("p", g.p);
    if (j.contains("q_ratios")) g.q_ratios = j.at("q_ratios").get<std::vector<double>>();
    g.trials = j.value("trials", g.trials);
    g.base_seed = j.value("base_seed", g.base_seed);
    if (j.contains("algorithms")) {
      g.algorithms.clear();
      for (const auto& a : j.at("algorithms")) g.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    g.config.epsilon = j.value("epsilon", g.config.epsilon);
    g.config.theta = j.value("theta", g.config.theta);
    g.config.max_steps = j.value("max_steps", g.config.max_steps);
    g.config.window = j.value("window", g.config.window);
    g.config.max_halvings = j.value("max_halvings", g.config.max_halvings);
    g.config.stop_at_events = j.value("stop_at_events", g.config.stop_at_events);
    g.config.min_event_fraction = j.value("min_event_fraction", g.config.min_event_fraction);
    g.config.validate();
    if (g.q_ratios.empty()) throw DataError("grid: q_ratios is empty");
    ModelParams{g.n, g.r, g.p, 0.0, 0}.validate();
    for (double ratio : g.q_ratios) ModelParams{g.n, g.r, g.p, ratio * g.p, 0}.validate();
    return g;
  } catch (const json::exception& ex) {
    throw DataError(std::string("grid: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw DataError(std::string("grid: ") + ex.what());
  }
}

}  // namespace hbc::io
