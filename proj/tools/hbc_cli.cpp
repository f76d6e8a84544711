// Command-line front end: generate synthetic instances, run the diffusion
// algorithms and the clique baseline, score results, and run experiment grids.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "hbc/errors.hpp"
#include "hbc/io.hpp"
#include "hbc/metrics.hpp"
#include "hbc/rate_solver.hpp"
#include "hbc/synth.hpp"

namespace {

using namespace hbc;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write(out);
  if (!out) throw DataError("write to '" + path + "' failed");
}

void emit_json(const std::string& path, const ordered_json& j) {
  emit(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

// --start clique | random:SEED | file:PATH
void apply_start(const std::string& spec, DiffusionConfig& config, std::size_t n) {
  if (spec == "clique") {
    config.start = StartKind::CliqueEigenvector;
    return;
  }
  if (spec.rfind("random:", 0) == 0) {
    const std::string digits = spec.substr(7);
    std::uint64_t seed = 0;
    std::istringstream in(digits);
    if (digits.empty() || !(in >> seed) || !in.eof()) {
      throw UsageError("--start random:SEED needs a nonnegative integer seed");
    }
    config.start = StartKind::Random;
    config.seed = seed;
    return;
  }
  if (spec.rfind("file:", 0) == 0) {
    config.start = StartKind::UserSupplied;
    config.user_start = io::parse_vector_file(spec.substr(5), n);
    return;
  }
  throw UsageError("--start must be clique, random:SEED or file:PATH");
}

struct TruthOptions {
  std::string labels;
  std::string left;
  std::string right;

  void add_to(CLI::App* cmd, const char* what) {
    cmd->add_option("--labels", labels, what);
    cmd->add_option("--left-label", left, "label of the first ground-truth cluster");
    cmd->add_option("--right-label", right, "label of the second ground-truth cluster");
  }
  Bipartition load(std::size_t n) const {
    return io::truth_from_labels(io::parse_labels_file(labels, n), left, right);
  }
};

struct RunOptions {
  std::string input;
  std::string output;
  std::string trace;
  std::string start = "clique";
  TruthOptions truth;
  bool no_timing = false;
  bool no_renormalize = false;
  bool no_events = false;
  DiffusionConfig config;
};

void add_run_command(CLI::App& app, const char* name, const char* help, Algorithm algorithm,
                     RunOptions& o, std::function<int()>& action) {
  auto* cmd = app.add_subcommand(name, help);
  cmd->add_option("hypergraph", o.input, "hypergraph file")->required();
  cmd->add_option("-o,--output", o.output, "result JSON path (default stdout)");
  o.truth.add_to(cmd, "ground-truth labels file; adds f1 and accuracy");
  cmd->add_flag("--no-timing", o.no_timing, "omit wall-clock fields for reproducible output");
  if (algorithm != Algorithm::CliqueCut) {
    cmd->add_option("--epsilon", o.config.epsilon, "step size")->capture_default_str();
    cmd->add_option("--theta", o.config.theta, "relative Rayleigh decrease threshold")
        ->capture_default_str();
    cmd->add_option("--window", o.config.window, "consecutive quiet steps to stop")
        ->capture_default_str();
    cmd->add_option("--max-steps", o.config.max_steps, "step limit")->capture_default_str();
    cmd->add_option("--max-halvings", o.config.max_halvings,
                    "halvings of a step that raises the Rayleigh quotient (0: fixed steps)")
        ->capture_default_str();
    cmd->add_option("--min-event-fraction", o.config.min_event_fraction,
                    "skip events earlier than this fraction of the step")
        ->capture_default_str();
    cmd->add_flag("--no-events", o.no_events, "do not cut steps where edge extremes change");
    cmd->add_flag("--no-renormalize", o.no_renormalize, "keep the unnormalised iterate");
    cmd->add_option("--start", o.start, "clique, random:SEED or file:PATH")->capture_default_str();
    cmd->add_option("--trace", o.trace, "write the per-step trajectory as CSV");
  }
  cmd->callback([&, algorithm] {
    action = [&, algorithm] {
      const Hypergraph h = io::parse_hypergraph_file(o.input);
      DiffusionConfig config = o.config;
      config.renormalize = !o.no_renormalize;
      config.stop_at_events = !o.no_events;
      if (algorithm != Algorithm::CliqueCut) apply_start(o.start, config, h.num_vertices());
      try {
        config.validate();
      } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
      }
      auto run = run_algorithm(h, algorithm, config);
      if (!o.truth.labels.empty()) score_against(run.record, o.truth.load(h.num_vertices()));
      if (!o.trace.empty() && run.trajectory) {
        emit(o.trace, [&](std::ostream& out) { io::write_trace_csv(out, *run.trajectory, !o.no_timing); });
      }
      emit_json(o.output, io::to_json(run.record, !o.no_timing));
      return int{kOk};
    };
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Bipartite components in hypergraphs by nonlinear diffusion"};
  app.require_subcommand(1);
  std::function<int()> action;

  // generate
  ModelParams model;
  std::string gen_out, gen_labels;
  auto* gen = app.add_subcommand("generate", "sample the two-cluster random hypergraph model");
  gen->add_option("--n", model.n, "number of vertices (even)")->required();
  gen->add_option("--r", model.r, "edge rank")->capture_default_str();
  gen->add_option("--p", model.p, "probability of an edge inside one cluster")->required();
  gen->add_option("--q", model.q, "probability of any other edge")->required();
  gen->add_option("--seed", model.seed, "random seed")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "hypergraph file (default stdout)");
  gen->add_option("--labels", gen_labels, "write ground-truth labels here");
  gen->callback([&] {
    action = [&] {
      try {
        model.validate();
      } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
      }
      const auto inst = generate(model);
      emit(gen_out, [&](std::ostream& out) { io::write_hypergraph(out, inst.hypergraph); });
      if (!gen_labels.empty()) {
        emit(gen_labels, [&](std::ostream& out) { io::write_labels(out, inst.truth); });
      }
      return int{kOk};
    };
  });

  RunOptions fbc_opts, fbca_opts, cc_opts;
  add_run_command(app, "fbc", "exact diffusion with LP-computed rates, then sweep",
                  Algorithm::FBC, fbc_opts, action);
  add_run_command(app, "fbca", "approximate diffusion with even weight splitting, then sweep",
                  Algorithm::FBCA, fbca_opts, action);
  add_run_command(app, "cliquecut", "sweep the clique reduction's minimum eigenvector",
                  Algorithm::CliqueCut, cc_opts, action);

  // eval
  std::string eval_result, eval_out;
  TruthOptions eval_truth;
  auto* ev = app.add_subcommand("eval", "score a result record against ground-truth labels");
  ev->add_option("result", eval_result, "result JSON written by fbc, fbca or cliquecut")->required();
  ev->add_option("labels", eval_truth.labels, "labels file")->required();
  ev->add_option("--left-label", eval_truth.left, "label of the first ground-truth cluster");
  ev->add_option("--right-label", eval_truth.right, "label of the second ground-truth cluster");
  ev->add_option("-o,--output", eval_out, "output JSON path (default stdout)");
  ev->callback([&] {
    action = [&] {
      std::ifstream in(eval_result);
      if (!in) throw DataError("cannot open '" + eval_result + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& ex) {
        throw DataError(eval_result + ": " + ex.what());
      }
      const ResultRecord rec = io::result_from_json(j);
      const auto labels = io::parse_labels_file(eval_truth.labels, rec.num_vertices);
      const Bipartition truth = io::truth_from_labels(labels, eval_truth.left, eval_truth.right);
      const auto f1 = f1_pair(rec.part, truth);
      // Name the truth clusters as the labels file does.
      const std::string left = labels.label.at(truth.left.front());
      const std::string right = labels.label.at(truth.right.front());
      ordered_json clusters = ordered_json::array();
      const double f1_left = f1.swapped ? f1.second : f1.first;
      const double f1_right = f1.swapped ? f1.first : f1.second;
      clusters.push_back({{"label", left}, {"size", truth.left.size()}, {"f1", f1_left},
                          {"matched", f1.swapped ? "R" : "L"}});
      clusters.push_back({{"label", right}, {"size", truth.right.size()}, {"f1", f1_right},
                          {"matched", f1.swapped ? "L" : "R"}});
      ordered_json out;
      out["algorithm"] = rec.algorithm;
      out["matching"] = f1.swapped ? "swapped" : "identity";
      out["clusters"] = clusters;
      out["f1_mean"] = f1.mean;
      out["accuracy"] = accuracy(rec.part, truth, rec.num_vertices);
      out["beta_hyper"] = rec.beta_hyper;
      emit_json(eval_out, out);
      return int{kOk};
    };
  });

  // experiment
  std::string grid_path, exp_json, exp_csv;
  int jobs = 1;
  bool exp_no_timing = false;
  auto* ex = app.add_subcommand("experiment", "run a synthetic grid and aggregate the results");
  ex->add_option("grid", grid_path, "grid spec JSON")->required();
  ex->add_option("-o,--output", exp_json, "aggregated JSON path (default stdout)");
  ex->add_option("--csv", exp_csv, "also write the summary table as CSV");
  ex->add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  ex->add_flag("--no-timing", exp_no_timing, "omit wall-clock columns");
  ex->callback([&] {
    action = [&] {
      std::ifstream in(grid_path);
      if (!in) throw DataError("cannot open '" + grid_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw DataError(grid_path + ": " + e.what());
      }
      const auto result = run_experiment(io::parse_grid(j), jobs);
      if (!exp_csv.empty()) {
        emit(exp_csv, [&](std::ostream& out) { io::write_experiment_csv(out, result, !exp_no_timing); });
      }
      emit_json(exp_json, io::experiment_json(result, !exp_no_timing));
      return int{kOk};
    };
  });

  // rate
  std::string rate_h, rate_vec, rate_out;
  auto* rate = app.add_subcommand("rate", "rate vector at f with its assignment trace and rule check");
  rate->add_option("hypergraph", rate_h, "hypergraph file")->required();
  rate->add_option("--vector", rate_vec, "file with one value of f per vertex")->required();
  rate->add_option("-o,--output", rate_out, "output JSON path (default stdout)");
  rate->callback([&] {
    action = [&] {
      const Hypergraph h = io::parse_hypergraph_file(rate_h);
      const auto f = io::parse_vector_file(rate_vec, h.num_vertices());
      const auto result = compute_rate(h, f);
      const auto flow = decompose_flow(h, f, result);
      const auto report = check_rules(h, f, result, flow);
      ordered_json j = io::rate_trace_json(result);
      j["rayleigh"] = discrepancy_ratio(h, f);
      ordered_json rules;
      rules["rule1_error"] = report.rule1_error;
      rules["rule2_violations"] = report.rule2_violations;
      rules["vertex_sum_error"] = report.vertex_sum_error;
      rules["norm_identity_error"] = report.norm_identity_error;
      rules["rayleigh_error"] = report.rayleigh_error;
      j["rules"] = rules;
      emit_json(rate_out, j);
      return int{kOk};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
