#include "hbc/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "hbc/errors.hpp"
#include "hbc/reductions.hpp"
#include "hbc/sweep.hpp"
#include "hbc/synth.hpp"

namespace hbc {

namespace {

std::size_t overlap(const VertexSet& a, const VertexSet& b) {
  VertexSet x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  VertexSet both;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
  return both.size();
}

double f1(const VertexSet& found, const VertexSet& truth) {
  const auto hit = static_cast<double>(overlap(found, truth));
  if (found.empty() || hit == 0.0) return 0.0;
  const double precision = hit / static_cast<double>(found.size());
  const double recall = hit / static_cast<double>(truth.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

F1Result f1_pair(const Bipartition& candidate, const Bipartition& truth) {
  if (truth.left.empty() || truth.right.empty()) {
    throw std::invalid_argument("f1: truth sets must be nonempty");
  }
  F1Result same{f1(candidate.left, truth.left), f1(candidate.right, truth.right), 0.0, false};
  same.mean = 0.5 * (same.first + same.second);
  F1Result swap{f1(candidate.left, truth.right), f1(candidate.right, truth.left), 0.0, true};
  swap.mean = 0.5 * (swap.first + swap.second);
  return swap.mean > same.mean ? swap : same;
}

double accuracy(const Bipartition& candidate, const Bipartition& truth, std::size_t num_vertices) {
  if (num_vertices == 0) throw std::invalid_argument("accuracy: no vertices");
  const auto same = overlap(candidate.left, truth.left) + overlap(candidate.right, truth.right);
  const auto swap = overlap(candidate.left, truth.right) + overlap(candidate.right, truth.left);
  return static_cast<double>(std::max(same, swap)) / static_cast<double>(num_vertices);
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::FBC: return "FBC";
    case Algorithm::FBCA: return "FBCA";
    case Algorithm::CliqueCut: return "CliqueCut";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "fbc") return Algorithm::FBC;
  if (s == "fbca") return Algorithm::FBCA;
  if (s == "cc" || s == "cliquecut") return Algorithm::CliqueCut;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

AlgorithmRun run_algorithm(const Hypergraph& h, Algorithm algorithm, const DiffusionConfig& config) {
  using Clock = std::chrono::steady_clock;
  AlgorithmRun out;
  ResultRecord& rec = out.record;
  rec.algorithm = algorithm_name(algorithm);
  rec.config = config;
  rec.num_vertices = h.num_vertices();

  const auto t0 = Clock::now();
  if (algorithm == Algorithm::CliqueCut) {
    const auto cc = clique_cut(h, config.eigen_tolerance);
    rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rec.part = cc.part;
    rec.beta_hyper = cc.beta_hyper;
    rec.beta_graph = cc.beta_graph;
    rec.lambda = cc.eigenvalue;
    return out;
  }
  DiffusionResult res = algorithm == Algorithm::FBC ? run_fbc(h, config) : run_fbca(h, config);
  const SweepResult sweep = sweep_hyper(h, res.state.f);
  rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  rec.part = sweep.part;
  rec.beta_hyper = sweep.beta;
  rec.beta_graph = beta_graph(clique_reduce(h), sweep.part);
  rec.lambda = res.lambda;
  rec.steps = res.state.step;
  rec.converged = res.converged;
  out.trajectory = std::move(res.state);
  return out;
}

void score_against(ResultRecord& record, const Bipartition& truth) {
  record.f1 = f1_pair(record.part, truth).mean;
  record.accuracy = accuracy(record.part, truth, record.num_vertices);
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  const auto k = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= k;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_ = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
  }
  return s;
}

ExperimentResult run_experiment(const ExperimentGrid& grid, int jobs) {
  if (grid.trials == 0) throw std::invalid_argument("experiment: trials must be positive");
  if (grid.algorithms.empty()) throw std::invalid_argument("experiment: no algorithms");
  grid.config.validate();
  const std::size_t points = grid.q_ratios.size();
  const std::size_t algs = grid.algorithms.size();
  const std::size_t tasks = points * grid.trials;
  std::vector<TrialRecord> records(tasks * algs);
  std::vector<std::exception_ptr> errors(tasks);

#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks); ++t) {
    const std::size_t point = static_cast<std::size_t>(t) / grid.trials;
    const std::size_t trial = static_cast<std::size_t>(t) % grid.trials;
    try {
      ModelParams params{grid.n, grid.r, grid.p, grid.q_ratios[point] * grid.p,
                         grid.base_seed + trial};
      const auto inst = generate(params);
      for (std::size_t a = 0; a < algs; ++a) {
        auto run = run_algorithm(inst.hypergraph, grid.algorithms[a], grid.config);
        TrialRecord& rec = records[static_cast<std::size_t>(t) * algs + a];
        rec.q = params.q;
        rec.trial = trial;
        rec.seed = params.seed;
        rec.algorithm = run.record.algorithm;
        rec.num_edges = inst.hypergraph.num_edges();
        rec.beta_hyper = run.record.beta_hyper;
        rec.beta_graph = run.record.beta_graph;
        rec.f1 = f1_pair(run.record.part, inst.truth).mean;
        rec.seconds = run.record.seconds;
        rec.steps = run.record.steps;
        rec.converged = run.record.converged;
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (std::size_t t = 0; t < tasks; ++t) {
    if (!errors[t]) continue;
    // Keep the error category, add which trial failed.
    const std::string where = "experiment trial " + std::to_string(t % grid.trials) +
                              " at q/p = " + std::to_string(grid.q_ratios[t / grid.trials]) + ": ";
    try {
      std::rethrow_exception(errors[t]);
    } catch (const NumericalError& ex) {
      throw NumericalError(where + ex.what());
    } catch (const DataError& ex) {
      throw DataError(where + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(where + ex.what());
    } catch (const std::exception& ex) {
      throw std::runtime_error(where + ex.what());
    }
  }

  ExperimentResult out;
  out.trials = records;
  for (std::size_t point = 0; point < points; ++point) {
    for (std::size_t a = 0; a < algs; ++a) {
      std::vector<double> bh, bg, f, secs, edges;
      for (std::size_t trial = 0; trial < grid.trials; ++trial) {
        const auto& rec = records[(point * grid.trials + trial) * algs + a];
        bh.push_back(rec.beta_hyper);
        bg.push_back(rec.beta_graph);
        f.push_back(rec.f1);
        secs.push_back(rec.seconds);
        edges.push_back(static_cast<double>(rec.num_edges));
      }
      SummaryRow row;
      row.n = grid.n;
      row.r = grid.r;
      row.p = grid.p;
      row.q = grid.q_ratios[point] * grid.p;
      row.algorithm = algorithm_name(grid.algorithms[a]);
      row.trials = grid.trials;
      row.mean_edges = summarize(edges).mean;
      row.beta_hyper = summarize(bh);
      row.beta_graph = summarize(bg);
      row.f1 = summarize(f);
      row.seconds = summarize(secs);
      out.summary.push_back(row);
    }
  }
  return out;
}

}  // namespace hbc
