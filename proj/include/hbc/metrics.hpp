#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hbc/diffusion.hpp"
#include "hbc/hypergraph.hpp"

namespace hbc {

struct F1Result {
  double first = 0.0;   // F1 of candidate.left against its matched truth set
  double second = 0.0;  // F1 of candidate.right against its matched truth set
  double mean = 0.0;
  bool swapped = false;  // true if left was matched to truth.right
};

/// Per-cluster F1 under the matching (identity or swap) with the larger mean.
F1Result f1_pair(const Bipartition& candidate, const Bipartition& truth);

/// Best-matching fraction of all `num_vertices` vertices labelled correctly;
/// vertices outside L u R count as wrong.
double accuracy(const Bipartition& candidate, const Bipartition& truth, std::size_t num_vertices);

enum class Algorithm { FBC, FBCA, CliqueCut };

std::string algorithm_name(Algorithm a);
/// Accepts FBC, FBCA, CC / CliqueCut (case-insensitive).
Algorithm parse_algorithm(const std::string& name);

struct ResultRecord {
  std::string algorithm;
  DiffusionConfig config;  // ignored by CliqueCut
  std::size_t num_vertices = 0;
  Bipartition part;
  double beta_hyper = 0.0;
  double beta_graph = 0.0;  // on the clique reduction
  double lambda = 0.0;      // diffusion: R(f_final); CliqueCut: lambda_1(Z)
  std::optional<double> f1;
  std::optional<double> accuracy;
  std::size_t steps = 0;
  bool converged = true;
  double seconds = 0.0;
};

struct AlgorithmRun {
  ResultRecord record;
  std::optional<DiffusionState> trajectory;
};

/// Runs one algorithm end to end (start vector, diffusion, sweep). The wall
/// time covers everything after the hypergraph is in memory.
AlgorithmRun run_algorithm(const Hypergraph& h, Algorithm algorithm, const DiffusionConfig& config);

/// Fills f1 and accuracy on the record.
void score_against(ResultRecord& record, const Bipartition& truth);

struct ExperimentGrid {
  std::size_t n = 200;
  std::size_t r = 3;
  double p = 1e-4;
  std::vector<double> q_ratios{2, 3, 4, 5, 6};
  std::size_t trials = 10;
  std::uint64_t base_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::FBC, Algorithm::FBCA, Algorithm::CliqueCut};
  DiffusionConfig config;
};

struct TrialRecord {
  double q = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::size_t num_edges = 0;
  double beta_hyper = 0.0;
  double beta_graph = 0.0;
  double f1 = 0.0;
  double seconds = 0.0;
  std::size_t steps = 0;
  bool converged = true;
};

struct Summary {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct SummaryRow {
  std::size_t n = 0;
  std::size_t r = 0;
  double p = 0.0;
  double q = 0.0;
  std::string algorithm;
  std::size_t trials = 0;
  double mean_edges = 0.0;
  Summary beta_hyper, beta_graph, f1, seconds;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;  // grid point major, algorithm minor
};

/// Trial i of every grid point uses seed base_seed + i. Trials run on up to
/// `jobs` threads; results do not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentGrid& grid, int jobs = 1);

Summary summarize(const std::vector<double>& values);

}  // namespace hbc
