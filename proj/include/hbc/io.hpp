#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbc/diffusion.hpp"
#include "hbc/hypergraph.hpp"
#include "hbc/metrics.hpp"
#include "hbc/rate_solver.hpp"

namespace hbc::io {

// Hypergraph file (hMETIS-compatible):
//   % comment lines are skipped
//   <num_edges> <num_vertices> [fmt]      fmt 0 = unweighted, 1 = weighted
//   [weight] v1 v2 ... vk                  one line per edge, 1-based ids
// Errors are DataError with the offending line number.
Hypergraph parse_hypergraph(std::istream& in, const std::string& source = "<stream>");
Hypergraph parse_hypergraph_file(const std::string& path);
std::string parse_error_prefix(const std::string& source, std::size_t line);

/// Writes fmt 1 if any weight differs from 1, else fmt 0. Weights use 17
/// significant digits so parsing the output gives identical doubles.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_hypergraph_file(const std::string& path, const Hypergraph& h);

// Labels file: one "<vertex-id> <label>" line per vertex, 1-based ids.
struct Labels {
  std::map<VertexId, std::string> label;  // 0-based id -> label
};
Labels parse_labels(std::istream& in, std::size_t num_vertices,
                    const std::string& source = "<stream>");
Labels parse_labels_file(const std::string& path, std::size_t num_vertices);
void write_labels(std::ostream& out, const Bipartition& truth,
                  const std::string& left_label = "L", const std::string& right_label = "R");

/// Ground truth from two labels. With empty names the file must use exactly
/// two distinct labels; the lexicographically smaller one becomes `left`.
Bipartition truth_from_labels(const Labels& labels, const std::string& left_label = "",
                              const std::string& right_label = "");

// Vector files: one real per line (start vectors, rate inputs).
VertexVector parse_vector(std::istream& in, std::size_t expected_size,
                          const std::string& source = "<stream>");
VertexVector parse_vector_file(const std::string& path, std::size_t expected_size);

// Result records. Vertex ids are written 1-based, like the hypergraph file.
nlohmann::ordered_json to_json(const ResultRecord& record, bool include_timing = true);
ResultRecord result_from_json(const nlohmann::json& j);

/// Trajectory CSV with header step,R,rnorm_w,step_size[,seconds].
void write_trace_csv(std::ostream& out, const DiffusionState& state, bool include_timing = true);

/// Rate trace as structured records: one object per (class, P, delta, C).
nlohmann::ordered_json rate_trace_json(const RateResult& rate);

void write_experiment_csv(std::ostream& out, const ExperimentResult& result,
                          bool include_timing = true);
nlohmann::ordered_json experiment_json(const ExperimentResult& result,
                                       bool include_timing = true);

/// Grid spec file (JSON): n, r, p, q_ratios, trials, base_seed, algorithms,
/// and optional epsilon, theta, max_steps, window, max_halvings, stop_at_events.
ExperimentGrid parse_grid(const nlohmann::json& j);

}  // namespace hbc::io
