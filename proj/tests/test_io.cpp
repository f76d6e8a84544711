#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "hbc/errors.hpp"
#include "hbc/io.hpp"
#include "hbc/synth.hpp"
#include "support.hpp"

using namespace hbc;

namespace {

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_hypergraph(in, "h");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

std::string serialize(const Hypergraph& h) {
  std::ostringstream out;
  io::write_hypergraph(out, h);
  return out.str();
}

}  // namespace

TEST_CASE("parse examples") {
  const auto a = parse("1 3 0\n1 2 3\n");
  REQUIRE(a.num_edges() == 1);
  CHECK(a.num_vertices() == 3);
  CHECK(std::vector<VertexId>(a.edge(0).begin(), a.edge(0).end()) == std::vector<VertexId>{0, 1, 2});
  CHECK(a.weight(0) == 1.0);

  const auto b = parse("1 3 1\n2.5 1 2 3\n");
  CHECK(b.weight(0) == 2.5);

  // Comments, blank lines and a missing fmt are fine.
  const auto c = parse("% header follows\n\n2 4\n1 2\n% mid\n3 4 1\n");
  CHECK(c.num_edges() == 2);
  CHECK(c.rank(1) == 3);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(error_of("1 3 0\n1 1 2\n") == "h:2: duplicate vertex within edge");
  CHECK(error_of("1 3 0\n1\n").find("h:2:") == 0);
  CHECK(error_of("1 3 0\n1 4\n").find("h:2: vertex id 4 out of range") == 0);
  CHECK(error_of("1 3 0\n0 1\n").find("out of range") != std::string::npos);
  CHECK(error_of("1 3 1\n-1 1 2\n") == "h:2: edge weight must be positive");
  CHECK(error_of("1 3 1\n0 1 2\n") == "h:2: edge weight must be positive");
  CHECK(error_of("1 3 1\nnan 1 2\n") == "h:2: edge weight must be positive");
  CHECK(error_of("1 3 1\nx 1 2\n") == "h:2: malformed edge weight");
  CHECK(error_of("1 3 0\n1 two\n").find("h:2: malformed vertex id") == 0);
  CHECK(error_of("one 3\n").find("h:1: malformed header") == 0);
  CHECK(error_of("1 3 7\n").find("h:1: unsupported fmt") == 0);
  CHECK(error_of("2 3 0\n1 2\n").find("h:2: declared 2 edges but found 1") == 0);
  CHECK(error_of("1 3 0\n1 2\n2 3\n").find("h:3: more edge lines") == 0);
  CHECK(error_of("% only a comment\n").find("missing header") != std::string::npos);
  CHECK(error_of("0 0\n").find("at least one vertex") != std::string::npos);
}

TEST_CASE("missing files are data errors") {
  CHECK_THROWS_AS(io::parse_hypergraph_file("/nonexistent/h.hmetis"), DataError);
}

TEST_CASE("round trip is bit exact") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto edges = testing::random_hypergraph(30, 50, 6, seed).edge_list();
    Rng rng(seed);
    // Awkward weights: full 17-digit mantissas and extreme exponents.
    for (auto& e : edges) e.weight = seed % 2 ? rng.uniform() * 1e-7 + 1e-300 : 1.0 / 3.0 + rng.uniform();
    const Hypergraph h(30, edges);
    const auto text = serialize(h);
    const auto back = parse(text);
    REQUIRE(back.num_edges() == h.num_edges());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      CHECK(back.weight(e) == h.weight(e));
      CHECK(std::equal(back.edge(e).begin(), back.edge(e).end(), h.edge(e).begin(), h.edge(e).end()));
    }
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("unit weights are written as fmt 0") {
  const auto inst = generate({10, 3, 0.5, 0.1, 2});
  const auto text = serialize(inst.hypergraph);
  CHECK(text.substr(0, text.find('\n')) ==
        std::to_string(inst.hypergraph.num_edges()) + " 10 0");
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "hbc_io_roundtrip.hmetis";
  const auto h = testing::random_hypergraph(12, 20, 4, 3);
  io::write_hypergraph_file(path.string(), h);
  const auto back = io::parse_hypergraph_file(path.string());
  CHECK(serialize(back) == serialize(h));
  std::filesystem::remove(path);
}

TEST_CASE("labels") {
  std::istringstream in("% truth\n1 verb\n2 noun\n3 verb\n4 noun\n5 other\n");
  const auto labels = io::parse_labels(in, 5, "l");
  CHECK(labels.label.size() == 5);
  CHECK_THROWS_AS(io::truth_from_labels(labels), DataError);
  const auto t = io::truth_from_labels(labels, "verb", "noun");
  CHECK(t.left == VertexSet{0, 2});
  CHECK(t.right == VertexSet{1, 3});

  std::istringstream two("1 b\n2 a\n3 b\n");
  const auto t2 = io::truth_from_labels(io::parse_labels(two, 3));
  CHECK(t2.left == VertexSet{1});
  CHECK(t2.right == VertexSet{0, 2});

  std::istringstream dup("1 a\n1 b\n");
  CHECK_THROWS_WITH_AS(io::parse_labels(dup, 3, "l"), "l:2: vertex 1 labelled twice", DataError);
  std::istringstream range("4 a\n");
  CHECK_THROWS_AS(io::parse_labels(range, 3), DataError);
  std::istringstream bad("1\n");
  CHECK_THROWS_AS(io::parse_labels(bad, 3), DataError);

  std::ostringstream out;
  io::write_labels(out, {{0, 2}, {1}});
  CHECK(out.str() == "1 L\n2 R\n3 L\n");
}

TEST_CASE("vectors") {
  std::istringstream in("0.5\n-1e-3\n% c\n2\n");
  CHECK(io::parse_vector(in, 3) == VertexVector{0.5, -1e-3, 2.0});
  std::istringstream shorter("1\n");
  CHECK_THROWS_AS(io::parse_vector(shorter, 2), DataError);
  std::istringstream two_per_line("1 2\n");
  CHECK_THROWS_AS(io::parse_vector(two_per_line, 2), DataError);
  std::istringstream inf("inf\n");
  CHECK_THROWS_AS(io::parse_vector(inf, 1), DataError);
}

TEST_CASE("result records") {
  ResultRecord r;
  r.algorithm = "FBC";
  r.num_vertices = 4;
  r.part = {{0, 3}, {1}};
  r.beta_hyper = 0.25;
  r.lambda = 0.125;
  r.steps = 7;
  r.seconds = 1.5;
  const auto j = io::to_json(r);
  CHECK(j["L"] == nlohmann::json::array({1, 4}));
  CHECK(j["R"] == nlohmann::json::array({2}));
  CHECK(j["cheeger_bound"].get<double>() == doctest::Approx(0.5));
  CHECK(j["cheeger_holds"].get<bool>());
  CHECK(j["f1"].is_null());
  CHECK(j["parameters"]["start"] == "clique");
  CHECK(j.contains("seconds"));
  CHECK_FALSE(io::to_json(r, false).contains("seconds"));

  // Keys keep a fixed order.
  auto it = j.begin();
  CHECK(it.key() == "algorithm");
  CHECK((++it).key() == "parameters");

  const auto back = io::result_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.part.left == r.part.left);
  CHECK(back.part.right == r.part.right);
  CHECK(back.beta_hyper == r.beta_hyper);
  CHECK(back.steps == 7);

  auto broken = nlohmann::json::parse(j.dump());
  broken["L"] = nlohmann::json::array({9});
  CHECK_THROWS_AS(io::result_from_json(broken), DataError);
  CHECK_THROWS_AS(io::result_from_json(nlohmann::json::object()), DataError);
}

TEST_CASE("trace csv") {
  DiffusionState s;
  s.rayleigh = {0.5, 0.25};
  s.rate_norm = {0.125};
  s.step_size = {1.0};
  s.seconds = {0.01};
  std::ostringstream with, without;
  io::write_trace_csv(with, s);
  io::write_trace_csv(without, s, false);
  CHECK(with.str() == "step,R,rnorm_w,step_size,seconds\n0,0.5,0.125,1,0\n1,0.25,,,0.01\n");
  CHECK(without.str() == "step,R,rnorm_w,step_size\n0,0.5,0.125,1\n1,0.25,,\n");
}

TEST_CASE("grid specs") {
  const auto g = io::parse_grid(nlohmann::json::parse(
      R"({"n": 40, "r": 3, "p": 0.01, "q_ratios": [1, 2], "trials": 2, "algorithms": ["fbca", "cc"], "theta": 1e-5})"));
  CHECK(g.n == 40);
  CHECK(g.q_ratios == std::vector<double>{1, 2});
  CHECK(g.algorithms == std::vector<Algorithm>{Algorithm::FBCA, Algorithm::CliqueCut});
  CHECK(g.config.theta == 1e-5);
  CHECK_THROWS_AS(io::parse_grid(nlohmann::json::parse(R"({"n": 7})")), DataError);
  CHECK_THROWS_AS(io::parse_grid(nlohmann::json::parse(R"({"n": "x"})")), DataError);
  CHECK_THROWS_AS(io::parse_grid(nlohmann::json::parse(R"({"q_ratios": []})")), DataError);
  CHECK_THROWS_AS(io::parse_grid(nlohmann::json::parse(R"({"algorithms": ["nope"]})")), DataError);
}

TEST_CASE("experiment tables") {
  ExperimentGrid grid;
  grid.n = 20;
  grid.p = 0.05;
  grid.q_ratios = {1.0};
  grid.trials = 2;
  grid.algorithms = {Algorithm::CliqueCut};
  const auto res = run_experiment(grid);
  std::ostringstream csv;
  io::write_experiment_csv(csv, res, false);
  const auto text = csv.str();
  CHECK(text.find("n,r,p,q,algorithm,trials") == 0);
  CHECK(text.find("seconds") == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  const auto j = io::experiment_json(res);
  CHECK(j["trials"].size() == 2);
  CHECK(j["summary"][0]["algorithm"] == "CliqueCut");
}
