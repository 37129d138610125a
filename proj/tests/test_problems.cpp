#include "doctest.h"

#include "quopt/formulations.hpp"
#include "quopt/problems.hpp"

using namespace quopt;

namespace {

ProblemInstance path_graph_instance(ProblemKind kind, int nodes) {
  ProblemInstance inst;
  inst.kind = kind;
  inst.graph = Hypergraph(nodes);
  for (int v = 0; v + 1 < nodes; ++v)
    inst.graph.add_edge({v, v + 1});
  return inst;
}

ProblemInstance triangle_instance(ProblemKind kind) {
  ProblemInstance inst;
  inst.kind = kind;
  inst.graph = Hypergraph(3);
  inst.graph.add_edge({0, 1});
  inst.graph.add_edge({0, 2});
  inst.graph.add_edge({1, 2});
  return inst;
}

} // namespace

TEST_CASE("hypergraph invariants") {
  Hypergraph g(3);
  g.add_edge({2, 0});
  CHECK(g.edges[0] == std::vector<int>{0, 2}); // sorted on insert
  CHECK_THROWS_AS(g.add_edge({0, 2}), ParameterError);
  CHECK_THROWS_AS(g.add_edge({5}), ParameterError);
  CHECK_THROWS_AS(g.add_arc(1, 1, 2.0), ParameterError); // self loop
  CHECK_THROWS_AS(g.add_arc(0, 1, -1.0), ParameterError);
  g.add_arc(0, 1, 2.0);
  g.check();
}

TEST_CASE("generation is deterministic and serialization round-trips") {
  for (ProblemKind kind : all_problem_kinds()) {
    CAPTURE(to_string(kind));
    ProblemInstance a = generate_instance(kind, {}, 42);
    ProblemInstance b = generate_instance(kind, {}, 42);
    CHECK(a == b);
    CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());
    ProblemInstance c = instance_from_json(instance_to_json(a));
    CHECK(c == a);
    ProblemInstance d = generate_instance(kind, {}, 43);
    CHECK(instance_to_json(d).dump() != instance_to_json(a).dump());
  }
}

TEST_CASE("planted structure validates for every kind and seed") {
  for (ProblemKind kind : all_problem_kinds()) {
    CAPTURE(to_string(kind));
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      auto gen = generate_instance_with_planted(kind, {}, seed);
      auto res = validate_solution(gen.instance, gen.planted);
      CHECK(res.valid);
      CHECK(res.objective == doctest::Approx(gen.planted.objective));
    }
  }
}

TEST_CASE("qubit cap is enforced") {
  CHECK_THROWS_AS(
      generate_instance(ProblemKind::GraphColoring, {{"nodes", 6}, {"colors", 4}}, 1),
      CapacityError);
  CHECK_NOTHROW(generate_instance(ProblemKind::GraphColoring,
                                  {{"nodes", 6}, {"colors", 4}}, 1, 24));
}

TEST_CASE("infeasible size parameters are rejected") {
  CHECK_THROWS_AS(generate_instance(ProblemKind::KClique,
                                    {{"nodes", 4}, {"k", 5}}, 1),
                  ParameterError);
  CHECK_THROWS_AS(generate_instance(ProblemKind::WeightedMinMaxMatching,
                                    {{"nodes", 5}}, 1),
                  ParameterError);
}

TEST_CASE("kclique planting") {
  auto gen = generate_instance_with_planted(ProblemKind::KClique,
                                            {{"nodes", 6}, {"k", 3}}, 7);
  auto vs = gen.planted.assignment.at("vertices").get<std::vector<int>>();
  REQUIRE(vs.size() == 3);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      CHECK(gen.instance.graph.has_pair_edge(vs[i], vs[j]));
}

TEST_CASE("graph isomorphism planting applies a permutation") {
  auto gen = generate_instance_with_planted(ProblemKind::GraphIsomorphism,
                                            {{"nodes", 4}}, 1, 16);
  auto perm = gen.planted.assignment.at("mapping").get<std::vector<int>>();
  Hypergraph g2 = gen.instance.second_graph();
  CHECK(g2.edges.size() == gen.instance.graph.edges.size());
  for (const auto &e : gen.instance.graph.edges)
    CHECK(g2.has_pair_edge(perm[static_cast<std::size_t>(e[0])],
                           perm[static_cast<std::size_t>(e[1])]));
}

TEST_CASE("hyper_maxcut generator respects edge sizes") {
  auto gen = generate_instance_with_planted(
      ProblemKind::HyperMaxCut,
      {{"nodes", 4}, {"edges", 3}, {"max_edge_size", 3}}, 3);
  CHECK(gen.instance.graph.edges.size() == 3);
  for (const auto &e : gen.instance.graph.edges) {
    CHECK(e.size() >= 2);
    CHECK(e.size() <= 3);
    for (int v : e)
      CHECK(v < gen.instance.graph.node_count);
  }
}

TEST_CASE("validate_solution examples") {
  SUBCASE("vertex cover on path a-b-c") {
    auto inst = path_graph_instance(ProblemKind::VertexCover, 3);
    auto res = validate_solution(inst, {Json{{"vertices", {1}}}, 0.0});
    CHECK(res.valid);
    CHECK(res.objective == doctest::Approx(1.0));
    CHECK_FALSE(validate_solution(inst, {Json{{"vertices", {0}}}, 0.0}).valid);
  }
  SUBCASE("edge cover on triangle: one edge is invalid") {
    auto inst = triangle_instance(ProblemKind::EdgeCover);
    auto res = validate_solution(inst, {Json{{"edges", {{0, 1}}}}, 0.0});
    CHECK_FALSE(res.valid); // node 2 uncovered
    auto two = validate_solution(inst, {Json{{"edges", {{0, 1}, {1, 2}}}}, 0.0});
    CHECK(two.valid);
    CHECK(two.objective == doctest::Approx(2.0));
  }
  SUBCASE("tsp tour on weighted K3") {
    ProblemInstance inst;
    inst.kind = ProblemKind::TravelingSalesman;
    inst.graph = Hypergraph(3);
    inst.graph.add_edge({0, 1}, 4.0);
    inst.graph.add_edge({0, 2}, 5.0);
    inst.graph.add_edge({1, 2}, 7.0);
    auto res = validate_solution(inst, {Json{{"tour", {0, 1, 2}}}, 0.0});
    CHECK(res.valid);
    CHECK(res.objective == doctest::Approx(4.0 + 7.0 + 5.0));
    CHECK_FALSE(validate_solution(inst, {Json{{"tour", {1, 0, 2}}}, 0.0}).valid);
  }
  SUBCASE("shape mismatch throws") {
    auto inst = path_graph_instance(ProblemKind::VertexCover, 3);
    CHECK_THROWS_AS(validate_solution(inst, {Json{{"edges", Json::array()}}, 0.0}),
                    ParameterError);
  }
}

TEST_CASE("brute_force_optimum examples") {
  SUBCASE("vertex cover on path a-b-c finds {b}") {
    auto inst = path_graph_instance(ProblemKind::VertexCover, 3);
    auto optima = brute_force_optimum(inst);
    REQUIRE(optima.size() == 1);
    CHECK(optima[0].assignment == Json{{"vertices", {1}}});
    CHECK(optima[0].objective == doctest::Approx(1.0));
  }
  SUBCASE("maxcut on a single edge finds both orientations as one partition") {
    ProblemInstance inst;
    inst.kind = ProblemKind::HyperMaxCut;
    inst.graph = Hypergraph(2);
    inst.graph.add_edge({0, 1});
    auto optima = brute_force_optimum(inst);
    // The unordered partition {a}/{b} appears once in canonical form.
    REQUIRE(optima.size() == 1);
    CHECK(optima[0].assignment == Json{{"parts", {{0}, {1}}}});
    CHECK(optima[0].objective == doctest::Approx(1.0));
  }
  SUBCASE("edge cover on triangle finds the three 2-edge covers") {
    auto inst = triangle_instance(ProblemKind::EdgeCover);
    auto optima = brute_force_optimum(inst);
    REQUIRE(optima.size() == 3);
    for (const auto &sol : optima) {
      CHECK(sol.assignment.at("edges").size() == 2);
      CHECK(sol.objective == doctest::Approx(2.0));
    }
  }
  SUBCASE("every optimum re-validates at the same objective") {
    for (ProblemKind kind : all_problem_kinds()) {
      CAPTURE(to_string(kind));
      ProblemInstance inst = generate_instance(kind, {}, 5);
      auto optima = brute_force_optimum(inst);
      REQUIRE(!optima.empty());
      for (const auto &sol : optima) {
        auto res = validate_solution(inst, sol);
        CHECK(res.valid);
        CHECK(res.objective == doctest::Approx(sol.objective));
        CHECK(res.objective == doctest::Approx(optima[0].objective));
      }
    }
  }
}

TEST_CASE("brute force capacity cap") {
  ProblemInstance inst;
  inst.kind = ProblemKind::VertexCover;
  inst.graph = Hypergraph(22);
  inst.graph.add_edge({0, 1});
  CHECK_THROWS_AS(brute_force_optimum(inst), CapacityError);
}
