#include "doctest.h"

#include <cmath>

#include "quopt/evalharness.hpp"
#include "support/fixtures.hpp"

using namespace quopt;
using testsupport::fixture_record;
using testsupport::solved_qaoa_fixture;

TEST_CASE("kl divergence closed forms") {
  SUBCASE("identical distributions give ~0") {
    Distribution p{{"00", 0.5}, {"11", 0.5}};
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(kl_divergence(p, p) >= 0.0);
  }
  SUBCASE("point mass vs uniform gives ln 2") {
    Distribution p{{"0", 1.0}};
    Distribution q{{"0", 0.5}, {"1", 0.5}};
    CHECK(kl_divergence(p, q) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  }
  SUBCASE("unnormalized inputs are rejected") {
    Distribution bad{{"0", 0.4}};
    Distribution ok{{"0", 1.0}};
    CHECK_THROWS_AS(kl_divergence(bad, ok), ParameterError);
    CHECK_THROWS_AS(kl_divergence(ok, bad), ParameterError);
  }
  SUBCASE("missing support stays finite via smoothing") {
    Distribution p{{"0", 0.5}, {"1", 0.5}};
    Distribution q{{"0", 1.0}};
    double kl = kl_divergence(p, q);
    CHECK(std::isfinite(kl));
    CHECK(kl > 1.0); // half the mass hits the 1e-12 floor
  }
}

TEST_CASE("kl properties on random distribution pairs") {
  Rng rng(77);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 1 + static_cast<int>(rng.next_index(8));
    Distribution p, q;
    double psum = 0.0, qsum = 0.0;
    for (int i = 0; i < n; ++i) {
      double pv = rng.uniform(0.01, 1.0), qv = rng.uniform(0.01, 1.0);
      p[format_bits(static_cast<std::uint64_t>(i), 4)] = pv;
      q[format_bits(static_cast<std::uint64_t>(i), 4)] = qv;
      psum += pv;
      qsum += qv;
    }
    for (auto &[k, v] : p)
      v /= psum;
    for (auto &[k, v] : q)
      v /= qsum;
    CHECK(kl_divergence(p, q) >= -1e-12);
    CHECK(kl_divergence(p, p) <= 1e-9);
  }
}

TEST_CASE("delta_e of a record against its own circuit is zero") {
  auto f = solved_qaoa_fixture(ProblemKind::HyperMaxCut, 51);
  DatasetRecord r = fixture_record(f);
  CHECK(delta_e(r.circuit_numeric_qasm, r) == doctest::Approx(0.0));
}

TEST_CASE("delta_e with random parameters is non-negative") {
  auto f = solved_qaoa_fixture(ProblemKind::VertexCover, 52);
  DatasetRecord r = fixture_record(f);

  auto sym = qasm3::parse(r.circuit_symbolic_qasm);
  REQUIRE(sym.valid());
  ParameterBinding rand = random_binding(sym.program->circuit, 999);
  std::string candidate = qasm3::emit(sym.program->circuit, rand);
  double d = delta_e(candidate, r);
  CHECK(d >= 0.0);
}

TEST_CASE("delta_e rejects undefined cases instead of returning zero") {
  auto f = solved_qaoa_fixture(ProblemKind::MinCut, 53);
  DatasetRecord r = fixture_record(f);
  CHECK_THROWS_AS(delta_e("not qasm at all", r), ParameterError);
  CHECK_THROWS_AS(delta_e(r.circuit_symbolic_qasm, r), ParameterError);
  CHECK_THROWS_AS(
      delta_e("OPENQASM 3.0;\nqubit[1] q;\nh q[0];\n", r), // qubit mismatch
      ParameterError);
}

TEST_CASE("delta_e symmetry under role swap") {
  auto f = solved_qaoa_fixture(ProblemKind::KClique, 54);
  DatasetRecord r = fixture_record(f);
  auto sym = qasm3::parse(r.circuit_symbolic_qasm);
  std::string candidate =
      qasm3::emit(sym.program->circuit, random_binding(sym.program->circuit, 5));

  DatasetRecord swapped = r;
  swapped.circuit_numeric_qasm = candidate;
  double forward = delta_e(candidate, r);
  double backward = delta_e(r.circuit_numeric_qasm, swapped);
  CHECK(forward == doctest::Approx(backward).epsilon(1e-12));
}

TEST_CASE("evaluate_batch self-evaluation oracle") {
  std::vector<DatasetRecord> records;
  records.push_back(fixture_record(solved_qaoa_fixture(ProblemKind::HyperMaxCut, 61)));
  records.push_back(fixture_record(solved_qaoa_fixture(ProblemKind::VertexCover, 62)));
  records.push_back(fixture_record(solved_qaoa_fixture(ProblemKind::EdgeCover, 63)));

  std::map<std::string, std::string> candidates;
  for (const auto &r : records)
    candidates[r.record_id] = r.circuit_numeric_qasm;

  EvalReport report = evaluate_batch(candidates, records, 17);
  CHECK(report.aggregates.n_total == 3);
  CHECK(report.aggregates.n_valid == 3);
  CHECK(report.aggregates.accuracy_rate == doctest::Approx(1.0));
  CHECK(*report.aggregates.mean_delta_e == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(*report.aggregates.mean_kl_gen <= 1e-6);
  CHECK(*report.aggregates.mean_kl_rand > *report.aggregates.mean_kl_gen);
  CHECK(*report.aggregates.improvement_over_random_pct > 0.0);

  SUBCASE("determinism for a fixed seed") {
    EvalReport again = evaluate_batch(candidates, records, 17);
    CHECK(again.to_json().dump() == report.to_json().dump());
  }
  SUBCASE("different seed changes only the random baseline") {
    EvalReport other = evaluate_batch(candidates, records, 18);
    CHECK(*other.aggregates.mean_delta_e ==
          doctest::Approx(*report.aggregates.mean_delta_e));
  }
}

TEST_CASE("evaluate_batch bookkeeping") {
  auto f = solved_qaoa_fixture(ProblemKind::MinCut, 71);
  DatasetRecord r = fixture_record(f);

  std::map<std::string, std::string> candidates;
  candidates[r.record_id] = "OPENQASM 3.0;\nqubit[1] q;\nbroken";
  candidates["ghost-record"] = r.circuit_numeric_qasm;

  EvalReport report = evaluate_batch(candidates, {r}, 1);
  CHECK(report.aggregates.n_total == 1);
  CHECK(report.aggregates.n_valid == 0);
  CHECK(report.aggregates.accuracy_rate == doctest::Approx(0.0));
  CHECK_FALSE(report.aggregates.mean_delta_e.has_value());
  REQUIRE(report.skipped.size() == 1);
  CHECK(report.skipped[0].first == "ghost-record");
  REQUIRE(report.rows.size() == 1);
  CHECK_FALSE(report.rows[0].syntax_valid);
  CHECK(report.rows[0].reason.has_value());

  std::string csv = report.rows_csv();
  CHECK(csv.find("record_id,") == 0);
  CHECK(csv.find(r.record_id) != std::string::npos);
}

TEST_CASE("aggregate arithmetic: delta multiset {1,2,3}") {
  // Hand-built records around H = 3*Z0. The solution circuit leaves |0>
  // (E_sol = 3); candidates rx(theta) have E_gen = 3 cos(theta), so theta
  // values acos(2/3), acos(1/3) and pi/2 produce deltas of exactly 1, 2, 3.
  auto make_fixture_record = [](const std::string &id) {
    DatasetRecord r;
    r.record_id = id;
    r.hamiltonian_text = "3 * Z0";
    r.qubit_count = 1;
    r.ground_energy = -3.0;
    r.ground_states = {"1"};
    r.first_excited_energy = 3.0;
    r.first_excited_states = {"0"};
    r.circuit_numeric_qasm = "OPENQASM 3.0;\nqubit[1] q;\nrx(0) q[0];\n";
    r.circuit_symbolic_qasm =
        "OPENQASM 3.0;\ninput float[64] t;\nqubit[1] q;\nrx(t) q[0];\n";
    r.binding = {{"t", 0.0}};
    r.top_states = {{"0", 1.0}};
    return r;
  };

  std::vector<DatasetRecord> records{make_fixture_record("agg-a"),
                                     make_fixture_record("agg-b"),
                                     make_fixture_record("agg-c")};
  auto candidate = [](double theta) {
    return "OPENQASM 3.0;\nqubit[1] q;\nrx(" + format_double(theta) +
           ") q[0];\n";
  };
  std::map<std::string, std::string> candidates{
      {"agg-a", candidate(std::acos(2.0 / 3.0))},
      {"agg-b", candidate(std::acos(1.0 / 3.0))},
      {"agg-c", candidate(M_PI / 2.0)}};

  EvalReport report = evaluate_batch(candidates, records, 2);
  REQUIRE(report.aggregates.mean_delta_e.has_value());
  CHECK(*report.aggregates.mean_delta_e == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*report.aggregates.median_delta_e == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*report.aggregates.std_delta_e ==
        doctest::Approx(0.816496580927726).epsilon(1e-9));
}
