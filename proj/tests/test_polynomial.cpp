#include "doctest.h"

#include "quopt/polynomial.hpp"
#include "support/naive_eval.hpp"

using namespace quopt;

namespace {

IsingPolynomial random_ising(Rng &rng, int qubits, int max_terms) {
  IsingPolynomial h(qubits);
  int terms = 1 + static_cast<int>(rng.next_index(max_terms));
  for (int t = 0; t < terms; ++t) {
    int order = 1 + static_cast<int>(rng.next_index(std::min(qubits, 3)));
    std::vector<int> vars;
    for (int i = 0; i < order; ++i)
      vars.push_back(static_cast<int>(rng.next_index(qubits)));
    h.add_term(vars, rng.uniform(-2.0, 2.0));
  }
  h.add_constant(rng.uniform(-1.0, 1.0));
  return h;
}

BinaryPolynomial random_binary(Rng &rng, int vars, int max_terms) {
  BinaryPolynomial p(vars);
  int terms = 1 + static_cast<int>(rng.next_index(max_terms));
  for (int t = 0; t < terms; ++t) {
    int order = 1 + static_cast<int>(rng.next_index(std::min(vars, 3)));
    std::vector<int> idx;
    for (int i = 0; i < order; ++i)
      idx.push_back(static_cast<int>(rng.next_index(vars)));
    // Quarter-integer coefficients keep every derived energy exact.
    p.add_term(idx, static_cast<double>(rng.uniform_int(-8, 8)) / 4.0);
  }
  p.add_constant(static_cast<double>(rng.uniform_int(-4, 4)) / 2.0);
  return p;
}

} // namespace

TEST_CASE("binary insertion applies x^2 = x") {
  BinaryPolynomial p(2);
  p.add_term({0, 0}, 1.5);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->first == std::vector<int>{0});
  p.add_term({1, 0, 1}, 0.5);
  CHECK(p.terms().count({0, 1}) == 1);
}

TEST_CASE("spin insertion applies z^2 = 1") {
  IsingPolynomial h(3);
  h.add_term({2, 2}, 1.0); // collapses to the constant
  CHECK(h.terms().empty());
  CHECK(h.constant() == doctest::Approx(1.0));
  h.add_term({0, 1, 1, 2}, -0.5);
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms().begin()->first == std::vector<int>{0, 2});
}

TEST_CASE("zero coefficients are pruned") {
  BinaryPolynomial p(2);
  p.add_term({0}, 1.0);
  p.add_term({0}, -1.0);
  CHECK(p.terms().empty());
}

TEST_CASE("binary_to_ising on a single variable") {
  // x0 -> 1/2 - Z0/2
  BinaryPolynomial p(1);
  p.add_term({0}, 1.0);
  IsingPolynomial h = binary_to_ising(p);
  CHECK(h.constant() == doctest::Approx(0.5));
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms().at({0}) == doctest::Approx(-0.5));
}

TEST_CASE("single-edge maxcut cost converts to 0.5 Z0Z1 - 0.5") {
  // -(x0 + x1 - 2 x0 x1)
  BinaryPolynomial p(2);
  p.add_term({0}, -1.0);
  p.add_term({1}, -1.0);
  p.add_term({0, 1}, 2.0);
  IsingPolynomial h = binary_to_ising(p);
  CHECK(h.constant() == doctest::Approx(-0.5));
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms().at({0, 1}) == doctest::Approx(0.5));

  // Pointwise agreement under the bit/spin correspondence.
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    std::vector<int> x{static_cast<int>(mask & 1), static_cast<int>(mask >> 1)};
    CHECK(p.evaluate(x) == doctest::Approx(h.energy_of_index(mask)));
  }
}

TEST_CASE("round trip ising_to_binary(binary_to_ising(p)) == p") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    BinaryPolynomial p = random_binary(rng, 5, 8);
    BinaryPolynomial back = ising_to_binary(binary_to_ising(p));
    CHECK(back == p);
  }
}

TEST_CASE("conversion preserves energies pointwise") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    BinaryPolynomial p = random_binary(rng, 6, 10);
    IsingPolynomial h = binary_to_ising(p);
    for (std::uint64_t mask = 0; mask < (1ULL << 6); ++mask) {
      std::vector<int> x(6);
      for (int v = 0; v < 6; ++v)
        x[static_cast<std::size_t>(v)] = static_cast<int>((mask >> v) & 1ULL);
      CHECK(p.evaluate(x) == doctest::Approx(h.energy_of_index(mask)).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy from rendered bitstrings") {
  IsingPolynomial h(2);
  h.add_term({0, 1}, 1.0);
  CHECK(h.energy("01") == doctest::Approx(-1.0));
  CHECK(h.energy("10") == doctest::Approx(-1.0));
  CHECK(h.energy("00") == doctest::Approx(1.0));

  IsingPolynomial maxcut(2);
  maxcut.add_term({0, 1}, 0.5);
  maxcut.add_constant(-0.5);
  CHECK(maxcut.energy("00") == doctest::Approx(0.0));
  CHECK(maxcut.energy("10") == doctest::Approx(-1.0));

  IsingPolynomial constant(2);
  constant.add_constant(3.0);
  CHECK(constant.energy("00") == doctest::Approx(3.0));
  CHECK(constant.energy("11") == doctest::Approx(3.0));
  CHECK_THROWS_AS(constant.energy("0"), ParameterError);
}

TEST_CASE("exact_solve basics") {
  SUBCASE("-Z0") {
    IsingPolynomial h(1);
    h.add_term({0}, -1.0);
    auto s = h.exact_solve();
    CHECK(s.ground_energy == doctest::Approx(-1.0));
    CHECK(s.ground_states == std::vector<std::string>{"0"});
    CHECK(s.first_excited_energy == doctest::Approx(1.0));
    CHECK(s.first_excited_states == std::vector<std::string>{"1"});
  }
  SUBCASE("0.5 Z0Z1 - 0.5") {
    IsingPolynomial h(2);
    h.add_term({0, 1}, 0.5);
    h.add_constant(-0.5);
    auto s = h.exact_solve();
    CHECK(s.ground_energy == doctest::Approx(-1.0));
    CHECK(s.ground_states == std::vector<std::string>{"01", "10"});
    CHECK(s.first_excited_energy == doctest::Approx(0.0));
    CHECK(s.first_excited_states == std::vector<std::string>{"00", "11"});
  }
  SUBCASE("constant Hamiltonian is a degenerate spectrum") {
    IsingPolynomial h(2);
    h.add_constant(1.0);
    CHECK_THROWS_AS(h.exact_solve(), CapacityError);
  }
  SUBCASE("qubit cap") {
    IsingPolynomial h(21);
    h.add_term({0}, 1.0);
    h.set_qubit_count(21);
    CHECK_THROWS_AS(h.exact_solve(), CapacityError);
  }
}

TEST_CASE("exact_solve matches the naive reference on random polynomials") {
  Rng rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 2 + static_cast<int>(rng.next_index(9)); // 2..10 qubits
    IsingPolynomial h = random_ising(rng, n, 12);
    SpectrumSummary s;
    try {
      s = h.exact_solve();
    } catch (const CapacityError &) {
      continue; // rare degenerate draw
    }
    double best = 1e300, second = 1e300;
    for (std::uint64_t i = 0; i < (1ULL << n); ++i) {
      double e = testsupport::naive_ising_energy(h, i);
      if (e < best) {
        second = best;
        best = e;
      } else if (e > best && e < second) {
        second = e;
      }
    }
    CHECK(s.ground_energy == doctest::Approx(best).epsilon(1e-12));
    CHECK(s.first_excited_energy == doctest::Approx(second).epsilon(1e-12));
    for (const auto &bits : s.ground_states)
      CHECK(testsupport::naive_ising_energy(h, parse_bits(bits)) ==
            doctest::Approx(best));
  }
}

TEST_CASE("render_hamiltonian format") {
  IsingPolynomial h(2);
  h.add_term({0, 1}, 0.5);
  h.add_constant(-0.5);
  CHECK(render_hamiltonian(h) == "0.5 * Z0 @ Z1 + -0.5");

  IsingPolynomial z2(3);
  z2.add_term({2}, -1.0);
  CHECK(render_hamiltonian(z2) == "-1 * Z2");

  IsingPolynomial zero;
  CHECK(render_hamiltonian(zero) == "0");

  IsingPolynomial constant;
  constant.add_constant(3.0);
  CHECK(render_hamiltonian(constant) == "3");

  // Terms sorted by (order, indices): singles before pairs.
  IsingPolynomial mixed(3);
  mixed.add_term({0, 1}, 1.0);
  mixed.add_term({2}, 2.0);
  CHECK(render_hamiltonian(mixed) == "2 * Z2 + 1 * Z0 @ Z1");
}

TEST_CASE("parse_hamiltonian inverts render_hamiltonian") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    IsingPolynomial h = random_ising(rng, 6, 10);
    IsingPolynomial back = parse_hamiltonian(render_hamiltonian(h), 6);
    CHECK(back == h);
  }
  CHECK_THROWS_AS(parse_hamiltonian("0.5 * Q0"), DataError);
  CHECK_THROWS_AS(parse_hamiltonian("0.5 *"), DataError);
}
