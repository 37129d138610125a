#include "doctest.h"

#include <cmath>

#include "quopt/ansatz.hpp"
#include "quopt/optimizer.hpp"
#include "quopt/simulator.hpp"

using namespace quopt;

namespace {

/// Random circuit over the full gate registry with a few shared symbols.
Circuit random_circuit(Rng &rng, int qubits, int gates, int symbols) {
  Circuit c(qubits);
  static const GateKind kinds[] = {GateKind::H,   GateKind::X,   GateKind::RX,
                                   GateKind::RY,  GateKind::RZ,  GateKind::CRX,
                                   GateKind::CRY, GateKind::CRZ, GateKind::CX,
                                   GateKind::CZ};
  for (int i = 0; i < gates; ++i) {
    GateKind kind = kinds[rng.next_index(10)];
    if (gate_arity(kind) == 2 && qubits < 2)
      kind = GateKind::RY;
    std::vector<int> qs{static_cast<int>(rng.next_index(qubits))};
    if (gate_arity(kind) == 2) {
      int other = static_cast<int>(rng.next_index(qubits - 1));
      if (other >= qs[0])
        ++other;
      qs.push_back(other);
    }
    GateParam param;
    if (is_rotation(kind)) {
      if (rng.next_double() < 0.7) {
        param = SymbolicParam{
            "s" + std::to_string(rng.next_index(symbols)),
            rng.uniform(-2.0, 2.0)};
      } else {
        param = rng.uniform(-3.0, 3.0);
      }
    }
    c.push(kind, std::move(qs), std::move(param));
  }
  return c;
}

ParameterBinding full_binding(const Circuit &c, Rng &rng) {
  ParameterBinding b;
  for (const auto &name : c.parameter_order())
    b.values[name] = rng.uniform(0.0, 2.0 * M_PI);
  return b;
}

IsingPolynomial random_hamiltonian(Rng &rng, int qubits) {
  IsingPolynomial h(qubits);
  int terms = 1 + static_cast<int>(rng.next_index(5));
  for (int t = 0; t < terms; ++t) {
    int order = 1 + static_cast<int>(rng.next_index(std::min(qubits, 3)));
    std::vector<int> idx;
    for (int i = 0; i < order; ++i)
      idx.push_back(static_cast<int>(rng.next_index(qubits)));
    h.add_term(idx, rng.uniform(-1.5, 1.5));
  }
  return h;
}

} // namespace

TEST_CASE("single hadamard amplitudes") {
  Circuit c(1);
  c.push(GateKind::H, {0});
  Statevector sv = simulate(c);
  CHECK(sv.amplitudes[0].real() == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(sv.amplitudes[1].real() == doctest::Approx(0.70710678).epsilon(1e-8));
}

TEST_CASE("X then CX gives |11>") {
  Circuit c(2);
  c.push(GateKind::X, {0});
  c.push(GateKind::CX, {0, 1});
  Statevector sv = simulate(c);
  CHECK(std::abs(sv.amplitudes[3]) == doctest::Approx(1.0));
  Distribution d = probabilities(sv);
  REQUIRE(d.size() == 1);
  CHECK(d.at("11") == doctest::Approx(1.0));
}

TEST_CASE("RY on |+> gives <Z> = -sin(theta)") {
  for (double theta : {0.0, 0.3, 1.1, -0.7, 2.9}) {
    Circuit c(1);
    c.push(GateKind::H, {0});
    c.push(GateKind::RY, {0}, theta);
    IsingPolynomial z(1);
    z.add_term({0}, 1.0);
    double e = expectation(simulate(c), z);
    CHECK(e == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
  }
}

TEST_CASE("bell state probabilities") {
  Circuit c(2);
  c.push(GateKind::H, {0});
  c.push(GateKind::CX, {0, 1});
  Distribution d = probabilities(simulate(c));
  REQUIRE(d.size() == 2);
  CHECK(d.at("00") == doctest::Approx(0.5));
  CHECK(d.at("11") == doctest::Approx(0.5));

  IsingPolynomial zz(2);
  zz.add_term({0, 1}, 1.0);
  CHECK(expectation(simulate(c), zz) == doctest::Approx(1.0));
}

TEST_CASE("|+> with Z0 has zero expectation") {
  Circuit c(1);
  c.push(GateKind::H, {0});
  IsingPolynomial z(1);
  z.add_term({0}, 1.0);
  CHECK(expectation(simulate(c), z) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("uniform state expectation equals the Hamiltonian mean energy") {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 2 + static_cast<int>(rng.next_index(3));
    IsingPolynomial h = random_hamiltonian(rng, n);
    Circuit c(n);
    for (int q = 0; q < n; ++q)
      c.push(GateKind::H, {q});
    double mean = 0.0;
    for (std::uint64_t i = 0; i < (1ULL << n); ++i)
      mean += h.energy_of_index(i);
    mean /= static_cast<double>(1ULL << n);
    CHECK(expectation(simulate(c), h) == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("norm preservation and unitarity") {
  Rng rng(17);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 1 + static_cast<int>(rng.next_index(4));
    Circuit c = random_circuit(rng, n, 12, 3);
    ParameterBinding b = full_binding(c, rng);
    Statevector sv = simulate(c, b);
    CHECK(sv.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  }

  // A rotation followed by its inverse restores the state.
  Circuit c(2);
  c.push(GateKind::H, {0});
  c.push(GateKind::CRY, {0, 1}, 1.234);
  c.push(GateKind::CRY, {0, 1}, -1.234);
  Statevector sv = simulate(c);
  CHECK(std::abs(sv.amplitudes[0]) == doctest::Approx(M_SQRT1_2).epsilon(1e-10));
  CHECK(std::abs(sv.amplitudes[1]) == doctest::Approx(M_SQRT1_2).epsilon(1e-10));
  CHECK(std::abs(sv.amplitudes[2]) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(std::abs(sv.amplitudes[3]) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("expectation stays within the spectrum") {
  Rng rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(rng.next_index(3));
    IsingPolynomial h = random_hamiltonian(rng, n);
    Circuit c = random_circuit(rng, n, 10, 2);
    double e = expectation(simulate(c, full_binding(c, rng)), h);
    double lo = 1e300, hi = -1e300;
    for (std::uint64_t i = 0; i < (1ULL << n); ++i) {
      double v = h.energy_of_index(i);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(e >= lo - 1e-9);
    CHECK(e <= hi + 1e-9);
  }
}

TEST_CASE("unbound symbol raises BindingError") {
  Circuit c(1);
  c.push(GateKind::RX, {0}, SymbolicParam{"t"});
  CHECK_THROWS_AS(simulate(c), BindingError);
}

TEST_CASE("qubit capacity") {
  Circuit c(21);
  CHECK_THROWS_AS(simulate(c), CapacityError);
}

TEST_CASE("gradient of RY on |+> for Z0 at theta = 0 is -1") {
  Circuit c(1);
  c.push(GateKind::H, {0});
  c.push(GateKind::RY, {0}, SymbolicParam{"t"});
  IsingPolynomial z(1);
  z.add_term({0}, 1.0);
  ParameterBinding b;
  b.values["t"] = 0.0;
  CHECK(gradient(c, b, z, "t") == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("gradient outside the light cone is zero") {
  Circuit c(2);
  c.push(GateKind::H, {0});
  c.push(GateKind::RY, {1}, SymbolicParam{"t"});
  IsingPolynomial z(2);
  z.add_term({0}, 1.0);
  ParameterBinding b;
  b.values["t"] = 0.8;
  CHECK(gradient(c, b, z, "t") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unknown gradient symbol raises ParameterError") {
  Circuit c(1);
  c.push(GateKind::RX, {0}, SymbolicParam{"t"});
  ParameterBinding b;
  b.values["t"] = 0.1;
  CHECK_THROWS_AS(gradient(c, b, IsingPolynomial(1), "nope"), ParameterError);
}

TEST_CASE("parameter-shift matches finite differences on random circuits") {
  Rng rng(101);
  int checked = 0;
  while (checked < 100) {
    int n = 1 + static_cast<int>(rng.next_index(4));
    Circuit c = random_circuit(rng, n, 10, 3);
    if (c.parameter_order().empty())
      continue;
    IsingPolynomial h = random_hamiltonian(rng, n);
    ParameterBinding b = full_binding(c, rng);
    for (const auto &symbol : c.parameter_order()) {
      double shift = gradient(c, b, h, symbol);
      double fd = gradient_finite_difference(c, b, h, symbol);
      CHECK(std::abs(shift - fd) < 1e-6);
    }
    ++checked;
  }
}

TEST_CASE("argmax ties break to the lowest basis index") {
  Circuit c(2);
  c.push(GateKind::H, {0});
  c.push(GateKind::H, {1});
  auto [index, prob] = argmax_probability(simulate(c));
  CHECK(index == 0);
  CHECK(prob == doctest::Approx(0.25));
}
