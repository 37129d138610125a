#include "doctest.h"

#include <cmath>

#include "quopt/ansatz.hpp"
#include "quopt/optimizer.hpp"
#include "quopt/qasm3.hpp"
#include "quopt/simulator.hpp"

using namespace quopt;

namespace {

Circuit bell_circuit() {
  Circuit c(2);
  c.push(GateKind::H, {0});
  c.push(GateKind::CX, {0, 1});
  return c;
}

double max_amplitude_diff(const Statevector &a, const Statevector &b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  return worst;
}

} // namespace

TEST_CASE("emit bell circuit byte-exactly") {
  CHECK(qasm3::emit(bell_circuit()) ==
        "OPENQASM 3.0;\n"
        "include \"stdgates.inc\";\n"
        "qubit[2] q;\n"
        "h q[0];\n"
        "cx q[0], q[1];\n");
}

TEST_CASE("emit declares symbolic inputs in parameter order") {
  Circuit c(2);
  c.push(GateKind::RX, {0}, SymbolicParam{"theta_0"});
  c.push(GateKind::CRZ, {0, 1}, SymbolicParam{"theta_1", 2.0});
  std::string text = qasm3::emit(c);
  CHECK(text.find("input float[64] theta_0;\n") != std::string::npos);
  CHECK(text.find("input float[64] theta_1;\n") != std::string::npos);
  CHECK(text.find("rx(theta_0) q[0];") != std::string::npos);
  CHECK(text.find("crz(2*theta_1) q[0], q[1];") != std::string::npos);

  ParameterBinding b;
  b.values["theta_0"] = M_PI / 2;
  b.values["theta_1"] = 0.75;
  std::string numeric = qasm3::emit(c, b);
  CHECK(numeric.find("input") == std::string::npos);
  CHECK(numeric.find("rx(1.5707963267948966) q[0];") != std::string::npos);
  CHECK(numeric.find("crz(1.5) q[0], q[1];") != std::string::npos);
}

TEST_CASE("emission determinism") {
  Circuit c = build_qaoa(
      [] {
        IsingPolynomial h(3);
        h.add_term({0, 1}, 0.5);
        h.add_term({1, 2}, -0.25);
        h.add_term({0}, 1.0);
        return h;
      }(),
      2);
  ParameterBinding b = random_binding(c, 5);
  CHECK(qasm3::emit(c, b) == qasm3::emit(c, b));
  CHECK(qasm3::emit(c) == qasm3::emit(c));
}

TEST_CASE("parse accepts the emit grammar and round-trips") {
  Circuit c(3);
  c.push(GateKind::H, {0});
  c.push(GateKind::RX, {1}, 0.25);
  c.push(GateKind::CRY, {0, 2}, SymbolicParam{"a", -1.5, 0.5});
  c.push(GateKind::CZ, {1, 2});

  auto doc = qasm3::parse(qasm3::emit(c));
  REQUIRE(doc.valid());
  CHECK(doc.program->circuit == c);
  CHECK(doc.program->declared_inputs == std::vector<std::string>{"a"});
}

TEST_CASE("round-trip re-simulates identically") {
  Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    IsingPolynomial h(3);
    h.add_term({0, 1}, rng.uniform(-1.0, 1.0));
    h.add_term({1, 2}, rng.uniform(-1.0, 1.0));
    h.add_term({2}, rng.uniform(-1.0, 1.0));
    Circuit c = build_qaoa(h, 1 + static_cast<int>(rng.next_index(2)));
    ParameterBinding b = random_binding(c, rng.next_u64());

    auto doc = qasm3::parse(qasm3::emit(c, b));
    REQUIRE(doc.valid());
    CHECK(doc.program->circuit.is_numeric());
    double diff =
        max_amplitude_diff(simulate(c, b), simulate(doc.program->circuit));
    CHECK(diff < 1e-12);
  }
}

TEST_CASE("tolerated variation") {
  SUBCASE("whitespace, comments, version 3") {
    auto doc = qasm3::parse("// leading comment\n"
                            "OPENQASM 3;\n"
                            "/* block\n comment */\n"
                            "qubit[1]   reg;\n"
                            "h    reg[0] ;\n");
    REQUIRE(doc.valid());
    CHECK(doc.program->register_name == "reg");
    CHECK(doc.program->circuit.gates().size() == 1);
  }
  SUBCASE("pi expressions evaluate") {
    auto doc = qasm3::parse("OPENQASM 3.0;\nqubit[1] q;\nrx(pi/2) q[0];\n");
    REQUIRE(doc.valid());
    CHECK(std::get<double>(doc.program->circuit.gates()[0].param) ==
          doctest::Approx(1.5707963267948966));
  }
  SUBCASE("unicode pi") {
    auto doc = qasm3::parse("OPENQASM 3.0;\nqubit[1] q;\nrx(\xCF\x80) q[0];\n");
    REQUIRE(doc.valid());
    CHECK(std::get<double>(doc.program->circuit.gates()[0].param) ==
          doctest::Approx(M_PI));
  }
  SUBCASE("arithmetic with parentheses and unary minus") {
    auto doc = qasm3::parse(
        "OPENQASM 3.0;\nqubit[1] q;\nrz(-(1 + 2) * 0.5 / 2) q[0];\n");
    REQUIRE(doc.valid());
    CHECK(std::get<double>(doc.program->circuit.gates()[0].param) ==
          doctest::Approx(-0.75));
  }
  SUBCASE("input expressions stay affine") {
    auto doc = qasm3::parse("OPENQASM 3.0;\ninput float[64] g;\nqubit[1] q;\n"
                            "rz(2*g + pi/4) q[0];\n");
    REQUIRE(doc.valid());
    auto sym = std::get<SymbolicParam>(doc.program->circuit.gates()[0].param);
    CHECK(sym.name == "g");
    CHECK(sym.scale == doctest::Approx(2.0));
    CHECK(sym.offset == doctest::Approx(M_PI / 4));
  }
  SUBCASE("rzz rewrites to the CX ladder") {
    auto doc =
        qasm3::parse("OPENQASM 3.0;\nqubit[2] q;\nrzz(0.5) q[0], q[1];\n");
    REQUIRE(doc.valid());
    const auto &g = doc.program->circuit.gates();
    REQUIRE(g.size() == 3);
    CHECK(g[0].kind == GateKind::CX);
    CHECK(g[1].kind == GateKind::RZ);
    CHECK(std::get<double>(g[1].param) == doctest::Approx(0.5));
    CHECK(g[2].kind == GateKind::CX);
  }
  SUBCASE("measurements and bit declarations are dropped") {
    auto doc = qasm3::parse("OPENQASM 3.0;\nqubit[2] q;\nbit[2] c;\n"
                            "h q[0];\nc[0] = measure q[0];\n"
                            "measure q[1] -> c[1];\n");
    REQUIRE(doc.valid());
    CHECK(doc.program->circuit.gates().size() == 1);
  }
}

TEST_CASE("diagnostics carry positions and reasons") {
  SUBCASE("empty document") {
    auto v = qasm3::validate("");
    CHECK_FALSE(v.valid);
  }
  SUBCASE("comments only") {
    CHECK_FALSE(qasm3::validate("// nothing here\n").valid);
  }
  SUBCASE("missing qubit declaration") {
    CHECK_FALSE(qasm3::validate("OPENQASM 3.0;\n").valid);
  }
  SUBCASE("truncated declaration") {
    auto doc = qasm3::parse("OPENQASM 3.0;\nqubit q[");
    REQUIRE_FALSE(doc.valid());
    CHECK(doc.diagnostic->line == 2);
  }
  SUBCASE("unsupported gate") {
    auto doc =
        qasm3::parse("OPENQASM 3.0;\nqubit[1] q;\nu3(1,2,3) q[0];\n");
    REQUIRE_FALSE(doc.valid());
    CHECK(doc.diagnostic->message.find("u3") != std::string::npos);
  }
  SUBCASE("undeclared identifier in expression") {
    CHECK_FALSE(
        qasm3::validate("OPENQASM 3.0;\nqubit[1] q;\nrx(theta) q[0];\n").valid);
  }
  SUBCASE("index out of range") {
    CHECK_FALSE(qasm3::validate("OPENQASM 3.0;\nqubit[2] q;\nh q[2];\n").valid);
  }
  SUBCASE("arity mismatch") {
    CHECK_FALSE(
        qasm3::validate("OPENQASM 3.0;\nqubit[2] q;\ncx q[0];\n").valid);
  }
  SUBCASE("control equals target") {
    CHECK_FALSE(
        qasm3::validate("OPENQASM 3.0;\nqubit[2] q;\ncx q[0], q[0];\n").valid);
  }
  SUBCASE("wrong version") {
    CHECK_FALSE(qasm3::validate("OPENQASM 2.0;\nqubit[1] q;\nh q[0];\n").valid);
  }
  SUBCASE("two-symbol expressions are rejected") {
    CHECK_FALSE(qasm3::validate("OPENQASM 3.0;\ninput float[64] a;\n"
                                "input float[64] b;\nqubit[1] q;\n"
                                "rx(a + b) q[0];\n")
                    .valid);
  }
}

TEST_CASE("fuzz smoke: mutated documents never crash the parser") {
  Circuit c = build_vqe_ansatz(11, 3, 2);
  std::string base = qasm3::emit(c, random_binding(c, 3));
  Rng rng(1234);
  for (int i = 0; i < 500; ++i) {
    std::string mutated = base;
    int edits = 1 + static_cast<int>(rng.next_index(4));
    for (int e = 0; e < edits; ++e) {
      std::size_t pos = rng.next_index(mutated.size());
      switch (rng.next_index(3)) {
      case 0:
        mutated[pos] = static_cast<char>(rng.next_index(256));
        break;
      case 1:
        mutated.erase(pos, 1);
        break;
      default:
        mutated.insert(pos, 1, static_cast<char>(rng.next_index(256)));
        break;
      }
      if (mutated.empty())
        mutated = "x";
    }
    auto outcome = qasm3::validate(mutated);
    (void)outcome; // must not crash or throw
  }
}
