/**
 * @file qasm3.hpp
 * @brief OpenQASM 3.0 emission and a total subset parser.
 *
 * The emitter produces one fixed byte representation per circuit+binding
 * (LF newlines, shortest round-trip doubles). The parser accepts the emit
 * grammar plus tolerated variation: free-form whitespace, // and block
 * comments, version 3 or 3.0, any register identifier, parameter
 * expressions over numeric literals / pi / declared inputs with + - * /,
 * parentheses and unary minus, an rzz gate (rewritten to CX-RZ-CX), and
 * bit declarations plus measurement statements (parsed and dropped).
 * Everything else yields a positioned diagnostic; the parser never throws.
 */

#pragma once

#include <optional>
#include <string>

#include "quopt/circuit.hpp"

namespace quopt::qasm3 {

struct Diagnostic {
  int line = 0;   // 1-based
  int column = 0; // 1-based
  std::string message;

  std::string to_string() const;
};

struct ParsedProgram {
  Circuit circuit;
  /// Declared `input float[64]` names in declaration order (a superset of
  /// circuit.parameter_order() when some inputs go unused).
  std::vector<std::string> declared_inputs;
  std::string register_name = "q";
};

/// Result of parsing one document: the source plus either a program or a
/// diagnostic.
struct QasmDocument {
  std::string source;
  std::optional<ParsedProgram> program;
  std::optional<Diagnostic> diagnostic;

  bool valid() const { return program.has_value(); }
};

/// Serializes a circuit. With a binding every parameter is substituted and
/// printed numerically; without one, `input float[64] <name>;` lines are
/// declared in parameter order.
std::string emit(const Circuit &circuit,
                 const std::optional<ParameterBinding> &binding = {});

/// Total parser for the subset grammar above.
QasmDocument parse(const std::string &text);

struct ValidationOutcome {
  bool valid = false;
  std::optional<Diagnostic> diagnostic;
};

/// Thin wrapper over parse for the syntactic-correctness metric; semantic
/// violations count as invalid too.
ValidationOutcome validate(const std::string &text);

} // namespace quopt::qasm3
