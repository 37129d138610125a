#include "quopt/qasm3.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace quopt::qasm3 {

namespace {

constexpr int kMaxRegisterSize = 4096;

std::string param_expression(const SymbolicParam &sym) {
  std::string out;
  if (sym.scale == 1.0)
    out = sym.name;
  else
    out = format_double(sym.scale) + "*" + sym.name;
  if (sym.offset > 0.0)
    out += " + " + format_double(sym.offset);
  else if (sym.offset < 0.0)
    out += " - " + format_double(-sym.offset);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { End, Ident, Number, String, Punct };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

struct ParseAbort {
  Diagnostic diag;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) {}

  Token next() {
    skip_trivia();
    Token t;
    t.line = line_;
    t.column = column_;
    if (eof()) {
      t.kind = Tok::End;
      return t;
    }
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return lex_ident(t);
    // UTF-8 pi (0xCF 0x80) is folded into the identifier "pi".
    if (static_cast<unsigned char>(c) == 0xCF && pos_ + 1 < src_.size() &&
        static_cast<unsigned char>(src_[pos_ + 1]) == 0x80) {
      advance();
      advance();
      t.kind = Tok::Ident;
      t.text = "pi";
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))
      return lex_number(t);
    if (c == '"')
      return lex_string(t);
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Tok::Punct;
      t.text = "->";
      return t;
    }
    static const std::string puncts = "()[]{},;=+-*/";
    if (puncts.find(c) != std::string::npos) {
      advance();
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      return t;
    }
    fail(t.line, t.column, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(int line, int column, const std::string &msg) const {
    throw ParseAbort{Diagnostic{line, column, msg}};
  }

private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (!eof() && peek() != '\n')
          advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        int line = line_, col = column_;
        advance();
        advance();
        while (!eof() && !(peek() == '*' && pos_ + 1 < src_.size() &&
                           src_[pos_ + 1] == '/'))
          advance();
        if (eof())
          fail(line, col, "unterminated block comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token lex_ident(Token t) {
    t.kind = Tok::Ident;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_')) {
      t.text += peek();
      advance();
    }
    return t;
  }

  Token lex_number(Token t) {
    t.kind = Tok::Number;
    bool seen_dot = false, seen_exp = false;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.text += c;
        advance();
      } else if (c == '.' && !seen_dot && !seen_exp) {
        seen_dot = true;
        t.text += c;
        advance();
      } else if ((c == 'e' || c == 'E') && !seen_exp && !t.text.empty()) {
        seen_exp = true;
        t.text += c;
        advance();
        if (!eof() && (peek() == '+' || peek() == '-')) {
          t.text += peek();
          advance();
        }
      } else {
        break;
      }
    }
    return t;
  }

  Token lex_string(Token t) {
    t.kind = Tok::String;
    advance(); // opening quote
    while (!eof() && peek() != '"') {
      if (peek() == '\n')
        fail(t.line, t.column, "unterminated string literal");
      t.text += peek();
      advance();
    }
    if (eof())
      fail(t.line, t.column, "unterminated string literal");
    advance(); // closing quote
    return t;
  }

  const std::string &src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

/// A parameter expression reduced to scale * symbol + offset (symbol may be
/// absent). Anything outside this family is rejected.
struct LinExpr {
  double scale = 0.0;
  std::string symbol;
  double offset = 0.0;

  bool symbolic() const { return !symbol.empty(); }
};

class Parser {
public:
  explicit Parser(const std::string &src) : lexer_(src) { bump(); }

  ParsedProgram run() {
    expect_ident("OPENQASM", "expected 'OPENQASM' version header");
    Token version = expect(Tok::Number, "expected version number");
    if (version.text != "3" && version.text != "3.0")
      fail(version, "unsupported OpenQASM version '" + version.text + "'");
    expect_punct(";");

    while (cur_.kind != Tok::End)
      statement();

    if (!qubit_declared_)
      throw ParseAbort{Diagnostic{1, 1, "missing qubit register declaration"}};
    return std::move(program_);
  }

private:
  void bump() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const Token &at, const std::string &msg) {
    lexer_.fail(at.line, at.column, msg);
  }

  Token expect(Tok kind, const std::string &msg) {
    if (cur_.kind != kind)
      fail(cur_, msg + " (got '" + (cur_.kind == Tok::End ? "<eof>" : cur_.text) +
                     "')");
    Token t = cur_;
    bump();
    return t;
  }

  void expect_punct(const std::string &p) {
    if (cur_.kind != Tok::Punct || cur_.text != p)
      fail(cur_, "expected '" + p + "'");
    bump();
  }

  void expect_ident(const std::string &word, const std::string &msg) {
    if (cur_.kind != Tok::Ident || cur_.text != word)
      fail(cur_, msg);
    bump();
  }

  bool at_punct(const std::string &p) const {
    return cur_.kind == Tok::Punct && cur_.text == p;
  }

  int parse_uint(const std::string &what, int max_value) {
    Token t = expect(Tok::Number, "expected " + what);
    int value = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                               value);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
      fail(t, what + " must be a plain integer");
    if (value < 0 || value > max_value)
      fail(t, what + " out of supported range 0.." + std::to_string(max_value));
    return value;
  }

  void statement() {
    Token head = cur_;
    if (head.kind != Tok::Ident)
      fail(head, "expected a statement");

    if (head.text == "include") {
      bump();
      expect(Tok::String, "expected include path string");
      expect_punct(";");
    } else if (head.text == "input") {
      bump();
      input_declaration(head);
    } else if (head.text == "qubit") {
      bump();
      qubit_declaration(head);
    } else if (head.text == "bit") {
      bump();
      bit_declaration();
    } else if (head.text == "measure") {
      bump();
      measure_arrow_statement();
    } else if (bit_names_.count(head.text)) {
      bump();
      measure_assign_statement();
    } else {
      gate_statement(head);
    }
  }

  void input_declaration(const Token &head) {
    expect_ident("float", "only 'input float' declarations are supported");
    if (at_punct("[")) {
      bump();
      int width = parse_uint("float width", 64);
      if (width != 32 && width != 64)
        fail(head, "unsupported float width");
      expect_punct("]");
    }
    Token name = expect(Tok::Ident, "expected input parameter name");
    if (input_names_.count(name.text))
      fail(name, "duplicate input declaration '" + name.text + "'");
    input_names_.insert(name.text);
    program_.declared_inputs.push_back(name.text);
    expect_punct(";");
  }

  void qubit_declaration(const Token &head) {
    if (qubit_declared_)
      fail(head, "multiple qubit registers are not supported");
    int size = 1;
    if (at_punct("[")) {
      bump();
      size = parse_uint("qubit register size", kMaxRegisterSize);
      expect_punct("]");
    }
    if (size < 1)
      fail(head, "qubit register must have at least one qubit");
    Token name = expect(Tok::Ident, "expected qubit register name");
    program_.register_name = name.text;
    program_.circuit = Circuit(size);
    qubit_declared_ = true;
    expect_punct(";");
  }

  void bit_declaration() {
    if (at_punct("[")) {
      bump();
      parse_uint("bit register size", kMaxRegisterSize);
      expect_punct("]");
    }
    Token name = expect(Tok::Ident, "expected bit register name");
    bit_names_.insert(name.text);
    expect_punct(";");
  }

  /// `measure q[i] -> c[i];` or `measure q;` — parsed and dropped.
  void measure_arrow_statement() {
    reference(/*must_be_qubit=*/true, /*index_required=*/false);
    if (at_punct("->")) {
      bump();
      reference(/*must_be_qubit=*/false, /*index_required=*/false);
    }
    expect_punct(";");
  }

  /// `c = measure q;` / `c[0] = measure q[0];` — parsed and dropped.
  void measure_assign_statement() {
    if (at_punct("[")) {
      bump();
      parse_uint("bit index", kMaxRegisterSize);
      expect_punct("]");
    }
    expect_punct("=");
    expect_ident("measure", "expected 'measure'");
    reference(/*must_be_qubit=*/true, /*index_required=*/false);
    expect_punct(";");
  }

  /// Register reference with optional index; returns index or -1.
  int reference(bool must_be_qubit, bool index_required) {
    Token name = expect(Tok::Ident, "expected register reference");
    if (must_be_qubit) {
      if (!qubit_declared_ || name.text != program_.register_name)
        fail(name, "undeclared register '" + name.text + "'");
    } else if (!bit_names_.count(name.text)) {
      fail(name, "undeclared bit register '" + name.text + "'");
    }
    int index = -1;
    if (at_punct("[")) {
      bump();
      index = parse_uint("register index", kMaxRegisterSize);
      expect_punct("]");
    } else if (index_required) {
      fail(name, "expected an indexed register reference");
    }
    return index;
  }

  void gate_statement(const Token &head) {
    bump();
    bool is_rzz = head.text == "rzz";
    GateKind kind = GateKind::RZ;
    if (!is_rzz) {
      try {
        kind = gate_kind_from_name(head.text);
      } catch (const ParameterError &) {
        fail(head, "unsupported gate '" + head.text + "'");
      }
    }

    std::optional<LinExpr> param;
    if (at_punct("(")) {
      bump();
      param = expression();
      expect_punct(")");
    }

    std::vector<int> qubits;
    qubits.push_back(gate_operand(head));
    while (at_punct(",")) {
      bump();
      qubits.push_back(gate_operand(head));
    }
    expect_punct(";");

    int arity = is_rzz ? 2 : gate_arity(kind);
    if (static_cast<int>(qubits.size()) != arity)
      fail(head, "gate '" + head.text + "' expects " + std::to_string(arity) +
                     " operand(s)");
    bool needs_param = is_rzz || is_rotation(kind);
    if (needs_param != param.has_value())
      fail(head, needs_param ? "gate '" + head.text + "' needs a parameter"
                             : "gate '" + head.text + "' takes no parameter");

    GateParam gate_param;
    if (param) {
      if (param->symbolic())
        gate_param = SymbolicParam{param->symbol, param->scale, param->offset};
      else
        gate_param = param->offset;
    }

    try {
      if (is_rzz) {
        program_.circuit.push(GateKind::CX, {qubits[0], qubits[1]});
        program_.circuit.push(GateKind::RZ, {qubits[1]}, gate_param);
        program_.circuit.push(GateKind::CX, {qubits[0], qubits[1]});
      } else {
        program_.circuit.push(kind, std::move(qubits), std::move(gate_param));
      }
    } catch (const Error &e) {
      fail(head, e.what());
    }
  }

  int gate_operand(const Token &head) {
    int index = reference(/*must_be_qubit=*/true, /*index_required=*/true);
    if (index >= program_.circuit.qubit_count())
      fail(head, "qubit index " + std::to_string(index) +
                     " out of range for register of size " +
                     std::to_string(program_.circuit.qubit_count()));
    return index;
  }

  // Expressions: additive over multiplicative over unary/primary, reduced
  // to at most one symbolic input with an affine coefficient.
  LinExpr expression() { return additive(); }

  LinExpr additive() {
    LinExpr lhs = multiplicative();
    while (at_punct("+") || at_punct("-")) {
      bool minus = cur_.text == "-";
      Token op = cur_;
      bump();
      LinExpr rhs = multiplicative();
      if (minus) {
        rhs.scale = -rhs.scale;
        rhs.offset = -rhs.offset;
      }
      if (lhs.symbolic() && rhs.symbolic() && lhs.symbol != rhs.symbol)
        fail(op, "parameter expressions may reference one input only");
      if (rhs.symbolic() && !lhs.symbolic())
        lhs.symbol = rhs.symbol;
      if (lhs.symbolic() && rhs.symbolic())
        lhs.scale += rhs.scale;
      else if (rhs.symbolic())
        lhs.scale = rhs.scale;
      lhs.offset += rhs.offset;
    }
    return lhs;
  }

  LinExpr multiplicative() {
    LinExpr lhs = unary();
    while (at_punct("*") || at_punct("/")) {
      bool divide = cur_.text == "/";
      Token op = cur_;
      bump();
      LinExpr rhs = unary();
      if (divide) {
        if (rhs.symbolic())
          fail(op, "division by a parameter is not supported");
        if (rhs.offset == 0.0)
          fail(op, "division by zero in parameter expression");
        lhs.scale /= rhs.offset;
        lhs.offset /= rhs.offset;
      } else {
        if (lhs.symbolic() && rhs.symbolic())
          fail(op, "products of parameters are not supported");
        if (rhs.symbolic()) {
          rhs.scale *= lhs.offset;
          rhs.offset *= lhs.offset;
          lhs = rhs;
        } else {
          lhs.scale *= rhs.offset;
          lhs.offset *= rhs.offset;
        }
      }
    }
    return lhs;
  }

  LinExpr unary() {
    if (at_punct("-")) {
      bump();
      LinExpr e = unary();
      e.scale = -e.scale;
      e.offset = -e.offset;
      return e;
    }
    if (at_punct("+")) {
      bump();
      return unary();
    }
    return primary();
  }

  LinExpr primary() {
    if (at_punct("(")) {
      bump();
      LinExpr e = expression();
      expect_punct(")");
      return e;
    }
    if (cur_.kind == Tok::Number) {
      Token t = cur_;
      bump();
      double value = 0.0;
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                 value);
      if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
        fail(t, "malformed numeric literal '" + t.text + "'");
      LinExpr e;
      e.offset = value;
      return e;
    }
    if (cur_.kind == Tok::Ident) {
      Token t = cur_;
      bump();
      if (t.text == "pi") {
        LinExpr e;
        e.offset = M_PI;
        return e;
      }
      if (!input_names_.count(t.text))
        fail(t, "undeclared identifier '" + t.text + "' in expression");
      LinExpr e;
      e.scale = 1.0;
      e.symbol = t.text;
      return e;
    }
    fail(cur_, "expected a parameter expression");
  }

  Lexer lexer_;
  Token cur_;
  ParsedProgram program_;
  bool qubit_declared_ = false;
  std::set<std::string> input_names_;
  std::set<std::string> bit_names_;
};

} // namespace

std::string Diagnostic::to_string() const {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": " + message;
}

std::string emit(const Circuit &circuit,
                 const std::optional<ParameterBinding> &binding) {
  if (binding)
    for (const auto &name : circuit.parameter_order())
      if (!binding->contains(name))
        throw BindingError("binding misses parameter: " + name);

  std::string out = "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
  if (!binding)
    for (const auto &name : circuit.parameter_order())
      out += "input float[64] " + name + ";\n";
  out += "qubit[" + std::to_string(circuit.qubit_count()) + "] q;\n";

  for (const auto &gate : circuit.gates()) {
    out += gate_name(gate.kind);
    if (is_rotation(gate.kind)) {
      out += "(";
      if (const auto *num = std::get_if<double>(&gate.param))
        out += format_double(*num);
      else if (binding)
        out += format_double(resolve_angle(gate, *binding));
      else
        out += param_expression(std::get<SymbolicParam>(gate.param));
      out += ")";
    }
    out += " q[" + std::to_string(gate.qubits[0]) + "]";
    if (gate.qubits.size() == 2)
      out += ", q[" + std::to_string(gate.qubits[1]) + "]";
    out += ";\n";
  }
  return out;
}

QasmDocument parse(const std::string &text) {
  QasmDocument doc;
  doc.source = text;
  try {
    Parser parser(text);
    doc.program = parser.run();
  } catch (const ParseAbort &abort) {
    doc.diagnostic = abort.diag;
  } catch (const std::exception &e) {
    doc.diagnostic = Diagnostic{0, 0, std::string("internal parse error: ") + e.what()};
  }
  return doc;
}

ValidationOutcome validate(const std::string &text) {
  QasmDocument doc = parse(text);
  return {doc.valid(), doc.diagnostic};
}

} // namespace quopt::qasm3
