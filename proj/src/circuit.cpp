// Copyright 2026 The qknit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "circuit.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace qknit {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::RZ: return "rz";
    case GateKind::CNOT: return "cnot";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
    case GateKind::CRZ: return "crz";
    case GateKind::MeasureZ: return "measure";
    case GateKind::Reset: return "reset";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_name(const std::string& name) {
  if (name == "h") return GateKind::H;
  if (name == "x") return GateKind::X;
  if (name == "z") return GateKind::Z;
  if (name == "s") return GateKind::S;
  if (name == "sdg") return GateKind::Sdg;
  if (name == "rz") return GateKind::RZ;
  if (name == "cnot" || name == "cx") return GateKind::CNOT;
  if (name == "cz") return GateKind::CZ;
  if (name == "swap") return GateKind::SWAP;
  if (name == "crz") return GateKind::CRZ;
  if (name == "measure") return GateKind::MeasureZ;
  if (name == "reset") return GateKind::Reset;
  return std::nullopt;
}

bool gate_kind_is_two_qubit(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::CRZ:
      return true;
    default:
      return false;
  }
}

bool gate_kind_has_angle(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::CRZ;
}

bool Gate::operator==(const Gate& other) const {
  return kind == other.kind && qubits == other.qubits && angle == other.angle &&
         clbit == other.clbit && condition == other.condition;
}

Gate gate1(GateKind kind, uint32_t qubit) { return Gate{kind, {qubit}}; }

Gate gate1(GateKind kind, uint32_t qubit, double angle) {
  Gate g{kind, {qubit}};
  g.angle = angle;
  return g;
}

Gate gate2(GateKind kind, uint32_t a, uint32_t b) { return Gate{kind, {a, b}}; }

Gate gate2(GateKind kind, uint32_t a, uint32_t b, double angle) {
  Gate g{kind, {a, b}};
  g.angle = angle;
  return g;
}

Gate measure_z(uint32_t qubit, uint32_t clbit) {
  Gate g{GateKind::MeasureZ, {qubit}};
  g.clbit = clbit;
  return g;
}

size_t Circuit::two_qubit_gate_count() const {
  return static_cast<size_t>(
      std::count_if(gates.begin(), gates.end(),
                    [](const Gate& g) { return g.is_two_qubit(); }));
}

bool Circuit::operator==(const Circuit& other) const {
  return num_qubits == other.num_qubits && num_clbits == other.num_clbits &&
         gates == other.gates;
}

void validate_circuit(const Circuit& circuit) {
  for (size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    const std::string where = "gate " + std::to_string(i) + " (" +
                              gate_kind_name(g.kind) + ")";
    const size_t expected = gate_kind_is_two_qubit(g.kind) ? 2 : 1;
    if (g.qubits.size() != expected) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ": expected " + std::to_string(expected) +
                      " qubit(s), got " + std::to_string(g.qubits.size()));
    }
    for (uint32_t q : g.qubits) {
      if (q >= circuit.num_qubits) {
        throw Error(ErrorCode::InvalidArgument,
                    where + ": qubit index " + std::to_string(q) +
                        " out of range (width " +
                        std::to_string(circuit.num_qubits) + ")");
      }
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      throw Error(ErrorCode::InvalidArgument, where + ": duplicate qubit index");
    }
    if (!std::isfinite(g.angle)) {
      throw Error(ErrorCode::InvalidArgument, where + ": non-finite angle");
    }
    if (g.kind == GateKind::MeasureZ) {
      if (!g.clbit) {
        throw Error(ErrorCode::InvalidArgument,
                    where + ": measurement without classical target");
      }
    } else if (g.clbit) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ": classical target on non-measurement");
    }
    if (g.clbit && *g.clbit >= circuit.num_clbits) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ": classical bit " + std::to_string(*g.clbit) +
                      " out of range");
    }
    if (g.condition && g.condition->first >= circuit.num_clbits) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ": condition bit " +
                      std::to_string(g.condition->first) + " out of range");
    }
  }
}

std::string serialize_json(const Circuit& circuit) {
  nlohmann::ordered_json root;
  root["qubits"] = circuit.num_qubits;
  root["clbits"] = circuit.num_clbits;
  root["gates"] = nlohmann::ordered_json::array();
  for (const Gate& g : circuit.gates) {
    nlohmann::ordered_json jg;
    jg["kind"] = gate_kind_name(g.kind);
    jg["qubits"] = g.qubits;
    if (gate_kind_has_angle(g.kind)) jg["angle"] = g.angle;
    if (g.clbit) jg["clbit"] = *g.clbit;
    if (g.condition) {
      jg["cond"] = {g.condition->first, g.condition->second};
    }
    root["gates"].push_back(std::move(jg));
  }
  return root.dump();
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

uint32_t get_uint(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_unsigned()) schema_error(path, "expected a non-negative integer");
  return j.get<uint32_t>();
}

}  // namespace

Circuit parse_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("$", "expected an object");
  if (!root.contains("qubits")) schema_error("$", "missing field \"qubits\"");

  Circuit circuit;
  circuit.num_qubits = get_uint(root["qubits"], "$.qubits");
  circuit.num_clbits =
      root.contains("clbits") ? get_uint(root["clbits"], "$.clbits") : 0;

  if (root.contains("gates")) {
    if (!root["gates"].is_array()) schema_error("$.gates", "expected an array");
    size_t index = 0;
    for (const auto& jg : root["gates"]) {
      const std::string path = "$.gates[" + std::to_string(index++) + "]";
      if (!jg.is_object()) schema_error(path, "expected an object");
      if (!jg.contains("kind") || !jg["kind"].is_string()) {
        schema_error(path, "missing string field \"kind\"");
      }
      const std::string kind_name = jg["kind"].get<std::string>();
      auto kind = gate_kind_from_name(kind_name);
      if (!kind) schema_error(path + ".kind", "unknown gate kind \"" + kind_name + "\"");

      Gate g;
      g.kind = *kind;
      if (!jg.contains("qubits") || !jg["qubits"].is_array()) {
        schema_error(path, "missing array field \"qubits\"");
      }
      for (const auto& q : jg["qubits"]) {
        g.qubits.push_back(get_uint(q, path + ".qubits"));
      }
      if (jg.contains("angle")) {
        if (!jg["angle"].is_number()) schema_error(path + ".angle", "expected a number");
        g.angle = jg["angle"].get<double>();
      }
      if (jg.contains("clbit")) g.clbit = get_uint(jg["clbit"], path + ".clbit");
      if (jg.contains("cond")) {
        const auto& c = jg["cond"];
        if (!c.is_array() || c.size() != 2) {
          schema_error(path + ".cond", "expected [clbit, value]");
        }
        g.condition = {get_uint(c[0], path + ".cond[0]"),
                       static_cast<int>(get_uint(c[1], path + ".cond[1]"))};
      }
      circuit.gates.push_back(std::move(g));
    }
  }

  try {
    validate_circuit(circuit);
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return circuit;
}

// ---------------------------------------------------------------------------
// OpenQASM 2 subset parser
// ---------------------------------------------------------------------------

namespace {

struct QasmLexer {
  std::string text;
  size_t pos = 0;
  int line = 1;

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": " + what);
  }

  std::string token() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
      }
      return text.substr(start, pos - start);
    }
    if (isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < text.size() &&
             (isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
              text[pos] == 'e' || text[pos] == 'E' ||
              ((text[pos] == '+' || text[pos] == '-') &&
               (text[pos - 1] == 'e' || text[pos - 1] == 'E')))) {
        ++pos;
      }
      return text.substr(start, pos - start);
    }
    if (c == '"') {
      size_t start = pos++;
      while (pos < text.size() && text[pos] != '"') ++pos;
      if (pos >= text.size()) fail("unterminated string");
      ++pos;
      return text.substr(start, pos - start);
    }
    if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') {
      pos += 2;
      return "->";
    }
    ++pos;
    return std::string(1, c);
  }

  void expect(const std::string& tok) {
    std::string got = token();
    if (got != tok) fail("expected '" + tok + "', got '" + got + "'");
  }
};

// Expression grammar for gate angles: numbers, pi, + - * / and parentheses.
double qasm_expr(QasmLexer& lex);

double qasm_atom(QasmLexer& lex) {
  char c = lex.peek();
  if (c == '(') {
    lex.token();
    double v = qasm_expr(lex);
    lex.expect(")");
    return v;
  }
  if (c == '-') {
    lex.token();
    return -qasm_atom(lex);
  }
  std::string tok = lex.token();
  if (tok == "pi") return M_PI;
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) lex.fail("bad number '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    lex.fail("expected a number, got '" + tok + "'");
  }
}

double qasm_term(QasmLexer& lex) {
  double v = qasm_atom(lex);
  while (true) {
    char c = lex.peek();
    if (c == '*') {
      lex.token();
      v *= qasm_atom(lex);
    } else if (c == '/') {
      lex.token();
      v /= qasm_atom(lex);
    } else {
      return v;
    }
  }
}

double qasm_expr(QasmLexer& lex) {
  double v = qasm_term(lex);
  while (true) {
    char c = lex.peek();
    if (c == '+') {
      lex.token();
      v += qasm_term(lex);
    } else if (c == '-') {
      lex.token();
      v -= qasm_term(lex);
    } else {
      return v;
    }
  }
}

}  // namespace

Circuit parse_qasm2_subset(const std::string& text) {
  QasmLexer lex{text};

  lex.expect("OPENQASM");
  {
    std::string version = lex.token();
    if (version != "2.0" && version != "2") {
      lex.fail("unsupported OPENQASM version '" + version + "'");
    }
  }
  lex.expect(";");

  Circuit circuit;
  std::string qreg_name;
  std::string creg_name;

  auto parse_ref = [&](const std::string& reg_kind) -> uint32_t {
    std::string name = lex.token();
    const std::string& expected = reg_kind == "qreg" ? qreg_name : creg_name;
    if (expected.empty()) lex.fail("no " + reg_kind + " declared");
    if (name != expected) lex.fail("unknown register '" + name + "'");
    lex.expect("[");
    std::string idx = lex.token();
    lex.expect("]");
    uint32_t value = 0;
    try {
      value = static_cast<uint32_t>(std::stoul(idx));
    } catch (const std::exception&) {
      lex.fail("bad index '" + idx + "'");
    }
    uint32_t size =
        reg_kind == "qreg" ? circuit.num_qubits : circuit.num_clbits;
    if (value >= size) {
      lex.fail(reg_kind + " index " + idx + " out of range (size " +
               std::to_string(size) + ")");
    }
    return value;
  };

  while (!lex.eof()) {
    std::string stmt = lex.token();
    if (stmt == "include") {
      // qelib1.inc only declares the standard gates; accept and move on.
      lex.token();
      lex.expect(";");
      continue;
    }
    if (stmt == "qreg") {
      if (!qreg_name.empty()) lex.fail("only one qreg is supported");
      qreg_name = lex.token();
      lex.expect("[");
      circuit.num_qubits = static_cast<uint32_t>(std::stoul(lex.token()));
      lex.expect("]");
      lex.expect(";");
      continue;
    }
    if (stmt == "creg") {
      if (!creg_name.empty()) lex.fail("only one creg is supported");
      creg_name = lex.token();
      lex.expect("[");
      circuit.num_clbits = static_cast<uint32_t>(std::stoul(lex.token()));
      lex.expect("]");
      lex.expect(";");
      continue;
    }
    if (stmt == "measure") {
      uint32_t q = parse_ref("qreg");
      lex.expect("->");
      uint32_t c = parse_ref("creg");
      lex.expect(";");
      circuit.gates.push_back(measure_z(q, c));
      continue;
    }

    auto kind = gate_kind_from_name(stmt);
    if (!kind || *kind == GateKind::MeasureZ || *kind == GateKind::Reset ||
        stmt == "cnot") {
      lex.fail("unsupported statement '" + stmt + "'");
    }
    Gate g;
    g.kind = *kind;
    if (gate_kind_has_angle(*kind)) {
      lex.expect("(");
      g.angle = qasm_expr(lex);
      lex.expect(")");
    }
    g.qubits.push_back(parse_ref("qreg"));
    if (gate_kind_is_two_qubit(*kind)) {
      lex.expect(",");
      g.qubits.push_back(parse_ref("qreg"));
    }
    lex.expect(";");
    circuit.gates.push_back(std::move(g));
  }

  try {
    validate_circuit(circuit);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return circuit;
}

}  // namespace qknit
