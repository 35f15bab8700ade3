#include "tropnet/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

namespace tropnet::io {

namespace {

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string field(const std::string& where, const char* name) {
  return where.empty() ? std::string(name) : where + "." + name;
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ParseError("", where, msg);
}

const Json& require(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) fail(where, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

// Re-raises a ParseError from a nested helper with the source attached.
template <class F>
auto with_source(const std::string& source, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::string msg = e.what();
    if (msg.rfind(": ", 0) == 0) msg.erase(0, 2);
    throw ParseError(source, "", msg);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, "", e.what());
  }
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line) {}

ParseError::ParseError(const std::string& source, const std::string& where, const std::string& msg)
    : std::runtime_error(source + ": " + (where.empty() ? "" : where + ": ") + msg) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(source, line, col, msg);
  }
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                  : Rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_number_float()) return exactify(j.get<double>());
  fail(where, "expected a number or a rational string, got " + std::string(j.type_name()));
}

Json rational_to_json(const Rational& q) { return to_string(q); }

RationalVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], at(where, i)));
  return v;
}

Json vector_to_json(const RationalVector& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(rational_to_json(q));
  return j;
}

ExactMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (j.is_object()) return matrix_from_json(require(j, "matrix", where), field(where, "matrix"));
  if (!j.is_array()) fail(where, "expected a 2D array");
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from_json(j[i], at(where, i)));
    if (rows.back().size() != rows.front().size()) {
      fail(at(where, i), "row has " + std::to_string(rows.back().size()) + " entries, expected " +
                             std::to_string(rows.front().size()));
    }
  }
  return ExactMatrix::from_rows(rows);
}

Json matrix_to_json(const ExactMatrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    j.push_back(vector_to_json(RationalVector(m.row(r).begin(), m.row(r).end())));
  }
  return j;
}

Network network_from_json(const Json& j, const std::string& source) {
  return with_source(source, [&] {
    if (!j.is_object()) fail("", "model must be a JSON object");
    const Json& layers_j = require(j, "layers", "");
    if (!layers_j.is_array() || layers_j.empty()) fail("layers", "expected a non-empty array");
    bool final_activation = false;
    if (j.contains("final_activation")) {
      if (!j["final_activation"].is_boolean()) fail("final_activation", "expected true or false");
      final_activation = j["final_activation"].get<bool>();
    }
    std::vector<Layer> layers;
    for (std::size_t l = 0; l < layers_j.size(); ++l) {
      const std::string w = at("layers", l);
      Layer layer;
      layer.weights = matrix_from_json(require(layers_j[l], "weights", w), field(w, "weights"));
      layer.bias = vector_from_json(require(layers_j[l], "bias", w), field(w, "bias"));
      if (layer.weights.rows() != layer.bias.size()) {
        fail(w, std::to_string(layer.weights.rows()) + " weight rows but " +
                    std::to_string(layer.bias.size()) + " biases");
      }
      layers.push_back(std::move(layer));
    }
    Network net(std::move(layers), final_activation);
    if (j.contains("architecture")) {
      const Json& a = j["architecture"];
      std::vector<std::size_t> arch;
      if (!a.is_array()) fail("architecture", "expected an array of widths");
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number_unsigned()) fail(at("architecture", i), "expected a positive integer");
        arch.push_back(a[i].get<std::size_t>());
      }
      if (arch != net.architecture()) fail("architecture", "does not match the layer shapes");
    }
    return net;
  });
}

Json network_to_json(const Network& net) {
  Json j;
  j["architecture"] = net.architecture();
  j["final_activation"] = net.final_activation();
  j["layers"] = Json::array();
  auto value = [](const Rational& q) -> Json {
    const double d = q.get_d();
    if (Rational(d) == q) return d;
    return to_string(q);
  };
  for (const auto& layer : net.layers()) {
    Json w = Json::array();
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
      Json row = Json::array();
      for (const auto& q : layer.weights.row(r)) row.push_back(value(q));
      w.push_back(row);
    }
    Json b = Json::array();
    for (const auto& q : layer.bias) b.push_back(value(q));
    j["layers"].push_back({{"weights", w}, {"bias", b}});
  }
  return j;
}

Network load_network(const std::string& path) {
  return network_from_json(parse_json(read_file(path), path), path);
}

void save_network(const Network& net, const std::string& path) {
  write_file(path, network_to_json(net).dump(2) + "\n");
}

TropicalPolynomial polynomial_from_json(const Json& j, const std::string& source) {
  return with_source(source, [&] {
    const Json* list = &j;
    std::string where = "monomials";
    std::optional<std::size_t> nvars;
    if (j.is_object()) {
      list = &require(j, "monomials", "");
      if (j.contains("nvars")) {
        if (!j["nvars"].is_number_unsigned()) fail("nvars", "expected a positive integer");
        nvars = j["nvars"].get<std::size_t>();
      }
    }
    if (!list->is_array() || list->empty()) fail(where, "expected a non-empty array");
    std::vector<Monomial> ms;
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string w = at(where, i);
      Monomial m;
      m.coeff = rational_from_json(require((*list)[i], "coeff", w), field(w, "coeff"));
      m.exps = vector_from_json(require((*list)[i], "exps", w), field(w, "exps"));
      if (!nvars) nvars = m.exps.size();
      if (m.exps.size() != *nvars) {
        fail(field(w, "exps"), "has " + std::to_string(m.exps.size()) + " entries, expected " +
                                   std::to_string(*nvars));
      }
      for (const auto& e : m.exps) {
        if (sgn(e) < 0) fail(field(w, "exps"), "negative exponent " + to_string(e));
      }
      ms.push_back(std::move(m));
    }
    return TropicalPolynomial(*nvars, std::move(ms));
  });
}

TropicalPolynomial polynomial_from_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Monomial> ms;
  std::optional<std::size_t> nvars;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    std::string s = raw.substr(0, raw.find('#'));
    if (is_blank(s)) continue;
    const auto bar = s.find('|');
    if (bar == std::string::npos) throw ParseError(source, line, 1, "expected \"coeff | e1 ... en\"");
    Monomial m;
    try {
      m.coeff = parse_rational(s.substr(0, bar));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line, 1, e.what());
    }
    std::istringstream es(s.substr(bar + 1));
    std::string tok;
    while (es >> tok) {
      try {
        m.exps.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, line, bar + 2, e.what());
      }
      if (sgn(m.exps.back()) < 0) {
        throw ParseError(source, line, bar + 2, "negative exponent " + tok);
      }
    }
    if (m.exps.empty()) throw ParseError(source, line, bar + 2, "no exponents");
    if (!nvars) nvars = m.exps.size();
    if (m.exps.size() != *nvars) {
      throw ParseError(source, line, bar + 2,
                       "has " + std::to_string(m.exps.size()) + " exponents, expected " +
                           std::to_string(*nvars));
    }
    ms.push_back(std::move(m));
  }
  if (ms.empty()) throw ParseError(source, "", "no monomials");
  return TropicalPolynomial(*nvars, std::move(ms));
}

TropicalPolynomial parse_polynomial(const std::string& text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    return polynomial_from_json(parse_json(text, source), source);
  }
  return polynomial_from_text(text, source);
}

TropicalPolynomial load_polynomial(const std::string& path) {
  return parse_polynomial(read_file(path), path);
}

Json polynomial_to_json(const TropicalPolynomial& f) {
  Json ms = Json::array();
  for (const auto& m : f.monomials()) {
    ms.push_back({{"coeff", rational_to_json(m.coeff)}, {"exps", vector_to_json(m.exps)}});
  }
  return {{"nvars", f.nvars()}, {"monomials", ms}};
}

std::string polynomial_to_text(const TropicalPolynomial& f) {
  std::string out;
  for (const auto& m : f.monomials()) {
    out += to_string(m.coeff) + " |";
    for (const auto& e : m.exps) out += " " + to_string(e);
    out += "\n";
  }
  return out;
}

Json rational_map_to_json(const TropicalRationalMap& f) {
  return {{"numerator", polynomial_to_json(f.numerator)},
          {"denominator", polynomial_to_json(f.denominator)}};
}

TropicalRationalMap rational_map_from_json(const Json& j, const std::string& source) {
  if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator")) {
    throw ParseError(source, "", "expected {\"numerator\", \"denominator\"}");
  }
  return TropicalRationalMap(polynomial_from_json(j["numerator"], source + " numerator"),
                             polynomial_from_json(j["denominator"], source + " denominator"));
}

Json polyhedron_to_json(const Polyhedron& P) {
  return {{"A", matrix_to_json(P.A())}, {"b", vector_to_json(P.b())}};
}

Json affine_map_to_json(const AffineMap& m) {
  return {{"gradient", vector_to_json(m.gradient)}, {"intercept", rational_to_json(m.intercept)}};
}

Json regions_to_json(const std::vector<LinearRegion>& regions) {
  Json out = Json::array();
  for (const auto& r : regions) {
    Json pieces = Json::array();
    for (const auto& p : r.pieces) pieces.push_back(polyhedron_to_json(p));
    out.push_back({{"map", affine_map_to_json(r.map)}, {"pieces", pieces}, {"bounded", is_bounded(r)}});
  }
  return out;
}

Json hoffman_to_json(const HoffmanResult& r) {
  Json j;
  j["kind"] = r.kind == HoffmanKind::kExact ? "exact" : r.kind == HoffmanKind::kLower ? "lower" : "upper";
  if (r.kind == HoffmanKind::kUpper) {
    j["value"] = r.approx;
  } else {
    j["value"] = rational_to_json(r.value);
  }
  j["witness_subset"] = r.witness_subset;
  return j;
}

}  // namespace tropnet::io
