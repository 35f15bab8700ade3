#ifndef TROPNET_IO_HPP
#define TROPNET_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropnet/exact.hpp"
#include "tropnet/hoffman.hpp"
#include "tropnet/network.hpp"
#include "tropnet/polyhedron.hpp"
#include "tropnet/regions.hpp"
#include "tropnet/tropical.hpp"

namespace tropnet::io {

using Json = nlohmann::json;

// Malformed input. what() reads "<source>:<line>:<col>: <message>" when the
// position is known, otherwise "<source>: <where>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& msg);
  ParseError(const std::string& source, const std::string& where, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// Parses JSON, turning syntax errors into ParseError with line and column.
Json parse_json(const std::string& text, const std::string& source);

// Strings are read as "p/q" or exact decimals; JSON numbers are exactified.
Rational rational_from_json(const Json& j, const std::string& where);
Json rational_to_json(const Rational& q);
RationalVector vector_from_json(const Json& j, const std::string& where);
Json vector_to_json(const RationalVector& v);

// A 2D array, or {"matrix": 2D array}.
ExactMatrix matrix_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const ExactMatrix& m);

// {"architecture":[...], "final_activation":bool, "layers":[{"weights","bias"}]}
Network network_from_json(const Json& j, const std::string& source);
Json network_to_json(const Network& net);
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

// JSON: {"nvars": n, "monomials": [{"coeff", "exps"}]} or a bare monomial
// array. Text: one "coeff | e1 ... en" per line; '#' starts a comment.
TropicalPolynomial polynomial_from_json(const Json& j, const std::string& source);
TropicalPolynomial polynomial_from_text(const std::string& text, const std::string& source);
// Chooses JSON or text by the first non-blank character.
TropicalPolynomial parse_polynomial(const std::string& text, const std::string& source);
TropicalPolynomial load_polynomial(const std::string& path);
Json polynomial_to_json(const TropicalPolynomial& f);
std::string polynomial_to_text(const TropicalPolynomial& f);

Json rational_map_to_json(const TropicalRationalMap& f);
TropicalRationalMap rational_map_from_json(const Json& j, const std::string& source);

Json polyhedron_to_json(const Polyhedron& P);
Json affine_map_to_json(const AffineMap& m);
// List of {"map", "pieces", "bounded"}.
Json regions_to_json(const std::vector<LinearRegion>& regions);

Json hoffman_to_json(const HoffmanResult& r);

}  // namespace tropnet::io

#endif  // TROPNET_IO_HPP
