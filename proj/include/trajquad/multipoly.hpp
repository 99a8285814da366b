#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trajquad/rational.hpp"

namespace trajquad {

// Symbols are identified by their canonical name: "x", "q1".."qN", "r", "u",
// "ε" and "ĝ" (ĝ stands for 1/g).
namespace sym {
inline const std::string x = "x";
inline const std::string r = "r";
inline const std::string u = "u";
inline const std::string eps = "ε";
inline const std::string ghat = "ĝ";
std::string q(int i);
}  // namespace sym

// Validates and canonicalises a symbol name ("eps" -> "ε", "gi" -> "ĝ").
std::string canonical_symbol(std::string_view name);
// Strict weak order used for variable lists: x < q1 < q2 < ... < r < u < ε < ĝ.
bool symbol_less(const std::string& a, const std::string& b);

class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT constant polynomial
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT

  static MultiPoly variable(const std::string& name, int power = 1);
  static MultiPoly monomial(const Rational& c, const std::vector<std::pair<std::string, int>>& powers);
  static MultiPoly parse(std::string_view text);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool has_variable(const std::string& name) const;  // appears with a nonzero exponent

  // Iterates (exponent map, coefficient) in canonical order.
  std::vector<std::pair<std::map<std::string, int>, Rational>> terms() const;
  Rational coefficient(const std::map<std::string, int>& powers) const;
  Rational constant_term() const { return coefficient({}); }
  // Collects terms with name^power and drops that variable.
  MultiPoly coefficient_of(const std::string& name, int power) const;
  int max_degree(const std::string& name) const;
  int min_degree(const std::string& name) const;

  // Allows negative powers of a symbol that is not Laurent by default (only
  // meaningful for ĝ in assembled g-series).
  MultiPoly& allow_laurent(const std::string& name);
  bool laurent_allowed(const std::string& name) const;

  double evaluate(const std::map<std::string, double>& values) const;
  MultiPoly substitute(const std::string& name, const Rational& value) const;
  MultiPoly substitute(const std::string& name, const MultiPoly& value) const;

  std::string to_string() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;
  MultiPoly pow(int k) const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Low-level access for the calculus routines.
  struct ExpLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, ExpLess>;
  const TermMap& raw_terms() const { return terms_; }
  static MultiPoly from_raw(std::vector<std::string> vars, TermMap terms,
                            std::set<std::string> laurent = {});

 private:
  void add_term(const Exponents& e, const Rational& c);
  void check_exponents(const Exponents& e) const;
  MultiPoly promoted(const std::vector<std::string>& vars) const;
  static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b);
  void trim();

  std::vector<std::string> vars_;
  TermMap terms_;
  std::set<std::string> laurent_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

enum class Geometry { cartesian_1d, radial_polar };

MultiPoly differentiate(const MultiPoly& p, const std::string& var);
MultiPoly laplacian(const MultiPoly& p, Geometry geometry);
MultiPoly grad_dot(const MultiPoly& a, const MultiPoly& b, Geometry geometry);
// (1/2) * integral over u in [-1, 1].
MultiPoly angular_average(const MultiPoly& p);
// Antiderivative in r with zero constant; throws LogSingularity on r^-1.
MultiPoly integrate_r(const MultiPoly& p);

}  // namespace trajquad
