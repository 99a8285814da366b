#include "trajquad/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "trajquad/errors.hpp"

namespace trajquad {

namespace sym {
std::string q(int i) { return "q" + std::to_string(i); }
}  // namespace sym

namespace {

// (group, index) rank of a canonical symbol.
std::pair<int, int> rank(const std::string& s) {
  if (s == sym::x) return {0, 0};
  if (s.size() > 1 && s[0] == 'q') return {1, std::stoi(s.substr(1))};
  if (s == sym::r) return {2, 0};
  if (s == sym::u) return {3, 0};
  if (s == sym::eps) return {4, 0};
  if (s == sym::ghat) return {5, 0};
  throw ParseError("unknown symbol '" + s + "'");
}

bool cartesian(const std::string& s) { return rank(s).first <= 1; }
bool polar(const std::string& s) { return s == sym::r || s == sym::u; }

bool default_laurent(const std::string& s) { return s == sym::r || rank(s).first == 1; }

}  // namespace

std::string canonical_symbol(std::string_view name) {
  if (name == "x" || name == "r" || name == "u") return std::string(name);
  if (name == "ε" || name == "eps" || name == "epsilon") return sym::eps;
  if (name == "ĝ" || name == "gi" || name == "ghat") return sym::ghat;
  if (name.size() > 1 && name[0] == 'q' && name[1] != '0') {
    bool digits = std::all_of(name.begin() + 1, name.end(),
                              [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (digits && name.size() < 6) return std::string(name);
  }
  throw ParseError("unknown symbol '" + std::string(name) + "'");
}

bool symbol_less(const std::string& a, const std::string& b) { return rank(a) < rank(b); }

bool MultiPoly::ExpLess::operator()(const Exponents& a, const Exponents& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return a.size() < b.size();
}

MultiPoly::MultiPoly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(const std::string& name, int power) {
  return monomial(Rational(1), {{name, power}});
}

MultiPoly MultiPoly::monomial(const Rational& c, const std::vector<std::pair<std::string, int>>& powers) {
  MultiPoly p;
  for (auto& [n, e] : powers) {
    auto cn = canonical_symbol(n);
    if (std::find(p.vars_.begin(), p.vars_.end(), cn) == p.vars_.end()) p.vars_.push_back(cn);
  }
  std::sort(p.vars_.begin(), p.vars_.end(), symbol_less);
  Exponents e(p.vars_.size(), 0);
  for (auto& [n, k] : powers) {
    auto cn = canonical_symbol(n);
    auto it = std::find(p.vars_.begin(), p.vars_.end(), cn);
    e[static_cast<std::size_t>(it - p.vars_.begin())] += k;
  }
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::from_raw(std::vector<std::string> vars, TermMap terms, std::set<std::string> laurent) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  p.laurent_ = std::move(laurent);
  for (auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

void MultiPoly::check_exponents(const Exponents& e) const {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && !laurent_allowed(vars_[i]))
      throw VariableMismatch("negative power of non-Laurent symbol " + vars_[i]);
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  check_exponents(e);
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::laurent_allowed(const std::string& name) const {
  return default_laurent(name) || laurent_.count(name) > 0;
}

MultiPoly& MultiPoly::allow_laurent(const std::string& name) {
  laurent_.insert(canonical_symbol(name));
  return *this;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 &&
                            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                        [](int k) { return k == 0; }));
}

bool MultiPoly::has_variable(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return false;
  auto i = static_cast<std::size_t>(it - vars_.begin());
  for (auto& [e, c] : terms_)
    if (e[i] != 0) return true;
  return false;
}

std::vector<std::string> MultiPoly::merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), symbol_less);
  bool has_cart = std::any_of(out.begin(), out.end(), cartesian);
  bool has_polar = std::any_of(out.begin(), out.end(), polar);
  if (has_cart && has_polar) {
    std::string la, lb;
    for (auto& s : a) la += s + " ";
    for (auto& s : b) lb += s + " ";
    throw VariableMismatch("cartesian and radial-polar variable sets {" + la + "} and {" + lb +
                           "} cannot be combined");
  }
  return out;
}

MultiPoly MultiPoly::promoted(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<std::size_t> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i)
    where[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), vars_[i]) - vars.begin());
  MultiPoly out;
  out.vars_ = vars;
  out.laurent_ = laurent_;
  for (auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void MultiPoly::trim() {
  std::vector<bool> used(vars_.size(), false);
  for (auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) nv.push_back(vars_[i]);
  TermMap nt;
  for (auto& [e, c] : terms_) {
    Exponents ne;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  auto vars = merge_vars(vars_, o.vars_);
  if (vars != vars_) *this = promoted(vars);
  laurent_.insert(o.laurent_.begin(), o.laurent_.end());
  const MultiPoly& b = o.vars_ == vars ? o : o.promoted(vars);
  for (auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  auto vars = MultiPoly::merge_vars(a.vars_, b.vars_);
  MultiPoly pa = a.promoted(vars), pb = b.promoted(vars);
  MultiPoly out;
  out.vars_ = vars;
  out.laurent_ = a.laurent_;
  out.laurent_.insert(b.laurent_.begin(), b.laurent_.end());
  MultiPoly::Exponents e(vars.size());
  for (auto& [ea, ca] : pa.terms_)
    for (auto& [eb, cb] : pb.terms_) {
      for (std::size_t i = 0; i < vars.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw VariableMismatch("negative power of a polynomial");
  MultiPoly out(Rational(1));
  out.laurent_ = laurent_;
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) out *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly ta = a, tb = b;
  ta.trim();
  tb.trim();
  if (ta.terms_.size() != tb.terms_.size()) return false;
  if (ta.terms_.empty()) return true;
  if (ta.vars_ != tb.vars_) return false;
  return std::equal(ta.terms_.begin(), ta.terms_.end(), tb.terms_.begin(),
                    [](auto& x, auto& y) { return x.first == y.first && x.second == y.second; });
}

std::vector<std::pair<std::map<std::string, int>, Rational>> MultiPoly::terms() const {
  std::vector<std::pair<std::map<std::string, int>, Rational>> out;
  for (auto& [e, c] : terms_) {
    std::map<std::string, int> m;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) m[vars_[i]] = e[i];
    out.emplace_back(std::move(m), c);
  }
  return out;
}

Rational MultiPoly::coefficient(const std::map<std::string, int>& powers) const {
  Exponents e(vars_.size(), 0);
  for (auto& [n, k] : powers) {
    if (k == 0) continue;
    auto it = std::find(vars_.begin(), vars_.end(), canonical_symbol(n));
    if (it == vars_.end()) return Rational(0);
    e[static_cast<std::size_t>(it - vars_.begin())] = k;
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly MultiPoly::coefficient_of(const std::string& name, int power) const {
  auto cn = canonical_symbol(name);
  auto it = std::find(vars_.begin(), vars_.end(), cn);
  if (it == vars_.end()) return power == 0 ? *this : MultiPoly();
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  MultiPoly out;
  out.vars_ = vars_;
  out.vars_.erase(out.vars_.begin() + static_cast<long>(idx));
  out.laurent_ = laurent_;
  for (auto& [e, c] : terms_) {
    if (e[idx] != power) continue;
    Exponents ne = e;
    ne.erase(ne.begin() + static_cast<long>(idx));
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

int MultiPoly::max_degree(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), canonical_symbol(name));
  if (it == vars_.end() || terms_.empty()) return 0;
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  int m = terms_.begin()->first[idx];
  for (auto& [e, c] : terms_) m = std::max(m, e[idx]);
  return m;
}

int MultiPoly::min_degree(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), canonical_symbol(name));
  if (it == vars_.end() || terms_.empty()) return 0;
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  int m = terms_.begin()->first[idx];
  for (auto& [e, c] : terms_) m = std::min(m, e[idx]);
  return m;
}

double MultiPoly::evaluate(const std::map<std::string, double>& values) const {
  std::vector<double> v(vars_.size(), 0.0);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = values.find(vars_[i]);
    if (it == values.end()) {
      if (has_variable(vars_[i])) throw ConfigError("no value supplied for symbol " + vars_[i]);
      continue;
    }
    v[i] = it->second;
  }
  double sum = 0.0;
  for (auto& [e, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= std::pow(v[i], e[i]);
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(const std::string& name, const Rational& value) const {
  auto cn = canonical_symbol(name);
  auto it = std::find(vars_.begin(), vars_.end(), cn);
  if (it == vars_.end()) return *this;
  auto idx = static_cast<std::size_t>(it - vars_.begin());
  MultiPoly out;
  out.vars_ = vars_;
  out.laurent_ = laurent_;
  for (auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[idx] = 0;
    if (e[idx] < 0 && value.is_zero()) throw std::domain_error("substituting zero into a negative power");
    out.add_term(ne, c * value.pow(e[idx]));
  }
  out.trim();
  return out;
}

MultiPoly MultiPoly::substitute(const std::string& name, const MultiPoly& value) const {
  auto cn = canonical_symbol(name);
  MultiPoly out;
  out.laurent_ = laurent_;
  for (int k = min_degree(cn); k <= max_degree(cn); ++k) {
    MultiPoly part = coefficient_of(cn, k);
    if (part.is_zero()) continue;
    if (k < 0) throw VariableMismatch("cannot substitute a polynomial into a negative power");
    out += part * value.pow(k);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += " * ";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = c.abs();
    std::string body;
    if (mono.empty())
      body = mag.to_string();
    else if (mag.is_one())
      body = mono;
    else
      body = mag.to_string() + " * " + mono;
    if (first)
      out = (c.sign() < 0 ? "-" : "") + body;
    else
      out += (c.sign() < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = power();
    while (true) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        MultiPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc *= Rational(1) / d.constant_term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly power() {
    skip();
    if (eat('-')) return -power();
    auto [base, symbol] = primary();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (!neg) return base.pow(k);
    if (symbol.empty()) fail("negative exponent needs a bare symbol");
    MultiPoly m = MultiPoly::variable(symbol, -k);
    return m;
  }

  std::pair<MultiPoly, std::string> primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return {p, ""};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return {MultiPoly(Rational::parse(s_.substr(start, pos_ - start))), ""};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                  static_cast<unsigned char>(s_[pos_]) >= 0x80))
        ++pos_;
      std::string name = canonical_symbol(s_.substr(start, pos_ - start));
      return {MultiPoly::variable(name), name};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------- calculus

MultiPoly differentiate(const MultiPoly& p, const std::string& var) {
  auto cn = canonical_symbol(var);
  const auto& vars = p.variables();
  auto it = std::find(vars.begin(), vars.end(), cn);
  if (it == vars.end()) return MultiPoly();
  auto idx = static_cast<std::size_t>(it - vars.begin());
  MultiPoly::TermMap out;
  for (auto& [e, c] : p.raw_terms()) {
    if (e[idx] == 0) continue;
    auto ne = e;
    ne[idx] -= 1;
    out.emplace(std::move(ne), c * Rational(e[idx]));
  }
  std::set<std::string> laurent;
  for (auto& v : vars)
    if (p.laurent_allowed(v)) laurent.insert(v);
  return MultiPoly::from_raw(vars, std::move(out), laurent);
}

MultiPoly laplacian(const MultiPoly& p, Geometry geometry) {
  if (geometry == Geometry::cartesian_1d) {
    if (p.has_variable(sym::r) || p.has_variable(sym::u))
      throw VariableMismatch("cartesian laplacian applied to a radial-polar polynomial");
    return differentiate(differentiate(p, sym::x), sym::x);
  }
  if (p.has_variable(sym::x)) throw VariableMismatch("radial laplacian applied to a cartesian polynomial");
  MultiPoly r = MultiPoly::variable(sym::r), u = MultiPoly::variable(sym::u);
  MultiPoly r2 = r * r, rinv2 = MultiPoly::variable(sym::r, -2);
  MultiPoly radial = rinv2 * differentiate(r2 * differentiate(p, sym::r), sym::r);
  MultiPoly angular = rinv2 * differentiate((MultiPoly(1) - u * u) * differentiate(p, sym::u), sym::u);
  return radial + angular;
}

MultiPoly grad_dot(const MultiPoly& a, const MultiPoly& b, Geometry geometry) {
  if (geometry == Geometry::cartesian_1d) {
    if (a.has_variable(sym::r) || b.has_variable(sym::r) || a.has_variable(sym::u) || b.has_variable(sym::u))
      throw VariableMismatch("cartesian gradient applied to a radial-polar polynomial");
    return differentiate(a, sym::x) * differentiate(b, sym::x);
  }
  if (a.has_variable(sym::x) || b.has_variable(sym::x))
    throw VariableMismatch("radial gradient applied to a cartesian polynomial");
  MultiPoly u = MultiPoly::variable(sym::u);
  MultiPoly rinv2 = MultiPoly::variable(sym::r, -2);
  return differentiate(a, sym::r) * differentiate(b, sym::r) +
         (MultiPoly(1) - u * u) * rinv2 * differentiate(a, sym::u) * differentiate(b, sym::u);
}

MultiPoly angular_average(const MultiPoly& p) {
  MultiPoly out;
  for (int k = std::min(0, p.min_degree(sym::u)); k <= p.max_degree(sym::u); ++k) {
    if (k < 0) {
      if (!p.coefficient_of(sym::u, k).is_zero()) throw VariableMismatch("negative power of u");
      continue;
    }
    if (k % 2 != 0) continue;
    out += p.coefficient_of(sym::u, k) * Rational(1, k + 1);
  }
  return out;
}

MultiPoly integrate_r(const MultiPoly& p) {
  MultiPoly log_part = p.coefficient_of(sym::r, -1);
  if (!log_part.is_zero())
    throw LogSingularity("r^-1 term with angular coefficient " + log_part.to_string());
  if (std::find(p.variables().begin(), p.variables().end(), sym::r) == p.variables().end())
    return integrate_r(p * MultiPoly::variable(sym::r, 0));
  const auto& vars = p.variables();
  auto it = std::find(vars.begin(), vars.end(), sym::r);
  std::vector<std::string> nv = vars;
  std::size_t idx = static_cast<std::size_t>(it - vars.begin());
  MultiPoly::TermMap out;
  for (auto& [e, c] : p.raw_terms()) {
    auto ne = e;
    ne[idx] += 1;
    out.emplace(std::move(ne), c / Rational(ne[idx]));
  }
  std::set<std::string> laurent;
  for (auto& v : vars)
    if (p.laurent_allowed(v)) laurent.insert(v);
  return MultiPoly::from_raw(nv, std::move(out), laurent);
}

}  // namespace trajquad
