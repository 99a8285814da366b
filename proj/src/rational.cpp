#include "trajquad/rational.hpp"

#include <cctype>

#include "trajquad/errors.hpp"

namespace trajquad {

Rational::Rational(long n, long d) {
  if (d == 0) throw ParseError("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(int k) const {
  if (k < 0) return Rational(1) / pow(-k);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(k));
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty number '" + std::string(text) + "'");

  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) throw ParseError("bad rational '" + std::string(text) + "'");
    mpz_class den{std::string(b), 10};
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    out = Rational(mpq_class(mpz_class(std::string(a), 10), den));
  } else {
    std::string_view mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mant = s.substr(0, e);
      auto ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) throw ParseError("bad exponent in '" + std::string(text) + "'");
      exp10 = std::stol(std::string(ex));
      if (eneg) exp10 = -exp10;
    }
    std::string digits;
    auto dot = mant.find('.');
    if (dot == std::string_view::npos) {
      digits = std::string(mant);
    } else {
      digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
      exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (!all_digits(digits)) throw ParseError("bad number '" + std::string(text) + "'");
    mpz_class n{digits, 10};
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    out = exp10 < 0 ? Rational(mpq_class(n, p)) : Rational(mpq_class(n * p));
  }
  return neg ? -out : out;
}

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(f));
}

Rational binomial(const Rational& top, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out = out * (top - Rational(i)) / Rational(i + 1);
  return out;
}

}  // namespace trajquad
