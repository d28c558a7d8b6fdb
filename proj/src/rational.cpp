#include "rational.hpp"

#include <cctype>

#include "error.hpp"

namespace mdl {

namespace {

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  const std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(num, 1) / mpq_class(den, 1);
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  mpz_class num, den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(s, num)
                      : parse_integer(s.substr(0, slash), num) &&
                            parse_integer(s.substr(slash + 1), den);
  if (!ok) throw Error(ErrorCode::InvalidArgument, "not a rational: '" + std::string(text) + "'");
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator: '" + std::string(text) + "'");
  mpq_class q(num, den);
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Domain, "division by zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(unsigned exponent) const {
  Rational r(1);
  for (unsigned k = 0; k < exponent; ++k) r *= *this;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::Domain, "division by zero");
  v_ /= o.v_;
  return *this;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace mdl
