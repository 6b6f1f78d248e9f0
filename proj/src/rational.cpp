#include "lgo/rational.hpp"

#include <cctype>
#include <numeric>

#include "lgo/error.hpp"

namespace lgo {

Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

namespace {

Rational canonical(const Rational& q) {
  Rational r = q;
  r.canonicalize();
  return r;
}

}  // namespace

bool is_integer(const Rational& q) { return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0; }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto valid_int = [](std::string_view t) {
    std::size_t i = 0;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::kSyntaxError, "malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw Error(ErrorCode::kDivisionByZero, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::kInternal, "integer overflow: " + z.get_str());
  return z.get_si();
}

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

long denominator_of(const Rational& q) { return to_long(canonical(q).get_den()); }

long common_denominator(const std::vector<Rational>& v) {
  long d = 1;
  for (const auto& q : v) d = lcm_long(d, denominator_of(q));
  return d;
}

}  // namespace lgo
