#include "lgo/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "lgo/error.hpp"

namespace lgo {

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

using IntPoly = std::vector<long>;

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Exact division by a monic polynomial.
IntPoly exact_div(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  IntPoly q(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    long c = num[k];
    q[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) throw Error(ErrorCode::kInternal, "cyclotomic division not exact");
  }
  return q;
}

IntPoly x_pow_minus_one(int d) {
  IntPoly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  return p;
}

struct FieldData {
  int degree = 0;
  IntPoly phi;
  std::vector<std::vector<Rational>> powers;  // zeta^e reduced, 0 <= e < n
};

void reduce_in_place(std::vector<Rational>& r, const IntPoly& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = r.size(); k-- > deg;) {
    if (sgn(r[k]) == 0) continue;
    const Rational c = r[k];
    for (std::size_t i = 0; i < deg; ++i) {
      const long p = phi[i];
      if (p == 0) continue;
      if (p == 1) {
        r[k - deg + i] -= c;
      } else if (p == -1) {
        r[k - deg + i] += c;
      } else {
        r[k - deg + i] -= c * p;
      }
    }
    r[k] = 0;
  }
  r.resize(deg);
}

std::unique_ptr<FieldData> build_field(int n) {
  auto fd = std::make_unique<FieldData>();
  IntPoly num{1}, den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = moebius(n / d);
    if (mu == 1) num = mul(num, x_pow_minus_one(d));
    if (mu == -1) den = mul(den, x_pow_minus_one(d));
  }
  // den is monic up to sign; normalize so both are monic.
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  fd->phi = exact_div(num, den);
  fd->degree = static_cast<int>(fd->phi.size()) - 1;
  fd->powers.reserve(n);
  std::vector<Rational> cur(fd->degree, Rational(0));
  cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    fd->powers.push_back(cur);
    std::vector<Rational> next(fd->degree + 1, Rational(0));
    for (int i = 0; i < fd->degree; ++i) next[i + 1] = cur[i];
    reduce_in_place(next, fd->phi);
    cur = std::move(next);
  }
  return fd;
}

const FieldData& field_data(int n) {
  thread_local int last_n = 0;
  thread_local const FieldData* last = nullptr;
  if (n == last_n) return *last;
  if (n <= 0) throw Error(ErrorCode::kInternal, "conductor must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_field(n)).first;
  last_n = n;
  last = it->second.get();
  return *last;
}

// Univariate polynomials over Q used by the extended Euclidean inversion.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  rem = a;
  trim(rem);
  quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead_inv = 1 / b.back();
  while (rem.size() >= b.size() && !rem.empty()) {
    const std::size_t shift = rem.size() - b.size();
    Rational c = rem.back() * lead_inv;
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    rem.pop_back();
    trim(rem);
  }
}

QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly r(std::max(a.size(), q.size() + b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (sgn(q[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
  }
  trim(r);
  return r;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) { return field_data(n).phi; }

int euler_phi(int n) { return field_data(n).degree; }

CycNum::CycNum() : CycNum(1, Rational(0)) {}

CycNum::CycNum(int conductor, const Rational& value) : conductor_(conductor) {
  coeffs_.assign(field_data(conductor).degree, Rational(0));
  coeffs_[0] = value;
  coeffs_[0].canonicalize();
}

CycNum::CycNum(int conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {}

CycNum CycNum::root_of_unity(int conductor, const Rational& alpha) {
  const Rational a = frac(alpha);
  const long den = denominator_of(a);
  if (conductor % den != 0) {
    throw Error(ErrorCode::kConductorMismatch,
                "denominator of " + lgo::to_string(alpha) + " does not divide conductor " +
                    std::to_string(conductor));
  }
  const long e = to_long(a.get_num()) * (conductor / den);
  return CycNum(conductor, field_data(conductor).powers[e]);
}

void CycNum::check_same_field(const CycNum& o) const {
  if (conductor_ != o.conductor_) {
    throw Error(ErrorCode::kConductorMismatch, "Q(zeta_" + std::to_string(conductor_) +
                                                   ") vs Q(zeta_" + std::to_string(o.conductor_) +
                                                   ")");
  }
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycNum::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

std::optional<Rational> CycNum::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return std::nullopt;
  }
  return coeffs_[0];
}

CycNum CycNum::lift(int conductor) const {
  if (conductor == conductor_) return *this;
  if (conductor % conductor_ != 0) {
    throw Error(ErrorCode::kConductorMismatch, "cannot lift Q(zeta_" + std::to_string(conductor_) +
                                                   ") into Q(zeta_" + std::to_string(conductor) +
                                                   ")");
  }
  const auto& target = field_data(conductor);
  const int step = conductor / conductor_;
  std::vector<Rational> out(target.degree, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    const auto& pw = target.powers[i * step];
    for (int j = 0; j < target.degree; ++j) {
      if (sgn(pw[j]) != 0) out[j] += coeffs_[i] * pw[j];
    }
  }
  return CycNum(conductor, std::move(out));
}

CycNum& CycNum::operator+=(const CycNum& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(o.coeffs_[i]) != 0) coeffs_[i] += o.coeffs_[i];
  }
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(o.coeffs_[i]) != 0) coeffs_[i] -= o.coeffs_[i];
  }
  return *this;
}

CycNum& CycNum::operator*=(const Rational& q) {
  Rational factor = q;
  factor.canonicalize();
  for (auto& c : coeffs_) {
    if (sgn(c) != 0) c *= factor;
  }
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  check_same_field(o);
  if (auto r = o.as_rational()) return *this *= *r;
  if (auto r = as_rational()) {
    Rational s = *r;
    *this = o;
    return *this *= s;
  }
  const std::size_t deg = coeffs_.size();
  std::vector<Rational> prod(2 * deg - 1, Rational(0));
  for (std::size_t i = 0; i < deg; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (sgn(o.coeffs_[j]) == 0) continue;
      prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  reduce_in_place(prod, field_data(conductor_).phi);
  coeffs_ = std::move(prod);
  return *this;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  a.check_same_field(b);
  return a.coeffs_ == b.coeffs_;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  if (auto r = as_rational()) return CycNum(conductor_, 1 / *r);
  const auto& fd = field_data(conductor_);
  QPoly r0(fd.phi.begin(), fd.phi.end());
  QPoly r1 = coeffs_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    QPoly q, rem;
    divmod(r0, r1, q, rem);
    QPoly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is the (constant) gcd.
  if (r0.size() != 1) throw Error(ErrorCode::kInternal, "cyclotomic polynomial not irreducible?");
  const Rational scale = 1 / r0[0];
  for (auto& c : s0) c *= scale;
  reduce_in_place(s0, fd.phi);
  s0.resize(fd.degree, Rational(0));
  return CycNum(conductor_, std::move(s0));
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum result = one(conductor_);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z" << conductor_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

}  // namespace lgo
