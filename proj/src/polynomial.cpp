#include "lgo/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "lgo/error.hpp"

namespace lgo {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::variable(int nvars, int index, int power) {
  std::vector<int> e(nvars, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

int Monomial::support_size() const {
  return static_cast<int>(std::count_if(exps_.begin(), exps_.end(), [](int a) { return a != 0; }));
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > o.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && o.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<int> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], o.exps_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<int> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::operator/(const Monomial& o) const {
  std::vector<int> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] - o.exps_[i];
  return Monomial(std::move(e));
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!first) os << "*";
    os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
    if (exps_[i] > 1) os << "^" << exps_[i];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  // Lex with x1 > x2 > ...: a < b if at the first difference a has the smaller exponent.
  return a.exponents() < b.exponents();
}

// ------------------------------------------------------------ WeightSystem

Rational WeightSystem::sum() const {
  Rational s = 0;
  for (const auto& x : q) s += x;
  return s;
}

WeightSystem WeightSystem::subset(const std::vector<int>& indices) const {
  WeightSystem w;
  w.d0 = d0;
  for (int i : indices) {
    w.d.push_back(d[i]);
    w.q.push_back(q[i]);
  }
  return w;
}

WeightSystem WeightSystem::from_integer(long d0, std::vector<long> d) {
  WeightSystem w;
  w.d0 = d0;
  w.d = std::move(d);
  for (long dk : w.d) w.q.emplace_back(Rational(dk, d0));
  for (auto& x : w.q) x.canonicalize();
  return w;
}

Rational weighted_degree(const Monomial& m, const WeightSystem& w) {
  if (m.nvars() != w.nvars()) {
    throw Error(ErrorCode::kDimensionMismatch, "monomial and weight system lengths differ");
  }
  Rational deg = 0;
  for (int i = 0; i < m.nvars(); ++i) {
    if (m[i] != 0) deg += w.q[i] * m[i];
  }
  return deg;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(int nvars, int conductor) : nvars_(nvars), conductor_(conductor) {}

Polynomial Polynomial::constant(int nvars, const CycNum& c) {
  Polynomial p(nvars, c.conductor());
  p.add_term(Monomial::one(nvars), c);
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const CycNum& c) {
  Polynomial p(m.nvars(), c.conductor());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index, int conductor) {
  return term(Monomial::variable(nvars, index), CycNum::one(conductor));
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.total_degree();
}

CycNum Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycNum::zero(conductor_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const CycNum& c) {
  if (m.nvars() != nvars_) throw Error(ErrorCode::kDimensionMismatch, "monomial arity");
  if (c.is_zero()) return;
  CycNum cc = c;
  if (c.conductor() != conductor_) {
    const int n = static_cast<int>(lcm_long(conductor_, c.conductor()));
    if (n != conductor_) *this = lift(n);
    cc = c.lift(n);
  }
  auto [it, inserted] = terms_.try_emplace(m, cc);
  if (!inserted) {
    it->second += cc;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::lift(int conductor) const {
  if (conductor == conductor_) return *this;
  Polynomial p(nvars_, conductor);
  for (const auto& [m, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), m, c.lift(conductor));
  return p;
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_) {
    throw Error(ErrorCode::kDimensionMismatch, "polynomials in " + std::to_string(nvars_) +
                                                   " and " + std::to_string(o.nvars_) +
                                                   " variables");
  }
}

int common_conductor(const Polynomial& a, const Polynomial& b) {
  return static_cast<int>(lcm_long(a.conductor(), b.conductor()));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  const int n = common_conductor(*this, o);
  if (n != conductor_) *this = lift(n);
  for (const auto& [m, c] : o.terms_) add_term(m, c.conductor() == n ? c : c.lift(n));
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  const int n = common_conductor(*this, o);
  if (n != conductor_) *this = lift(n);
  for (const auto& [m, c] : o.terms_) add_term(m, -(c.conductor() == n ? c : c.lift(n)));
  return *this;
}

Polynomial& Polynomial::operator*=(const CycNum& c) {
  const int n = static_cast<int>(lcm_long(conductor_, c.conductor()));
  if (n != conductor_) *this = lift(n);
  const CycNum cc = c.lift(n);
  if (cc.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= cc;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  const int n = common_conductor(a, b);
  const Polynomial& la = a.conductor() == n ? a : a.lift(n);
  const Polynomial& lb = b.conductor() == n ? b : b.lift(n);
  Polynomial r(a.nvars_, n);
  for (const auto& [ma, ca] : la.terms_) {
    for (const auto& [mb, cb] : lb.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  const int n = common_conductor(a, b);
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second.lift(n) != ib->second.lift(n)) return false;
  }
  return true;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result = constant(nvars_, CycNum::one(conductor_));
  for (int i = 0; i < e; ++i) result = result * *this;
  return result;
}

std::vector<std::string> default_variable_names(int nvars) {
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string Polynomial::to_string(const std::vector<std::string>& names_in) const {
  const auto names = names_in.empty() ? default_variable_names(nvars_) : names_in;
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool is_const = m.total_degree() == 0;
    std::string mono = m.to_string(names);
    auto r = c.as_rational();
    if (r) {
      const bool neg = sgn(*r) < 0;
      Rational mag = abs(*r);
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (is_const) {
        os << mag.get_str();
      } else if (mag == 1) {
        os << mono;
      } else {
        os << mag.get_str() << "*" << mono;
      }
    } else {
      if (!first) os << " + ";
      os << "(" << c.to_string() << ")";
      if (!is_const) os << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars), n_(static_cast<int>(vars.size())) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::kSyntaxError, msg + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial constant(const Rational& r) { return Polynomial::constant(n_, CycNum(1, r)); }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc *= CycNum(1, Rational(-1));
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      const std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      base = base.pow(std::stoi(d));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      Integer den(1);
      if (accept('/')) {
        den = Integer(digits());
        if (den == 0) throw Error(ErrorCode::kDivisionByZero, "zero denominator in coefficient");
      }
      Rational r(num, den);
      r.canonicalize();
      return constant(r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "e" && accept('[')) {
        skip_ws();
        bool neg = accept('-');
        Integer num(digits());
        Integer den(1);
        if (accept('/')) den = Integer(digits());
        expect(']');
        if (den == 0) throw Error(ErrorCode::kDivisionByZero, "zero denominator in e[...]");
        Rational alpha(neg ? Integer(-num) : num, den);
        alpha.canonicalize();
        const long conductor = denominator_of(alpha);
        return Polynomial::constant(n_, CycNum::root_of_unity(static_cast<int>(conductor), alpha));
      }
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        throw Error(ErrorCode::kUnknownVariable, "'" + name + "' at column " + std::to_string(start + 1));
      }
      return Polynomial::variable(n_, static_cast<int>(it - vars_.begin()), 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const std::vector<std::string>& variables,
                      ParseOptions options) {
  Polynomial p = Parser(text, variables).parse();
  if (!options.allow_mixed_quadratic) {
    for (const auto& [m, c] : p.terms()) {
      if (m.total_degree() == 2 && m.support_size() == 2) {
        throw Error(ErrorCode::kMixedQuadratic,
                    "monomial " + m.to_string(variables) + " is a product of two distinct variables");
      }
    }
  }
  return p;
}

std::vector<std::string> infer_variables(std::string_view text) {
  std::set<std::string> names;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name(text.substr(start, i - start));
      std::size_t j = i;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      const bool is_root = name == "e" && j < text.size() && text[j] == '[';
      if (!is_root) names.insert(name);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
  }
  std::vector<std::string> out(names.begin(), names.end());
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    long num = k < s.size() && s.size() - k < 15 ? std::stol(s.substr(k)) : -1;
    return std::make_pair(s.substr(0, k), num);
  };
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    return split(a) < split(b);
  });
  return out;
}

// ---------------------------------------------------------- differential ops

Polynomial partial_derivative(const Polynomial& p, int index) {
  if (index < 0 || index >= p.nvars()) {
    throw Error(ErrorCode::kDimensionMismatch, "derivative index out of range");
  }
  Polynomial r(p.nvars(), p.conductor());
  for (const auto& [m, c] : p.terms()) {
    const int a = m[index];
    if (a == 0) continue;
    std::vector<int> e = m.exponents();
    e[index] -= 1;
    r.add_term(Monomial(std::move(e)), c * Rational(a));
  }
  return r;
}

Polynomial substitute_linear(const Polynomial& p, const CycMatrix& linear_map) {
  if (linear_map.rows() != p.nvars()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "substitution matrix has " + std::to_string(linear_map.rows()) +
                    " rows for a polynomial in " + std::to_string(p.nvars()) + " variables");
  }
  const int m = linear_map.cols();
  const int n = static_cast<int>(lcm_long(p.conductor(), linear_map.conductor()));
  const CycMatrix lmap = linear_map.lift(n);

  std::vector<Polynomial> forms;
  forms.reserve(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) {
    Polynomial form(m, n);
    for (int j = 0; j < m; ++j) form.add_term(Monomial::variable(m, j), lmap(i, j));
    forms.push_back(std::move(form));
  }
  // powers[i][k] = forms[i]^k, grown lazily.
  std::vector<std::vector<Polynomial>> powers(p.nvars());
  auto power = [&](int i, int k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(m, CycNum::one(n)));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * forms[i]);
    return cache[k];
  };

  Polynomial result(m, n);
  for (const auto& [mono, c] : p.terms()) {
    Polynomial t = Polynomial::constant(m, c.lift(n));
    for (int i = 0; i < p.nvars() && !t.is_zero(); ++i) {
      if (mono[i] != 0) t = t * power(i, mono[i]);
    }
    result += t;
  }
  return result;
}

Polynomial hessian(const Polynomial& f) {
  const int n = f.nvars();
  if (n == 0) return Polynomial::constant(0, CycNum::one(f.conductor()));
  std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial fi = partial_derivative(f, i);
    for (int j = i; j < n; ++j) {
      h[i][j] = partial_derivative(fi, j);
      h[j][i] = h[i][j];
    }
  }
  // Laplace expansion along rows, memoised on the set of remaining columns.
  std::map<unsigned, Polynomial> memo;
  auto det = [&](auto&& self, int row, unsigned cols) -> Polynomial {
    if (row == n) return Polynomial::constant(n, CycNum::one(f.conductor()));
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Polynomial acc(n, f.conductor());
    int sign_pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      const Polynomial& entry = h[row][c];
      if (!entry.is_zero()) {
        Polynomial minor = self(self, row + 1, cols & ~(1u << c));
        Polynomial t = entry * minor;
        if (sign_pos % 2 == 0) {
          acc += t;
        } else {
          acc -= t;
        }
      }
      ++sign_pos;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return det(det, 0, (n >= 32 ? ~0u : (1u << n) - 1));
}

}  // namespace lgo
