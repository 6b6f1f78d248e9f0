#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "lgo/error.hpp"
#include "lgo/jacobian.hpp"
#include "lgo/quasihom.hpp"

namespace lgo {
namespace {

Polynomial P(const std::string& text, int n) { return parse_poly(text, default_variable_names(n)); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

JacobianRing ring_of(const std::string& text, int n) {
  const Polynomial f = P(text, n);
  return quotient_ring(f, analyze(f).weights);
}

const char* kMain = "x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9";
const char* kQuintic = "x1^5+x2^5+x3^5+x4^5+x5^5";
const char* kStar = "x1^4 + x1*x2^3 + x1*x3^3 + x1*x4^3 + x2^2*x3^2 + x2^2*x4^2 + x3^2*x4^2";

TEST(Groebner, MonomialIdeal) {
  const auto gb = groebner({P("3*x1^2", 2), P("3*x2^2", 2)});
  ASSERT_EQ(gb.generators().size(), 2u);
  EXPECT_EQ(gb.generators()[0], P("x2^2", 2));
  EXPECT_EQ(gb.generators()[1], P("x1^2", 2));
}

TEST(Groebner, CubicPartials) {
  const Polynomial f = P("x1^3 + x1*x2^2", 2);
  const auto gb = groebner({partial_derivative(f, 0), partial_derivative(f, 1)});
  bool pure1 = false, pure2 = false;
  for (const auto& l : gb.leading_monomials()) {
    if (l.support_size() == 1 && l[0] > 0) pure1 = true;
    if (l.support_size() == 1 && l[1] > 0) pure2 = true;
  }
  EXPECT_TRUE(pure1);
  EXPECT_TRUE(pure2);
  for (const auto& g : gb.generators()) {
    EXPECT_TRUE(g.coefficient(leading_monomial(g)).is_one());
  }
}

TEST(Groebner, SingleVariable) {
  const auto gb = groebner({P("x1", 1)});
  ASSERT_EQ(gb.generators().size(), 1u);
  EXPECT_EQ(gb.generators()[0], P("x1", 1));
}

TEST(Groebner, ReducedAndClosed) {
  for (auto [text, n] : std::vector<std::pair<std::string, int>>{
           {kMain, 4}, {kStar, 4}, {"x1^3 + x1*x2^2 + x1*x3^2 + x2^2*x3", 3}, {"x1^2*x2 + x2^3*x3 + x3^4*x1", 3}}) {
    const Polynomial f = P(text, n);
    std::vector<Polynomial> gens;
    for (int i = 0; i < n; ++i) gens.push_back(partial_derivative(f, i));
    const auto gb = groebner(gens);
    for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).is_zero()) << text;
    // Reduced: no term of any generator is divisible by another generator's leading monomial.
    for (std::size_t a = 0; a < gb.generators().size(); ++a) {
      for (const auto& [m, c] : gb.generators()[a].terms()) {
        for (std::size_t b = 0; b < gb.generators().size(); ++b) {
          if (a != b) EXPECT_FALSE(gb.leading_monomials()[b].divides(m)) << text;
        }
      }
    }
    // S-polynomials reduce to zero.
    for (std::size_t a = 0; a < gb.generators().size(); ++a) {
      for (std::size_t b = a + 1; b < gb.generators().size(); ++b) {
        const auto& la = gb.leading_monomials()[a];
        const auto& lb = gb.leading_monomials()[b];
        const Monomial l = la.lcm(lb);
        const int cn = gb.generators()[a].conductor();
        Polynomial s = gb.generators()[a] * Polynomial::term(l / la, CycNum::one(cn)) -
                       gb.generators()[b] * Polynomial::term(l / lb, CycNum::one(cn));
        EXPECT_TRUE(normal_form(s, gb).is_zero()) << text;
      }
    }
  }
}

TEST(QuotientRing, Examples) {
  const auto r = ring_of("x1^3 + x2^3", 2);
  EXPECT_EQ(r.mu(), 4);
  EXPECT_EQ(r.basis, (std::vector<Monomial>{Monomial({0, 0}), Monomial({0, 1}), Monomial({1, 0}), Monomial({1, 1})}));
  EXPECT_EQ(ring_of(kQuintic, 5).mu(), 1024);
  EXPECT_EQ(ring_of(kStar, 4).mu(), 81);
  EXPECT_EQ(ring_of(kMain, 4).mu(), 165);
}

TEST(QuotientRing, ZeroPolynomial) {
  const auto r = quotient_ring(Polynomial(0, 1), WeightSystem{});
  EXPECT_EQ(r.mu(), 1);
  EXPECT_EQ(r.c_hat, Rational(0));
  EXPECT_TRUE(r.hess_coefficient.is_one());
}

TEST(QuotientRing, NotIsolated) {
  const Polynomial f = P("x1^3 + x1*x2^2 + x1*x3^2 + x1*x4^2", 4);
  const auto w = WeightSystem::from_integer(3, {1, 1, 1, 1});
  EXPECT_EQ(code_of([&] { quotient_ring(f, w); }), ErrorCode::kNotIsolated);
  const Polynomial g = P("x1^3 + x1*x2^2 + x1*x3^2 + x1*x4^2 + 2*x2*x3*x4", 4);
  EXPECT_EQ(quotient_ring(g, w).mu(), 16);
}

TEST(NormalForm, Examples) {
  const auto r = ring_of("x1^3 + x1*x2^2", 2);
  const Polynomial in_span = P("x1 + 3*x2 + 1", 2);
  EXPECT_EQ(normal_form(in_span, r.gb), in_span);
  const auto cube = ring_of("x1^3", 1);
  EXPECT_TRUE(normal_form(P("x1^2", 1), cube.gb).is_zero());
  // Two reduction orders agree: reduce x1^4 directly and as x1 * NF(x1^3).
  const Polynomial direct = normal_form(P("x1^4", 2), r.gb);
  const Polynomial staged = normal_form(P("x1", 2) * normal_form(P("x1^3", 2), r.gb), r.gb);
  EXPECT_EQ(direct, staged);
  for (const auto& [m, c] : direct.terms()) EXPECT_TRUE(r.gb.is_standard(m));
}

TEST(GradedDimensions, Examples) {
  const auto q = ring_of(kQuintic, 5).graded_dimensions();
  EXPECT_EQ(q.at(Rational(1)), 101);
  EXPECT_EQ(q.at(Rational(3)), 1);
  EXPECT_EQ(q.rbegin()->first, Rational(3));
  const auto c = ring_of("x1^3", 1).graded_dimensions();
  EXPECT_EQ(c, (GradedDimensions{{Rational(0), 1}, {Rational(1, 3), 1}}));
}

TEST(PoincareOracle, Examples) {
  const auto q = poincare_oracle(WeightSystem::from_integer(5, {1, 1, 1, 1, 1}));
  long total = 0;
  for (const auto& [d, n] : q) total += n;
  EXPECT_EQ(total, 1024);
  EXPECT_EQ(q.at(Rational(1)), 101);
  EXPECT_EQ(poincare_oracle(WeightSystem::from_integer(3, {1})),
            (GradedDimensions{{Rational(0), 1}, {Rational(1, 3), 1}}));
  const auto m = poincare_oracle(WeightSystem::from_integer(12, {3, 6, 1, 2}));
  total = 0;
  for (const auto& [d, n] : m) total += n;
  EXPECT_EQ(total, 165);
}

TEST(ResiduePairing, Examples) {
  const auto r = ring_of(kMain, 4);
  EXPECT_TRUE(residue_pairing(P("1", 4), hessian(r.f), r).is_one());
  const auto c = ring_of("x1^3", 1);
  EXPECT_EQ(residue_pairing(P("x1", 1), P("1", 1), c), CycNum(1, Rational(1, 6)));
  EXPECT_TRUE(residue_pairing(P("1", 4), P("1", 4), r).is_zero());
}

// Random invertible polynomials with N <= 4.
std::pair<std::string, int> random_invertible(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2), expo(2, 4);
  std::string text;
  int n = 0;
  auto var = [](int i) { return "x" + std::to_string(i + 1); };
  while (n < 4) {
    const int k = kind(rng);
    const int room = 4 - n;
    const int len = k == 0 ? 1 : std::min(room, std::uniform_int_distribution<int>(2, 3)(rng));
    if (k != 0 && len < 2) break;
    if (!text.empty()) text += " + ";
    if (k == 0) {
      text += var(n) + "^" + std::to_string(expo(rng) + 1);
    } else if (k == 1) {
      text += var(n) + "^" + std::to_string(expo(rng));
      for (int i = 1; i < len; ++i) text += " + " + var(n + i - 1) + "*" + var(n + i) + "^" + std::to_string(expo(rng));
    } else {
      for (int i = 0; i < len; ++i) {
        if (i) text += " + ";
        text += var(n + i) + "^" + std::to_string(expo(rng)) + "*" + var(n + (i + 1) % len);
      }
    }
    n += len;
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) break;
  }
  return {text, n};
}

TEST(JacobianProperty, GradedDimensionsMatchOracle) {
  std::mt19937 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const auto [text, n] = random_invertible(rng);
    const auto r = ring_of(text, n);
    EXPECT_EQ(r.graded_dimensions(), poincare_oracle(r.weights)) << text;
    ++checked;
  }
  for (auto [text, n] : std::vector<std::pair<std::string, int>>{{kMain, 4}, {kQuintic, 5}, {kStar, 4}}) {
    const auto r = ring_of(text, n);
    EXPECT_EQ(r.graded_dimensions(), poincare_oracle(r.weights)) << text;
  }
  EXPECT_GE(checked, 10);
}

TEST(JacobianProperty, PairingIsPerfect) {
  for (auto [text, n] : std::vector<std::pair<std::string, int>>{
           {kMain, 4}, {"x1^3 + x1*x2^2 + x1*x3^2 + x2^2*x3", 3}, {"x1^2*x2 + x2^3*x3 + x3^4*x1", 3}}) {
    const auto r = ring_of(text, n);
    const int cn = r.f.conductor();
    for (const auto& [deg, dim] : r.graded_dimensions()) {
      std::vector<int> lo, hi;
      for (int i = 0; i < r.mu(); ++i) {
        if (r.degrees[i] == deg) lo.push_back(i);
        if (r.degrees[i] == r.c_hat - deg) hi.push_back(i);
      }
      ASSERT_EQ(lo.size(), hi.size()) << text;
      CycMatrix gram(static_cast<int>(lo.size()), static_cast<int>(hi.size()), cn);
      for (std::size_t a = 0; a < lo.size(); ++a)
        for (std::size_t b = 0; b < hi.size(); ++b)
          gram(static_cast<int>(a), static_cast<int>(b)) =
              residue_pairing(Polynomial::term(r.basis[lo[a]], CycNum::one(cn)),
                              Polynomial::term(r.basis[hi[b]], CycNum::one(cn)), r)
                  .lift(cn);
      EXPECT_EQ(rank(gram), static_cast<int>(lo.size())) << text << " degree " << deg;
    }
  }
}

TEST(JacobianProperty, MuInvariantUnderRenumberingAndScaling) {
  EXPECT_EQ(ring_of("x3^2*x2 + x2^3*x1 + x1^4*x3", 3).mu(), ring_of("x1^2*x2 + x2^3*x3 + x3^4*x1", 3).mu());
  EXPECT_EQ(ring_of("5*x1^2*x2 + 2*x2^3*x3 + e[1/3]*x3^4*x1", 3).mu(), ring_of("x1^2*x2 + x2^3*x3 + x3^4*x1", 3).mu());
}

TEST(JacobianProperty, NormalFormIsProjection) {
  const auto r = ring_of(kMain, 4);
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> e(0, 6), c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial p(4, 1);
    for (int t = 0; t < 3; ++t) p.add_term(Monomial({e(rng), e(rng), e(rng), e(rng)}), CycNum(1, Rational(c(rng))));
    const Polynomial nf = normal_form(p, r.gb);
    EXPECT_EQ(normal_form(nf, r.gb), nf);
  }
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(normal_form(partial_derivative(r.f, i), r.gb).is_zero());
}

TEST(JacobianProperty, CacheReturnsSameRing) {
  const Polynomial f = P(kMain, 4);
  const auto w = analyze(f).weights;
  const auto a = cached_quotient_ring(f, w);
  const auto b = cached_quotient_ring(f, w);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(a->mu(), 165);
}

}  // namespace
}  // namespace lgo
