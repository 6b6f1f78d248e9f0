#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "lgo/error.hpp"
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

const char* kMain = "x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9";
const char* kQuintic = "x1^5+x2^5+x3^5+x4^5+x5^5";
const char* kStar = "x1^4 + x1*x2^3 + x1*x3^3 + x1*x4^3 + x2^2*x3^2 + x2^2*x4^2 + x3^2*x4^2";

std::vector<Rational> Q(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [p, q] : v) {
    out.emplace_back(p, q);
    out.back().canonicalize();
  }
  return out;
}

TEST(Graph, LoopOfThree) {
  const auto g = build_graph(P("x1^2*x2 + x2^3*x3 + x3^4*x1", 3));
  EXPECT_EQ(g.kappa, (std::vector<int>{1, 2, 0}));
  ASSERT_EQ(g.components.size(), 1u);
  EXPECT_EQ(g.components[0].cycle, (std::vector<int>{0, 1, 2}));
}

TEST(Graph, CubicWithCrossTerm) {
  const Polynomial f = P("x1^3 + x2^3 + x3^3 + x1*x2*x3", 3);
  const auto g = build_graph(f);
  EXPECT_EQ(g.kappa, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(g.components.size(), 3u);
  EXPECT_EQ(decompose(f, g).f_add, P("x1*x2*x3", 3));
}

TEST(Graph, MainExampleTieBreak) {
  const auto g = build_graph(P(kMain, 4));
  EXPECT_EQ(g.kappa, (std::vector<int>{1, 1, 1, 3}));
  const auto cands = graph_candidates(P(kMain, 4), 2);
  ASSERT_EQ(cands.size(), 2u);
  EXPECT_EQ(cands[0].target, 1);
  EXPECT_EQ(cands[1].target, 0);
}

TEST(Graph, NoGraphMonomial) {
  EXPECT_EQ(code_of([] { build_graph(P("x1^3 + x1*x2^2*x3 + x3^3", 3)); }), ErrorCode::kNoGraphMonomial);
}

TEST(Decompose, TreesAndAdditionalPart) {
  const Polynomial f = P("x1^3 + x1*x2^2 + x1*x3^2 + x1*x4^2 + e[1/4]*x2*x3*x4", 4);
  const auto g = build_graph(f);
  const auto d = decompose(f, g);
  EXPECT_EQ(d.f0, P("x1^3", 4));
  ASSERT_EQ(d.trees.size(), 3u);
  EXPECT_EQ(d.trees[0], P("x1*x2^2", 4));
  EXPECT_EQ(d.trees[1], P("x1*x3^2", 4));
  EXPECT_EQ(d.trees[2], P("x1*x4^2", 4));
  EXPECT_EQ(d.f_add, P("e[1/4]*x2*x3*x4", 4));
  EXPECT_TRUE(d.is_star_shaped);
  const auto w = solve_weights(f, exponent_matrix(f, g));
  EXPECT_EQ(w.q, Q({{1, 3}, {1, 3}, {1, 3}, {1, 3}}));
}

TEST(Decompose, QuinticIsFiveFermats) {
  const Polynomial f = P(kQuintic, 5);
  const auto g = build_graph(f);
  const auto d = decompose(f, g);
  EXPECT_EQ(g.components.size(), 5u);
  EXPECT_TRUE(d.trees.empty());
  EXPECT_TRUE(d.f_add.is_zero());
  EXPECT_EQ(d.f0, f);
  EXPECT_FALSE(d.is_star_shaped);
}

TEST(Decompose, StarShaped) {
  const Polynomial f = P(kStar, 4);
  const auto g = build_graph(f);
  const auto d = decompose(f, g);
  EXPECT_TRUE(d.is_star_shaped);
  EXPECT_EQ(d.f_add, P("x2^2*x3^2 + x2^2*x4^2 + x3^2*x4^2", 4));
  const auto a = analyze(f);
  EXPECT_TRUE(a.calabi_yau);
  EXPECT_EQ(a.weights.q, Q({{1, 4}, {1, 4}, {1, 4}, {1, 4}}));
}

TEST(Decompose, PartsSumToF) {
  for (const char* text : {kMain, kStar, "x1^3 + x1*x2^2 + x1*x3^2 + x2^2*x3", "x1^2 + x1*x2^4 + x2*x3^4"}) {
    const Polynomial f = P(text, text == std::string(kMain) || text == std::string(kStar) ? 4 : 3);
    const auto d = decompose(f, build_graph(f));
    Polynomial sum = d.f0 + d.f_add;
    for (const auto& t : d.trees) sum += t;
    EXPECT_EQ(sum, f) << text;
    EXPECT_FALSE(d.f0.is_zero());
  }
}

TEST(ExponentMatrix, Examples) {
  const Polynomial fv = P("x1^2 + x2^3*x1 + x3^4*x2", 3);
  const auto e = exponent_matrix(fv, build_graph(fv));
  EXPECT_EQ(e.entries, (std::vector<std::vector<long>>{{2, 0, 0}, {1, 3, 0}, {0, 1, 4}}));
  EXPECT_EQ(e.det, 24);

  const Polynomial chain2 = P("x1^2*x2 + x2^3", 2);
  const auto e2 = exponent_matrix(chain2, build_graph(chain2));
  EXPECT_EQ(e2.entries, (std::vector<std::vector<long>>{{2, 1}, {0, 3}}));
  EXPECT_EQ(e2.det, 6);

  const Polynomial f = P(kMain, 4);
  const auto em = exponent_matrix(f, build_graph(f));
  EXPECT_EQ(em.entries, (std::vector<std::vector<long>>{{2, 1, 0, 0}, {0, 2, 0, 0}, {0, 1, 6, 0}, {0, 0, 0, 6}}));
  EXPECT_EQ(em.det, 144);
}

TEST(Weights, Examples) {
  const auto a = analyze(P(kMain, 4));
  EXPECT_EQ(a.weights.q, Q({{1, 4}, {1, 2}, {1, 12}, {1, 6}}));
  EXPECT_EQ(a.weights.d0, 144);
  EXPECT_EQ(a.weights.d, (std::vector<long>{36, 72, 12, 24}));
  EXPECT_TRUE(a.calabi_yau);

  const auto v = analyze(P("x1^2 + x2^2*x1 + x3^2*x2", 3));
  EXPECT_EQ(v.weights.q, Q({{1, 2}, {1, 4}, {3, 8}}));
  EXPECT_FALSE(v.calabi_yau);

  EXPECT_TRUE(analyze(P(kQuintic, 5)).calabi_yau);
}

TEST(Weights, Errors) {
  EXPECT_EQ(code_of([] { analyze(P("x1^3 + x2^3 + x1^2*x2^2", 2)); }), ErrorCode::kNotQuasihomogeneous);
  ExponentMatrix linear;
  linear.entries = {{1, 0}, {0, 1}};
  linear.row_monomials = {Monomial({1, 0}), Monomial({0, 1})};
  linear.det = 1;
  EXPECT_EQ(code_of([&] { solve_weights(P("x1 + x2", 2), linear); }), ErrorCode::kWeightOutOfRange);
}

TEST(Classify, Examples) {
  const Polynomial fiv = P("x1^3 + x2^2*x3 + x3^4*x2", 3);
  auto g = build_graph(fiv);
  auto c = classify_invertible(fiv, g, decompose(fiv, g));
  ASSERT_TRUE(c.invertible);
  ASSERT_EQ(c.atoms.size(), 2u);
  EXPECT_EQ(c.atoms[0].type, AtomType::kFermat);
  EXPECT_EQ(c.atoms[1].type, AtomType::kLoop);
  EXPECT_EQ(c.atoms[1].exponents, (std::vector<int>{2, 4}));

  const Polynomial fiii = P("x1^3 + x1*x2^2 + x1*x3^2 + x2^2*x3", 3);
  g = build_graph(fiii);
  EXPECT_FALSE(classify_invertible(fiii, g, decompose(fiii, g)).invertible);

  const Polynomial q = P(kQuintic, 5);
  g = build_graph(q);
  c = classify_invertible(q, g, decompose(q, g));
  ASSERT_TRUE(c.invertible);
  EXPECT_EQ(c.atoms.size(), 5u);
  for (const auto& atom : c.atoms) EXPECT_EQ(atom.type, AtomType::kFermat);

  const Polynomial chain = P("x1^2 + x1*x2^4 + x2*x3^4", 3);
  g = build_graph(chain);
  c = classify_invertible(chain, g, decompose(chain, g));
  ASSERT_TRUE(c.invertible);
  ASSERT_EQ(c.atoms.size(), 1u);
  EXPECT_EQ(c.atoms[0].type, AtomType::kChain);
  EXPECT_EQ(c.atoms[0].variables, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(c.atoms[0].exponents, (std::vector<int>{2, 4, 4}));
}

TEST(Transpose, Examples) {
  const Polynomial chain2 = P("x1^2*x2 + x2^3", 2);
  const auto e = exponent_matrix(chain2, build_graph(chain2));
  const auto t = transpose_polynomial(chain2, e);
  EXPECT_EQ(t.polynomial, P("x1^2 + x1*x2^3", 2));
  EXPECT_TRUE(t.all_positive);

  const Polynomial q = P(kQuintic, 5);
  EXPECT_EQ(transpose_polynomial(q, exponent_matrix(q, build_graph(q))).polynomial, q);

  const Polynomial star = P(kStar, 4);
  const auto ts = transpose_polynomial(star, exponent_matrix(star, build_graph(star)));
  EXPECT_EQ(ts.weights[0], Rational(0));
  EXPECT_FALSE(ts.all_positive);
  for (int k = 1; k < 4; ++k) EXPECT_GT(ts.weights[k], 0);
}

TEST(QuasihomProperty, WeightsIndependentOfTieBreak) {
  const Polynomial f = P(kMain, 4);
  const auto reference = analyze(f).weights.q;
  const auto alt = build_graph(f, {0, 0, 1, 0});
  EXPECT_EQ(alt.kappa[2], 0);
  EXPECT_EQ(solve_weights(f, exponent_matrix(f, alt)).q, reference);
}

// Random invertible polynomials built from Fermat, chain and loop atoms.
struct Built {
  std::string text;
  int n;
};

Built random_invertible(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2), len(2, 3), expo(2, 5);
  std::string text;
  int n = 0;
  const int atoms = std::uniform_int_distribution<int>(1, 3)(rng);
  auto var = [](int i) { return "x" + std::to_string(i + 1); };
  for (int a = 0; a < atoms; ++a) {
    const int k = kind(rng);
    if (!text.empty()) text += " + ";
    if (k == 0) {
      text += var(n) + "^" + std::to_string(expo(rng) + 1);
      n += 1;
    } else if (k == 1) {
      const int l = len(rng);
      text += var(n) + "^" + std::to_string(expo(rng));
      for (int i = 1; i < l; ++i) text += " + " + var(n + i - 1) + "*" + var(n + i) + "^" + std::to_string(expo(rng));
      n += l;
    } else {
      const int l = len(rng);
      for (int i = 0; i < l; ++i) {
        if (i) text += " + ";
        text += var(n + i) + "^" + std::to_string(expo(rng)) + "*" + var(n + (i + 1) % l);
      }
      n += l;
    }
  }
  return {text, n};
}

TEST(QuasihomProperty, TransposeWeightSumsAgree) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Built b = random_invertible(rng);
    const Polynomial f = P(b.text, b.n);
    QuasihomAnalysis a;
    try {
      a = analyze(f);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kWeightOutOfRange) << b.text;
      continue;
    }
    ++checked;
    EXPECT_GE(a.exponents.det, 1);
    const auto t = transpose_polynomial(f, a.exponents);
    Rational s = 0;
    for (const auto& q : t.weights) s += q;
    EXPECT_EQ(s, a.weights.sum()) << b.text;
    const auto c = classify_invertible(f, a.graph, a.decomposition);
    EXPECT_TRUE(c.invertible) << b.text;
  }
  EXPECT_GT(checked, 50);
}

TEST(QuasihomProperty, DirectSumGraphIsDisjointUnion) {
  const auto g1 = build_graph(P("x1^2*x2 + x2^3*x1", 2));
  const auto g2 = build_graph(P("x1^3 + x1*x2^4", 2));
  const auto g = build_graph(P("x1^2*x2 + x2^3*x1 + x3^3 + x3*x4^4", 4));
  ASSERT_EQ(g.components.size(), g1.components.size() + g2.components.size());
  for (int j = 0; j < 2; ++j) {
    EXPECT_EQ(g.kappa[j], g1.kappa[j]);
    EXPECT_EQ(g.kappa[j + 2], g2.kappa[j] + 2);
  }
}

}  // namespace
}  // namespace lgo
