#include <gtest/gtest.h>

#include "qf2/isotropy.hpp"
#include "test_support.hpp"

using namespace qf2;

namespace {

QuadForm F(const TowerPtr& t, const char* s) { return parse_form(t, s); }

QuadForm random_monomial_form(const TowerPtr& t, std::mt19937_64& rng, int max_dim) {
  std::uniform_int_distribution<int> dd(1, max_dim);
  const int dim = dd(rng);
  std::uniform_int_distribution<int> rd(0, dim / 2);
  const int r = rd(rng);
  std::vector<Block> bl;
  for (int i = 0; i < r; ++i) bl.push_back({tsup::random_monomial(t, rng, 3), tsup::random_monomial(t, rng, 3)});
  std::vector<Elem> dg;
  for (int j = 0; j < dim - 2 * r; ++j) dg.push_back(tsup::random_monomial(t, rng, 3));
  return QuadForm(t, bl, dg);
}

}  // namespace

TEST(QuadForm, EvalAndPolar) {
  auto t = parse_tower("F2(t)");
  auto f = F(t, "[1,t] + <t>");
  Vec v{parse_elem(t, "1"), parse_elem(t, "1"), parse_elem(t, "t")};
  EXPECT_EQ(f.eval(v), parse_elem(t, "1+1+t+t^3"));
  Vec e1{Elem::one(t), Elem::zero(t), Elem::zero(t)};
  Vec e2{Elem::zero(t), Elem::one(t), Elem::zero(t)};
  EXPECT_TRUE(f.polar(e1, e2).is_one());
  EXPECT_EQ(f.dim(), 3);
}

TEST(QuadForm, ParsePrintRoundtrip) {
  auto t = parse_tower("F2(t,u)");
  for (const char* s : {"[1,t] + <t,t>", "<1,t,u,t*u>", "[0,0]", "t*[1,u] + <1>"}) {
    auto f = F(t, s);
    auto g = F(t, f.to_string().c_str());
    EXPECT_EQ(f.to_string(), g.to_string()) << s;
  }
  auto sc = F(t, "t*[1,u]");
  EXPECT_EQ(sc.blocks()[0].a, parse_elem(t, "t"));
  EXPECT_EQ(sc.blocks()[0].b, parse_elem(t, "u/t"));
  EXPECT_THROW(F(t, "[1,t"), Error);
  EXPECT_THROW(F(t, "<1,w>"), Error);
}

TEST(QuadForm, ScaledZeroCorrespondence) {
  auto t = parse_tower("F2(t,u)");
  auto f = F(t, "[1,1+t+t^2]");
  auto c = parse_elem(t, "u");
  auto g = f.scaled(c);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    Vec v{tsup::random_poly(t, rng, 2, 3), tsup::random_poly(t, rng, 2, 3)};
    Vec w{v[0], v[1] / c};
    EXPECT_EQ(g.eval(v), c * f.eval(w));
  }
}

TEST(Normalize, Examples) {
  auto t = parse_tower("F2(t)");
  auto n = normalize(F(t, "[1,t] + <t,t>"));
  EXPECT_EQ(n.r, 1);
  EXPECT_EQ(n.s, 1);
  EXPECT_EQ(n.defect, 1);
  n = normalize(F(t, "<1,1,t>"));
  EXPECT_EQ(n.r, 0);
  EXPECT_EQ(n.s, 2);
  EXPECT_EQ(n.defect, 1);
  n = normalize(F(t, "[0,0]"));
  EXPECT_EQ(n.r, 1);
  EXPECT_EQ(n.s, 0);
  EXPECT_EQ(n.defect, 0);
}

TEST(Normalize, BasisIsAnIsometry) {
  auto t = parse_tower("F2(t,u)");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto f = random_monomial_form(t, rng, 6);
    auto n = normalize(f);
    EXPECT_EQ(n.form.dim(), f.dim());
    EXPECT_EQ(2 * n.r + n.s + n.defect, f.dim());
    Vec c;
    for (int j = 0; j < f.dim(); ++j) c.push_back(tsup::random_poly(t, rng, 2, 2));
    EXPECT_EQ(n.form.eval(c), f.eval(apply_basis(n.basis, c, f.dim())));
  }
}

TEST(Schwarz, PolarValuationInequality) {
  auto t = parse_tower("F2(t,u)");
  // Anisotropic over the t-adic completion: residues [1,1]+<u> and <1,u>.
  auto f = F(t, "[1,1] + [u,1/t] + <t*u>");
  ASSERT_TRUE(isotropy(f, {.search = false}).no());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Vec x, y;
    for (int j = 0; j < f.dim(); ++j) {
      x.push_back(tsup::random_rational(t, rng, 2, 2));
      y.push_back(tsup::random_rational(t, rng, 2, 2));
    }
    const Elem b = f.polar(x, y), qx = f.eval(x), qy = f.eval(y);
    if (b.is_zero() || qx.is_zero() || qy.is_zero()) continue;
    EXPECT_GE(*valuation(b * b, 0), *valuation(qx, 0) + *valuation(qy, 0));
  }
}

TEST(Isotropy, Examples) {
  auto t2 = parse_tower("F2(t,u)");
  auto v = isotropy(F(t2, "<1,t,u,t*u>"));
  EXPECT_TRUE(v.no());
  EXPECT_FALSE(certificate_search(F(t2, "<1,t,u,t*u>"), 4));

  v = isotropy(F(t2, "<1,t,u,t+u>"));
  ASSERT_TRUE(v.yes());
  ASSERT_TRUE(v.vector);
  EXPECT_TRUE(F(t2, "<1,t,u,t+u>").eval(*v.vector).is_zero());

  auto f2 = parse_tower("F2");
  EXPECT_TRUE(isotropy(F(f2, "[1,1]")).no());
  EXPECT_TRUE(isotropy(F(f2, "[1,0]")).yes());
  auto f4 = parse_tower("F2^2");
  EXPECT_TRUE(isotropy(F(f4, "[1,1]")).yes());
}

TEST(Isotropy, ResidueExamples) {
  auto t = parse_tower("F2(t)");
  // [1, t^-2] reduces to [1, t^-1], anisotropic.
  EXPECT_TRUE(isotropy(F(t, "[1,1/t^2]"), {.search = false}).no());
  EXPECT_TRUE(isotropy(F(t, "[1,t]"), {.search = false}).no());
  EXPECT_TRUE(isotropy(F(t, "[1,1] + <t>"), {.search = false}).no());
  auto y = isotropy(F(t, "[1,t^2+t]"), {.search = false});
  ASSERT_TRUE(y.yes());
  EXPECT_TRUE(F(t, "[1,t^2+t]").eval(*y.vector).is_zero());
  auto tu = parse_tower("F2(t,u)");
  // First residue <u,1,u> is isotropic and lifts.
  auto lifted = isotropy(F(tu, "[u,1/t] + <1,u>"), {.search = false});
  ASSERT_TRUE(lifted.yes());
  EXPECT_TRUE(F(tu, "[u,1/t] + <1,u>").eval(*lifted.vector).is_zero());
  EXPECT_TRUE(isotropy(F(tu, "[u,1/t] + <1,t*u>"), {.search = false}).no());
}

TEST(Isotropy, EngineAgreesWithSearch) {
  auto t = parse_tower("F2(t,u)");
  std::mt19937_64 rng(17);
  int decided = 0;
  for (int i = 0; i < 25; ++i) {
    auto f = random_monomial_form(t, rng, 5);
    auto engine = isotropy(f, {.search = false});
    auto found = certificate_search(f, 4);
    if (found) EXPECT_TRUE(f.eval(*found).is_zero());
    if (engine.no()) EXPECT_FALSE(found) << f.to_string();
    if (engine.yes()) {
      ++decided;
      EXPECT_TRUE(f.eval(*engine.vector).is_zero());
    }
    if (engine.no()) ++decided;
  }
  EXPECT_GT(decided, 15);
}
