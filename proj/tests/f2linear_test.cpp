#include <gtest/gtest.h>

#include "qf2/f2linear.hpp"
#include "test_support.hpp"

using namespace qf2;

namespace {

std::vector<Elem> P(const TowerPtr& t, std::initializer_list<const char*> xs) {
  std::vector<Elem> out;
  for (auto x : xs) out.push_back(parse_elem(t, x));
  return out;
}

// Oracle: exhaustive sum d_i^2 s_i over d_i of degree <= 1 in each variable.
bool brute_force_dependent(const TowerPtr& t, const std::vector<Elem>& s) {
  std::vector<Elem> ds;
  const int n = t->var_count();
  for (std::uint32_t mask = 0; mask < (1u << (1u << n)); ++mask) {
    Elem d = Elem::zero(t);
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      if (!((mask >> m) & 1)) continue;
      Elem mon = Elem::one(t);
      for (int v = 0; v < n; ++v)
        if ((m >> v) & 1) mon *= Elem::variable(t, v);
      d += mon;
    }
    ds.push_back(d);
  }
  std::vector<std::size_t> idx(s.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == ds.size()) idx[i++] = 0;
    if (i == idx.size()) return false;
    Elem sum = Elem::zero(t);
    for (std::size_t j = 0; j < s.size(); ++j) sum += ds[idx[j]].square() * s[j];
    if (sum.is_zero()) return true;
  }
}

// Oracle for norm degree: rank of the full product closure of c_i/c_1.
int closure_rank(const std::vector<Elem>& c) {
  std::vector<Elem> prods;
  const std::size_t g = c.size() - 1;
  for (std::uint32_t m = 0; m < (1u << g); ++m) {
    Elem p = Elem::one(c.front().tower());
    for (std::size_t i = 0; i < g; ++i)
      if ((m >> i) & 1) p *= c[i + 1] / c[0];
    prods.push_back(p);
  }
  return f2_rank(prods);
}

}  // namespace

TEST(Decompose, Examples) {
  auto t1 = parse_tower("F2(t)");
  auto c = decompose(parse_elem(t1, "t"));
  ASSERT_EQ(c.coords.size(), 1u);
  EXPECT_TRUE(c.coords.at(1).is_one());

  auto t2 = parse_tower("F2(t,u)");
  c = decompose(parse_elem(t2, "t^3+u"));
  ASSERT_EQ(c.coords.size(), 2u);
  EXPECT_EQ(c.coords.at(1), parse_elem(t2, "t"));
  EXPECT_TRUE(c.coords.at(2).is_one());

  c = decompose(parse_elem(t2, "1/(t+u)"));
  ASSERT_EQ(c.coords.size(), 2u);
  EXPECT_EQ(c.coords.at(1), parse_elem(t2, "1/(t+u)"));
  EXPECT_EQ(c.coords.at(2), parse_elem(t2, "1/(t+u)"));
  EXPECT_EQ(reconstruct(c), parse_elem(t2, "1/(t+u)"));

  auto tq = parse_tower("F2(t)[insep:t]");
  EXPECT_THROW(decompose(parse_elem(tq, "t")), Error);
}

TEST(Decompose, ReconstructionAndSquares) {
  auto t = parse_tower("F2^2(t,u,v)");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    Elem a = tsup::random_rational(t, rng, 3, 3);
    auto c = decompose(a);
    EXPECT_EQ(reconstruct(c), a);
    auto sq = decompose(a * a);
    for (const auto& [eps, v] : sq.coords) EXPECT_EQ(eps, 0u);
  }
}

TEST(F2Rank, Examples) {
  auto t = parse_tower("F2(t,u)");
  auto s = P(t, {"1", "t", "u", "t*u"});
  EXPECT_EQ(f2_rank(s), 4);
  EXPECT_FALSE(brute_force_dependent(t, s));
  EXPECT_TRUE(f2_member(parse_elem(t, "t+u"), P(t, {"t", "u"})));
  auto t1 = parse_tower("F2(t)");
  auto s2 = P(t1, {"1", "t", "t^2"});
  EXPECT_EQ(f2_rank(s2), 2);
  EXPECT_TRUE(brute_force_dependent(t1, s2));
}

TEST(F2Rank, SolveCertificates) {
  auto t = parse_tower("F2(t,u)");
  auto s = P(t, {"t", "u", "1+t*u"});
  Elem x = parse_elem(t, "t^3/(u^2+1) + u*t^2 + 1 + t*u");
  auto d = f2_solve(x, s);
  ASSERT_TRUE(d);
  Elem sum = Elem::zero(t);
  for (std::size_t i = 0; i < s.size(); ++i) sum += (*d)[i].square() * s[i];
  EXPECT_EQ(sum, x);
  EXPECT_FALSE(f2_member(parse_elem(t, "t*u"), P(t, {"t", "u", "1"})));
  auto dep = f2_dependency(P(t, {"t", "t*u^2", "u"}));
  ASSERT_TRUE(dep);
}

TEST(NormDegree, Examples) {
  auto t1 = parse_tower("F2(t)");
  EXPECT_EQ(norm_degree(P(t1, {"1", "t"})), 2);
  auto t2 = parse_tower("F2(t,u)");
  auto s2 = P(t2, {"1", "t", "u", "t*u"});
  EXPECT_EQ(closure_rank(s2), 4);
  EXPECT_EQ(norm_degree(s2), 4);
  auto t3 = parse_tower("F2(t,u,v)");
  auto s3 = P(t3, {"1", "t", "u", "v"});
  EXPECT_EQ(closure_rank(s3), 8);
  EXPECT_EQ(norm_degree(s3), 8);
  EXPECT_THROW(norm_degree(P(t1, {"1", "t^2"})), Error);
}

TEST(NormDegree, InvariantUnderScalingAndIsometry) {
  auto t = parse_tower("F2(t,u,v)");
  auto s = P(t, {"t", "u+v", "t*u*v", "1+v"});
  const int nd = norm_degree(s);
  EXPECT_EQ(nd, closure_rank(s));
  EXPECT_TRUE(nd == 4 || nd == 8 || nd == 16);
  for (const char* c : {"t", "t+u+v", "t*u*v*(1+v)"}) {
    Elem lam = parse_elem(t, c);
    std::vector<Elem> sc;
    for (auto& x : s) sc.push_back(lam * x);
    EXPECT_EQ(norm_degree(sc), nd);
  }
  auto iso = P(t, {"t+u+v", "u+v", "t*u*v", "1+v+t*u^2"});
  ASSERT_TRUE(ts_isometric(s, iso));
  EXPECT_EQ(norm_degree(iso), nd);
}

TEST(TsIsometric, Examples) {
  auto t1 = parse_tower("F2(t)");
  EXPECT_TRUE(ts_isometric(P(t1, {"1", "t"}), P(t1, {"1+t", "t"})));
  auto t2 = parse_tower("F2(t,u)");
  EXPECT_FALSE(ts_isometric(P(t2, {"1", "t"}), P(t2, {"1", "u"})));
  EXPECT_TRUE(ts_isometric(P(t2, {"t", "u"}), P(t2, {"u", "t"})));
}

TEST(TsSimilarity, Factors) {
  auto t = parse_tower("F2(t,u,v)");
  auto a = P(t, {"1", "t", "u"});
  auto lam = ts_similarity_factor(a, P(t, {"v", "t*v", "u*v"}));
  ASSERT_TRUE(lam);
  std::vector<Elem> sc;
  for (auto& x : a) sc.push_back(*lam * x);
  EXPECT_TRUE(ts_isometric(sc, P(t, {"v", "t*v", "u*v"})));
  // t*<1,t,u> = <t,t^2,tu>, isometric to <t,1,tu>.
  EXPECT_TRUE(ts_similarity_factor(P(t, {"1", "t", "u"}), P(t, {"t", "1", "t*u"})));
  EXPECT_FALSE(ts_similarity_factor(P(t, {"1", "t", "u"}), P(t, {"1", "t", "v"})));
}
