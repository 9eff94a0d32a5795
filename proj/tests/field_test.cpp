#include <gtest/gtest.h>

#include "qf2/field.hpp"
#include "test_support.hpp"

using namespace qf2;

namespace {

Elem E(const TowerPtr& t, const std::string& s) { return parse_elem(t, s); }

// Bounded brute force for w^2 + w = z with w a polynomial over F_2 in one
// variable of degree <= max_deg. Independent of the linear solver.
bool brute_force_wp_univariate(const TowerPtr& t, const Elem& z, int max_deg) {
  for (std::uint32_t bits = 0; bits < (1u << (max_deg + 1)); ++bits) {
    std::vector<Poly::Term> ts;
    for (int d = 0; d <= max_deg; ++d)
      if ((bits >> d) & 1) {
        Monomial m;
        m.e[0] = static_cast<std::uint16_t>(d);
        ts.push_back({m, 1});
      }
    Elem w = Elem::from_rational(t, Rational(Poly::from_terms(1, ts)));
    if (w * w + w == z) return true;
  }
  return false;
}

}  // namespace

TEST(GF2k, FieldAxiomsSmall) {
  for (int k : {1, 2, 3, 4, 8}) {
    const auto& f = GF2k::get(k);
    for (GF2k::Elem a = 1; a < f.size(); ++a) {
      EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      EXPECT_EQ(f.square(f.sqrt(a)), a);
      if (auto w = f.solve_artin_schreier(a)) {
        EXPECT_EQ(f.square(*w) ^ *w, a);
        EXPECT_EQ(f.trace(a), 0);
      } else {
        EXPECT_EQ(f.trace(a), 1);
      }
    }
  }
}

TEST(Tower, MakeExamples) {
  auto t = parse_tower("F2(t)");
  EXPECT_EQ(t->var_count(), 1);
  auto ti = parse_tower("F2(t)[insep:t]");
  EXPECT_EQ(ti->quad_count(), 1);
  // wp(F_2) = {0}, so delta = 1 is admissible.
  auto ts = parse_tower("F2[sep:1]");
  EXPECT_EQ(ts->quad_count(), 1);
  EXPECT_THROW(parse_tower("F2(t)[insep:t^2]"), Error);
  EXPECT_THROW(parse_tower("F2(t)[sep:t^2+t]"), Error);
  try {
    parse_tower("F2(t,t)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateVariable);
  }
}

TEST(Tower, RoundTripSpec) {
  for (std::string s : {"F2(t,u,v)", "F2^3(x)", "F2(t)[insep:t]", "F2(t,u)[sep:t]", "F2(t,u)[insep:t][insep:u]"}) {
    auto t = parse_tower(s);
    auto t2 = parse_tower(t->to_string());
    EXPECT_TRUE(t->same_as(*t2)) << s << " vs " << t->to_string();
  }
}

TEST(Arith, Examples) {
  auto t = parse_tower("F2(t)");
  EXPECT_TRUE((E(t, "t+1") + E(t, "t+1")).is_zero());
  EXPECT_TRUE((E(t, "t") / E(t, "t")).is_one());
  auto s = parse_tower("F2(d)[sep:d]");
  Elem th = Elem::generator(s, 0);
  EXPECT_EQ(th * th, th + E(s, "d"));
  EXPECT_THROW(E(t, "t") / Elem::zero(t), Error);
  auto other = parse_tower("F2(u)");
  EXPECT_THROW(E(t, "t") + E(other, "u"), Error);
}

TEST(Arith, QuadraticInverse) {
  auto s = parse_tower("F2(t,u)[sep:t][insep:u]");
  Elem a = E(s, "t + $1*u + $2 + $1*$2*(t+1)");
  EXPECT_TRUE((a * a.inverse()).is_one());
  Elem r = Elem::generator(s, 1);
  EXPECT_EQ(r * r, E(s, "u"));
}

TEST(Arith, RandomIdentities) {
  auto t = parse_tower("F2(t,u,v)");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    Elem a = tsup::random_rational(t, rng, 2, 3);
    Elem b = tsup::random_rational(t, rng, 2, 3);
    Elem c = tsup::random_poly(t, rng, 2, 3);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(Frobenius, SqrtExamples) {
  auto t = parse_tower("F2(t,u)");
  EXPECT_EQ(sqrt(E(t, "t^2+u^2")), E(t, "t+u"));
  EXPECT_FALSE(is_square(E(t, "t")));
  EXPECT_THROW(sqrt(E(t, "t")), Error);
  auto f = parse_tower("F2^4");
  const auto& gf = GF2k::get(4);
  for (GF2k::Elem c = 1; c < 16; ++c)
    EXPECT_EQ(sqrt(Elem::constant(f, c)), Elem::constant(f, gf.pow(c, 8)));
}

TEST(WpMembership, Examples) {
  auto t = parse_tower("F2(t)");
  EXPECT_FALSE(wp_membership(E(t, "t")).member);
  // t^2 = t + (t^2 + t), so t^2 is a member iff t is.
  EXPECT_FALSE(wp_membership(E(t, "t^2")).member);
  EXPECT_FALSE(brute_force_wp_univariate(t, E(t, "t^2"), 6));
  EXPECT_TRUE(wp_membership(E(t, "t^2+t")).member);
  EXPECT_TRUE(wp_membership(E(t, "1/t^2+1/t")).member);
  EXPECT_FALSE(wp_membership(E(t, "1/t")).member);
  EXPECT_TRUE(brute_force_wp_univariate(t, E(t, "t^4+t"), 6));
  EXPECT_TRUE(wp_membership(E(t, "t^4+t")).member);
  auto ts = parse_tower("F2(t)[sep:t]");
  EXPECT_THROW(wp_membership(E(ts, "t")), Error);
}

TEST(WpMembership, RoundTrips) {
  auto t = parse_tower("F2^2(t,u)");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    Elem w = tsup::random_rational(t, rng, 2, 3);
    auto r = wp_membership(w * w + w);
    ASSERT_TRUE(r.member);
    EXPECT_EQ(*r.w * *r.w + *r.w, w * w + w);
  }
}

TEST(Valuation, Examples) {
  auto t = parse_tower("F2(u,v,t)");
  int tv = *t->var_index("t");
  EXPECT_EQ(valuation(E(t, "t^2*(1+t)"), tv), 2);
  EXPECT_THROW(residue(E(t, "t^2*(1+t)"), tv), Error);
  EXPECT_EQ(valuation(E(t, "(1+t)/t"), tv), -1);
  EXPECT_EQ(valuation(E(t, "u+t*v"), tv), 0);
  Elem r = residue(E(t, "u+t*v"), tv);
  EXPECT_EQ(r.tower()->var_count(), 2);
  EXPECT_EQ(r, parse_elem(r.tower(), "u"));
  EXPECT_FALSE(valuation(Elem::zero(t), tv).has_value());
}

TEST(Valuation, Properties) {
  auto t = parse_tower("F2(u,t)");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Elem a = tsup::random_rational(t, rng, 3, 3), b = tsup::random_rational(t, rng, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    int va = *valuation(a, 1), vb = *valuation(b, 1);
    EXPECT_EQ(*valuation(a * b, 1), va + vb);
    auto vs = valuation(a + b, 1);
    if (vs) {
      EXPECT_GE(*vs, std::min(va, vb));
      if (va != vb) EXPECT_EQ(*vs, std::min(va, vb));
    }
  }
}

TEST(Parse, Errors) {
  auto t = parse_tower("F2(t)");
  try {
    parse_elem(t, "t + q");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  EXPECT_THROW(parse_elem(t, "(t+1"), Error);
  EXPECT_THROW(parse_tower("Q(t)"), Error);
}

TEST(Parse, ElementRoundTrip) {
  auto t = parse_tower("F2^3(t,u)[sep:t][insep:u]");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Elem a = Elem::zero(t);
    for (int c = 0; c < 4; ++c)
      a += tsup::random_rational(t, rng, 2, 2) * (c & 1 ? Elem::generator(t, 0) : Elem::one(t)) *
           (c & 2 ? Elem::generator(t, 1) : Elem::one(t));
    EXPECT_EQ(parse_elem(t, a.to_string()), a) << a.to_string();
  }
}

TEST(Poly, GcdProperties) {
  auto t = parse_tower("F2^2(t,u,v)");
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    Poly a = tsup::random_poly(t, rng, 2, 3).rational().num();
    Poly b = tsup::random_poly(t, rng, 2, 3).rational().num();
    Poly c = tsup::random_nonzero_poly(t, rng, 2, 2).rational().num();
    if (a.is_zero() || b.is_zero()) continue;
    Poly g = gcd(a * c, b * c);
    EXPECT_NO_THROW(divide_exact(g, c.monic()));
    EXPECT_NO_THROW(divide_exact(a * c, g));
    EXPECT_NO_THROW(divide_exact(b * c, g));
    // Cofactors are coprime.
    Poly ca = divide_exact(a * c, g), cb = divide_exact(b * c, g);
    EXPECT_TRUE(gcd(ca, cb).is_one());
  }
}
