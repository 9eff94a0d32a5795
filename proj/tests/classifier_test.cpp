#include <gtest/gtest.h>

#include "qf2/classifier.hpp"

using namespace qf2;

namespace {

TowerPtr field() { return Tower::rational(1, {"t", "u", "v", "w"}); }
QuadForm F(const TowerPtr& t, const char* s) { return parse_form(t, s); }
Elem X(const TowerPtr& t, const char* s) { return parse_elem(t, s); }

// A non-neighbor of type (1,3).
QuadForm phi0(const TowerPtr& t) { return F(t, "w*[1,t] + <1,u,v>"); }

}  // namespace

TEST(Classify, ImmediateNegatives) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  struct Case {
    const char* psi;
    const char* branch;
  } cases[] = {
      {"<u>", "1.1(1)"},
      {"<1,t,u,v,w>", "1.1(2)"},
      {"u*[1,t] + <1,u,v,w>", "1.1(3)"},
      {"u*[1,t] + v*[1,w]", "1.1(4)"},
      {"u*[1,t] + v*[1,w] + <1>", "1.1(5)"},
      {"u*[1,t] + v*[1,w] + w*[1,u]", "1.1(6)"},
  };
  for (const auto& c : cases) {
    const QuadForm psi = F(t, c.psi);
    if (!isotropy(psi).no()) continue;  // only anisotropic psi qualify
    const ClassificationResult r = classify(phi, psi);
    EXPECT_EQ(r.branch, c.branch) << c.psi;
    EXPECT_TRUE(r.verdict.no()) << c.psi;
  }
  const ClassificationResult r = classify(phi, F(t, "u*[1,t] + v*[1,t] + w*[1,t]"));
  EXPECT_EQ(r.branch, "1.1(6)");
  EXPECT_TRUE(r.verdict.no());
}

TEST(Classify, SelfIsSimilar) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  const ClassificationResult r = classify(phi, phi);
  EXPECT_EQ(r.branch, "1.2(3)");
  ASSERT_TRUE(r.verdict.yes());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->kind, Witness::Kind::Similarity);

  const ClassificationResult s = classify(phi, phi.scaled(X(t, "t*u")));
  EXPECT_TRUE(s.verdict.yes());
  EXPECT_TRUE(classify(phi, F(t, "t*[1,w] + <1,u,v>")).verdict.no());
}

TEST(Classify, LemmaBranch) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  const ClassificationResult r = classify(phi, F(t, "<1,u>"));
  EXPECT_EQ(r.branch, branch::kLemma);
  EXPECT_TRUE(r.verdict.yes());
  const ClassificationResult n = classify(phi, F(t, "<1,t>"));
  EXPECT_EQ(n.branch, branch::kLemma);
  EXPECT_TRUE(n.verdict.no());
}

TEST(Classify, QuasilinearThreeAndFour) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  const ClassificationResult a = classify(phi, F(t, "<1,u,w>"));
  EXPECT_EQ(a.branch, "1.2(4)");
  EXPECT_TRUE(a.verdict.yes());
  const SearchOutcome so = witness_search_gp3(phi, F(t, "<1,u,w>"));
  ASSERT_TRUE(so.witness.has_value());
  EXPECT_EQ(so.witness->kind, Witness::Kind::GP3Decomposition);
  EXPECT_TRUE(verify_witness(phi, F(t, "<1,u,w>"), *so.witness).yes());
  EXPECT_TRUE(classify(phi, F(t, "<1,t,u>")).verdict.no());

  const ClassificationResult b = classify(phi, F(t, "<1,u,v,w>"));
  EXPECT_EQ(b.branch, "1.2(4)");
  EXPECT_TRUE(b.verdict.yes());

  const ClassificationResult c = classify(phi, F(t, "<1,u,v,u*v>"));
  EXPECT_EQ(c.branch, "1.2(5)");
  ASSERT_TRUE(c.verdict.yes());
  EXPECT_EQ(c.witness->kind, Witness::Kind::Reduction);
}

TEST(Classify, TypeTwoZeroReduces) {
  const auto t = field();
  const ClassificationResult r = classify(phi0(t), F(t, "u*[1,t] + v*[1,t]"));
  EXPECT_EQ(r.branch, "1.2(2)");
  EXPECT_TRUE(r.verdict.no());
}

TEST(Classify, OneOneAndOneTwo) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  EXPECT_TRUE(classify(phi, F(t, "w*[1,t] + <1,v>")).verdict.yes());
  const ClassificationResult n = classify(phi, F(t, "u*[1,t] + <1>"));
  EXPECT_EQ(n.branch, "1.2(1)");
  EXPECT_TRUE(n.verdict.no());

  const SearchOutcome so = witness_search_rho_pi(phi, F(t, "w*[1,t] + <1>"));
  ASSERT_EQ(so.answer, Answer::Yes);
  ASSERT_TRUE(so.witness.has_value());
  EXPECT_EQ(so.witness->kind, Witness::Kind::RhoPi);
  EXPECT_TRUE(verify_witness(phi, F(t, "w*[1,t] + <1>"), *so.witness).yes());
}

TEST(Classify, Preconditions) {
  const auto t = field();
  EXPECT_THROW(classify(F(t, "u*v*[1,t] + <1,u,v>"), F(t, "<1,u>")), Error);  // neighbor
  EXPECT_THROW(classify(F(t, "[1,t] + <1,u,v>"), F(t, "<1,u>")), Error);      // isotropic
  EXPECT_THROW(classify(F(t, "[1,t] + <1,u>"), F(t, "<1,u>")), Error);        // wrong type
  EXPECT_THROW(classify(phi0(t), F(t, "[1,u] + <1>")), Error);                // isotropic psi
}

TEST(Witness, TamperedFails) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  ClassificationResult r = classify(phi, phi);
  ASSERT_TRUE(r.witness.has_value());
  Witness w = *r.witness;
  w.alpha = *w.alpha * X(t, "t");
  EXPECT_TRUE(verify_witness(phi, phi, w).no());

  const QuadForm psi = F(t, "w*[1,t] + <1>");
  SearchOutcome so = witness_search_rho_pi(phi, psi);
  ASSERT_TRUE(so.witness.has_value());
  Witness bad = *so.witness;
  bad.beta = *bad.beta * X(t, "u");
  EXPECT_FALSE(verify_witness(phi, psi, bad).yes());

  Witness empty;
  empty.kind = Witness::Kind::Similarity;
  EXPECT_THROW(verify_witness(phi, phi, empty), Error);
}

TEST(Witness, VectorOverFunctionField) {
  const auto t = field();
  const QuadForm phi = phi0(t);
  const QuadForm psi = F(t, "u*[1,t]");
  const ClassificationResult r = classify(phi, psi);
  ASSERT_TRUE(r.verdict.yes());
  ASSERT_EQ(r.witness->kind, Witness::Kind::Vector);
  EXPECT_TRUE(verify_witness(phi, psi, *r.witness).yes());
}

TEST(Helpers, CandidatesAndIntersection) {
  const auto t = field();
  const auto c = candidate_scalars({X(t, "t*u^2"), X(t, "u"), X(t, "t")}, 2);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0], X(t, "1"));
  EXPECT_EQ(c.size(), 4u);  // 1, t, u, t*u
  const auto i = f2_intersection({X(t, "1"), X(t, "u"), X(t, "v")}, {X(t, "1"), X(t, "u+v"), X(t, "w")});
  EXPECT_EQ(i.size(), 2u);
}
