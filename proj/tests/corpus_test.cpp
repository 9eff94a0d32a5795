#include <gtest/gtest.h>

#include "qf2/serialize.hpp"

using namespace qf2;

TEST(Corpus, DeterministicAndScreened) {
  const auto t = parse_tower("F2(t,u,v,w)");
  for (const auto& p : corpus_profiles()) {
    const auto a = gen_corpus(t, 3, p, 3);
    const auto b = gen_corpus(t, 3, p, 3);
    ASSERT_EQ(a.size(), 3u) << p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
      EXPECT_TRUE(rescreen(a[i])) << p;
    }
  }
}

TEST(Corpus, ProfileShapes) {
  const auto t = parse_tower("F2(t,u,v,w)");
  for (const auto& inst : gen_corpus(t, 5, "1.1(6)", 4)) EXPECT_GE(normalize(inst.psi).r, 3);
  for (const auto& inst : gen_corpus(t, 5, "Lemma", 4)) {
    const Normalized n = normalize(inst.psi);
    EXPECT_EQ(n.r, 0);
    EXPECT_EQ(n.s, 2);
  }
  EXPECT_THROW(gen_corpus(t, 1, "2.7(1)", 1), Error);
  EXPECT_THROW(gen_corpus(parse_tower("F2(t,u)"), 1, "Lemma", 1), Error);
}

TEST(Corpus, RoundTripAndTamper) {
  const auto t = parse_tower("F2(t,u,v,w)");
  for (const auto& inst : gen_corpus(t, 9, "1.2(1)", 4)) {
    const CorpusInstance back = instance_from_json(Json::parse(to_json(inst).dump()));
    EXPECT_EQ(to_json(back).dump(), to_json(inst).dump());
    EXPECT_TRUE(rescreen(back));
    CorpusInstance bad = back;
    bad.psi = bad.psi + QuadForm::diagonal(t, {Elem::one(t)});
    EXPECT_FALSE(rescreen(bad));
  }
  EXPECT_THROW(instance_from_json(Json{{"profile", "Lemma"}}), Error);
}

TEST(Serialize, ResultSchema) {
  const auto t = parse_tower("F2(w,x,y,z)");
  const QuadForm phi = parse_form(t, "w*[1,x]+<1,y,z>");
  const ClassificationResult r = classify(phi, parse_form(t, "<1,y>"));
  const Json j = to_json(r, 0.5);
  EXPECT_EQ(j["verdict"], "Yes");
  EXPECT_EQ(j["branch"], "Lemma");
  EXPECT_TRUE(j["witness"].is_object());
  EXPECT_TRUE(j["transcript"].is_array());
  EXPECT_DOUBLE_EQ(j["timings"]["classify_s"].get<double>(), 0.5);
  EXPECT_FALSE(to_json(r).contains("timings"));
}
