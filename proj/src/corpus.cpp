#include "qf2/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qf2/f2linear.hpp"

namespace qf2 {

const std::vector<std::string>& corpus_profiles() {
  static const std::vector<std::string> p{"1.1(1)", "1.1(2)", "1.1(3)", "1.1(4)", "1.1(5)", "1.1(6)",
                                          "1.2(1)", "1.2(2)", "1.2(3)", "1.2(4)", "1.2(5)", "Lemma"};
  return p;
}

namespace {

[[noreturn]] void unsat(const std::string& why) { throw Error(ErrorKind::ProfileUnsatisfiable, why); }

std::string type_line(const char* who, const Normalized& n) {
  return std::string(who) + " type (" + std::to_string(n.r) + "," + std::to_string(n.s) + "), defect " +
         std::to_string(n.defect);
}

bool type_fits(const std::string& profile, const Normalized& n, const QuadForm& psi) {
  const int r = n.r, s = n.s;
  if (profile == "1.1(1)") return r == 0 && s == 1;
  if (profile == "1.1(2)") return r == 0 && s >= 5;
  if (profile == "1.1(3)") return r == 1 && s >= 4;
  if (profile == "1.1(4)") return r == 2 && s == 0 && !arf(psi).is_zero();
  if (profile == "1.1(5)") return r == 2 && s >= 1;
  if (profile == "1.1(6)") return r >= 3;
  if (profile == "1.2(1)") return r == 1 && (s == 1 || s == 2);
  if (profile == "1.2(2)") return r == 2 && s == 0 && arf(psi).is_zero();
  if (profile == "1.2(3)") return r == 1 && s == 3;
  if (profile == "1.2(4)" || profile == "1.2(5)") {
    if (r != 0) return false;
    if (s == 3) return profile == "1.2(4)";
    if (s != 4) return false;
    const std::vector<Elem> q(n.form.diag().begin(), n.form.diag().begin() + 4);
    return (norm_degree(q) == 8) == (profile == "1.2(4)");
  }
  if (profile == "Lemma") return r == 0 && s == 2;
  unsat("unknown profile " + profile);
}

// Square-free monomials in the first four variables, indexed by exponent mask.
struct Gen {
  const TowerPtr& t;
  std::mt19937_64 rng;
  Elem mono(unsigned mask) const {
    Elem e = Elem::one(t);
    for (int v = 0; v < 4; ++v)
      if (mask >> v & 1U) e *= Elem::variable(t, v);
    return e;
  }
  unsigned mask(bool allow_one = true) {
    std::uniform_int_distribution<unsigned> d(allow_one ? 0U : 1U, 15U);
    return d(rng);
  }
  Elem any(bool allow_one = true) { return mono(mask(allow_one)); }
  // n monomials with distinct square classes.
  std::vector<Elem> distinct(int n, bool with_one) {
    std::vector<unsigned> all(16);
    std::iota(all.begin(), all.end(), 0U);
    std::shuffle(all.begin() + 1, all.end(), rng);
    std::vector<Elem> out;
    if (with_one) out.push_back(Elem::one(t));
    for (std::size_t i = 1; static_cast<int>(out.size()) < n; ++i) out.push_back(mono(all[i]));
    return out;
  }
  QuadForm block(const Elem& c, const Elem& x) const { return QuadForm(t, {{Elem::one(t), x}}, {}).scaled(c); }
  QuadForm diag(std::vector<Elem> d) const { return QuadForm(t, {}, std::move(d)); }
  bool coin() { return rng() & 1U; }
};

// phi = alpha[1,x] + <1,u,v> with [x,alpha) = [x,u)^e1 [x,v)^e2 [x,w), variables permuted.
struct Engineered {
  QuadForm phi;
  Elem u, v, w;
};

Engineered engineered_phi(Gen& g) {
  std::vector<int> p{0, 1, 2, 3};
  std::shuffle(p.begin(), p.end(), g.rng);
  const Elem x = Elem::variable(g.t, p[0]), u = Elem::variable(g.t, p[1]), v = Elem::variable(g.t, p[2]),
             w = Elem::variable(g.t, p[3]);
  Elem alpha = w;
  if (g.coin()) alpha *= u;
  if (g.coin()) alpha *= v;
  const QuadForm phi = (g.block(alpha, x) + g.diag({Elem::one(g.t), u, v})).scaled(g.any());
  return {phi, u, v, w};
}

QuadForm random_phi(Gen& g) {
  const auto q = g.distinct(3, false);
  return g.block(g.any(), g.any()) + g.diag(q);
}

struct Pair {
  QuadForm phi, psi;
};

Pair propose(Gen& g, const std::string& profile) {
  const TowerPtr& t = g.t;
  const bool engineered = g.coin();
  if (profile == "1.2(4)" || profile == "1.2(5)") {
    if (engineered) {
      const Engineered e = engineered_phi(g);
      std::vector<Elem> q{Elem::one(t), e.u, e.w};
      if (profile == "1.2(5)") q.push_back(e.u * e.w);
      else if (g.coin()) q.push_back(e.v);
      return {e.phi, g.diag(q).scaled(g.any())};
    }
    const QuadForm phi = random_phi(g);
    if (profile == "1.2(5)") {
      const Elem a = g.any(false), b = g.any(false);
      return {phi, g.diag({Elem::one(t), a, b, a * b}).scaled(g.any())};
    }
    return {phi, g.diag(g.distinct(g.coin() ? 3 : 4, true)).scaled(g.any())};
  }
  const QuadForm phi = engineered ? engineered_phi(g).phi : random_phi(g);
  const Normalized np = normalize(phi);
  const Block& pb = np.form.blocks().at(0);
  const std::vector<Elem> pq(np.form.diag().begin(), np.form.diag().begin() + 3);
  if (profile == "1.1(1)") return {phi, g.diag({g.any()})};
  if (profile == "1.1(2)") return {phi, g.diag(g.distinct(g.coin() ? 5 : 6, false))};
  if (profile == "1.1(3)") return {phi, g.block(g.any(), g.any(false)) + g.diag(g.distinct(4, true))};
  if (profile == "1.1(4)") return {phi, g.block(g.any(), g.any(false)) + g.block(g.any(), g.any(false))};
  if (profile == "1.1(5)")
    return {phi, g.block(g.any(), g.any(false)) + g.block(g.any(), g.any(false)) + g.diag(g.distinct(1, false))};
  if (profile == "1.1(6)") {
    const Elem x = g.any(false);
    return {phi, g.block(g.any(), x) + g.block(g.any(), g.coin() ? x : g.any(false)) + g.block(g.any(), g.any(false))};
  }
  if (profile == "1.2(1)") {
    const int s = g.coin() ? 1 : 2;
    if (g.coin()) {
      // Pieces of phi itself, rescaled.
      std::vector<Elem> q{pq[0]};
      if (s == 2) q.push_back(pq[1 + (g.rng() % 2)]);
      return {phi, (QuadForm(t, {pb}, {}) + g.diag(q)).scaled(g.any())};
    }
    return {phi, g.block(g.any(), g.any(false)) + g.diag(g.distinct(s, false))};
  }
  if (profile == "1.2(2)") {
    if (g.coin()) return {phi, (QuadForm(t, {pb}, {}) + QuadForm(t, {pb}, {}).scaled(g.any(false))).scaled(g.any())};
    const Elem x = g.any(false);
    return {phi, g.block(g.any(), x) + g.block(g.any(), x)};
  }
  if (profile == "1.2(3)") {
    if (g.coin()) return {phi, phi.scaled(g.any())};
    return {phi, g.block(g.any(), g.any(false)) + g.diag(g.distinct(3, false))};
  }
  if (profile == "Lemma") {
    if (g.coin()) return {phi, g.diag({pq[0], pq[1 + (g.rng() % 2)]}).scaled(g.any())};
    return {phi, g.diag(g.distinct(2, false))};
  }
  unsat("unknown profile " + profile);
}

}  // namespace

std::vector<std::string> screen(const QuadForm& phi, const QuadForm& psi, const std::string& profile,
                                const IsotropyOptions& opt) {
  std::vector<std::string> out;
  const Normalized np = normalize(phi);
  out.push_back(type_line("phi", np));
  if (np.r != 1 || np.s != 3 || np.defect != 0) unsat("phi is not of type (1,3)");
  if (!isotropy(phi, opt).no()) unsat("phi not certified anisotropic");
  out.push_back("phi anisotropic");
  if (!neighbor_criterion_13(phi, opt).no()) unsat("phi not certified a non-neighbor");
  out.push_back("phi not a Pfister neighbor");
  const Normalized nq = normalize(psi);
  out.push_back(type_line("psi", nq));
  if (nq.defect != 0) unsat("psi has a defect");
  if (!type_fits(profile, nq, psi)) unsat("psi does not fit profile " + profile);
  if (nq.s == 0) out.push_back(std::string("psi arf ") + (arf(psi).is_zero() ? "zero" : "nonzero"));
  if (nq.r == 0 && nq.s == 4) {
    const std::vector<Elem> q(nq.form.diag().begin(), nq.form.diag().end());
    out.push_back("psi ndeg " + std::to_string(norm_degree(q)));
  }
  if (!isotropy(psi, opt).no()) unsat("psi not certified anisotropic");
  out.push_back("psi anisotropic");
  return out;
}

bool rescreen(const CorpusInstance& inst, const IsotropyOptions& opt) {
  try {
    return screen(inst.phi, inst.psi, inst.profile, opt) == inst.screening;
  } catch (const Error&) {
    return false;
  }
}

std::vector<CorpusInstance> gen_corpus(const TowerPtr& field, std::uint64_t seed, const std::string& profile,
                                       int count, const IsotropyOptions& opt) {
  if (!field->is_rational() || field->var_count() < 4)
    throw Error(ErrorKind::UnsupportedTower, "corpus needs a rational field with at least four variables");
  if (std::find(corpus_profiles().begin(), corpus_profiles().end(), profile) == corpus_profiles().end())
    unsat("unknown profile " + profile);
  std::vector<CorpusInstance> out;
  const int budget = 60 * count + 60;
  for (int attempt = 0; attempt < budget && static_cast<int>(out.size()) < count; ++attempt) {
    const std::uint64_t s = seed * 1000003ULL + static_cast<std::uint64_t>(attempt);
    Gen g{field, std::mt19937_64(s)};
    try {
      Pair p = propose(g, profile);
      CorpusInstance inst{profile, s, p.phi, p.psi, screen(p.phi, p.psi, profile, opt)};
      out.push_back(std::move(inst));
    } catch (const Error&) {
    }
  }
  if (static_cast<int>(out.size()) < count)
    unsat(profile + ": " + std::to_string(out.size()) + " of " + std::to_string(count) + " instances after " +
          std::to_string(budget) + " attempts");
  return out;
}

}  // namespace qf2
