#ifndef QF2_WITT_HPP
#define QF2_WITT_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qf2/isotropy.hpp"

namespace qf2 {

/// f = an_part + i_W x [0,0] + i_d x <0>, an_part anisotropic.
struct WittData {
  int i_W = 0;
  int i_d = 0;
  QuadForm an_part;
};

/// Throws UnknownIsotropy when some slice cannot be decided.
WittData witt_decompose(const QuadForm& f, const IsotropyOptions& opt = {});

/// Reassembles an_part + i_W [0,0] + i_d <0>.
QuadForm witt_reassemble(const WittData& w);

Verdict isometric_check(const QuadForm& a, const QuadForm& b, const IsotropyOptions& opt = {});

/// a isometric to c*b; a Yes carries c.
struct SimilarityVerdict {
  Verdict verdict;
  std::optional<Elem> factor;
};
SimilarityVerdict similar_check(const QuadForm& a, const QuadForm& b, const IsotropyOptions& opt = {});

/// small is dominated by big.
Verdict dominates(const QuadForm& small, const QuadForm& big, const IsotropyOptions& opt = {});
/// alpha*small dominated by big for some alpha; a Yes carries alpha.
SimilarityVerdict weakly_dominates(const QuadForm& small, const QuadForm& big, const IsotropyOptions& opt = {});

/// [c_1,d_1] + ... + [c_s,d_s] for sigma = <c_1..c_s>.
QuadForm nonsingular_completion(const QuadForm& sigma, const std::vector<Elem>& d);

/// d in D(f); for d = 0, a nontrivial zero. A Yes carries a vector with f(v) = d.
Verdict represents(const QuadForm& f, const Elem& d, const IsotropyOptions& opt = {});

/// F(psi) as a tower together with the embedding of F and a generic point.
struct FunctionField {
  TowerPtr tower;
  Vec point;                                 // generic zero of psi over `tower`
  std::function<Elem(const Elem&)> embed;    // F -> F(psi)
  bool rational = false;                     // tower is purely transcendental over F_2^k
  QuadForm transport(const QuadForm& f) const;
};

/// Throws ReduciblePolynomial when psi's nondefective part is of type
/// (0,1) or a hyperbolic plane (or psi is zero).
FunctionField function_field(const QuadForm& psi);

}  // namespace qf2

#endif  // QF2_WITT_HPP
