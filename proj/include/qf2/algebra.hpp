#ifndef QF2_ALGEBRA_HPP
#define QF2_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "qf2/witt.hpp"

namespace qf2 {

/// Class of an element in F / {w^2 + w}.
struct ArfClass {
  Elem representative;
  /// Polynomial representatives are reduced to have no square monomials and a
  /// canonical constant; others are kept as given.
  Elem normalized;
  bool is_zero() const;
  /// Decided exactly over rational towers.
  bool equals(const ArfClass& o) const;
};

ArfClass arf_class(const Elem& representative);
/// Sum a_i b_i over the blocks; SingularInput if the form has a diagonal part.
ArfClass arf(const QuadForm& f);

/// Quaternion algebra [a,b): i^2 + i = a, j^2 = b, j i j^-1 = i + 1.
struct QuatSymbol {
  Elem a, b;
  std::string to_string() const { return "[" + a.to_string() + "," + b.to_string() + ")"; }
};

/// Tensor product of symbols, taken over F(sqrt(c) : c in insep_ext).
struct BrauerClass {
  std::vector<QuatSymbol> symbols;
  std::vector<Elem> insep_ext;
  bool empty() const { return symbols.empty(); }
  BrauerClass operator+(const BrauerClass& o) const;
  std::string to_string() const;
};

/// Norm form [1,a] + b[1,a].
QuadForm norm_form(const QuatSymbol& s);
/// Albert form b1[1,a1] + b2[1,a2] + [1,a1+a2] of [a1,b1) (x) [a2,b2).
QuadForm albert_form(const QuatSymbol& s1, const QuatSymbol& s2);

/// One symbol [ab, a) per block [a,b] = a[1,ab]; SingularInput on a diagonal part.
BrauerClass clifford_class(const QuadForm& f);

/// Yes when the algebra is split.
Verdict quat_split(const QuatSymbol& s, const IsotropyOptions& opt = {});
/// Yes when the biquaternion algebra is a division algebra (Albert form anisotropic).
Verdict biquat_division(const QuatSymbol& s1, const QuatSymbol& s2, const IsotropyOptions& opt = {});

/// Symbols of psi = a_1[1,b_1] + ... + a_n[1,b_n] + <1,c_1..c_m> after
/// rescaling the quasilinear part to start with 1.
BrauerClass even_clifford_descriptor(const QuadForm& psi);

/// Yes when D (x) F(psi) is not a division algebra.
Verdict index_reduction_obstruction(const BrauerClass& d, const QuadForm& psi, const IsotropyOptions& opt = {});

BrauerClass brauer_simplify(const BrauerClass& b, const IsotropyOptions& opt = {});
Verdict brauer_trivial(const BrauerClass& b, const IsotropyOptions& opt = {});

/// Membership in I^3_q for nonsingular forms of dimension <= 10.
Verdict in_I3q(const QuadForm& f, const IsotropyOptions& opt = {});
/// pi in GP_3 with f ~ pi, when the anisotropic part has dimension 0 or 8.
std::optional<QuadForm> gp3_witness(const QuadForm& f, const IsotropyOptions& opt = {});

}  // namespace qf2

#endif  // QF2_ALGEBRA_HPP
