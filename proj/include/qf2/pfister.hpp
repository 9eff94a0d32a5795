#ifndef QF2_PFISTER_HPP
#define QF2_PFISTER_HPP

#include <vector>

#include "qf2/algebra.hpp"

namespace qf2 {

/// <<a_1..a_n>>_b (x) [a,b].
struct PfisterSpec {
  std::vector<Elem> bilinear_slots;
  Block quadratic_block;
};

/// Orthogonal sum of p [a,b] over the square-free products p of the slots,
/// in binary subset order. Throws ZeroSlot.
QuadForm pfister_expand(const PfisterSpec& spec);
/// <p : p square-free product of the slots>. Throws ZeroSlot.
QuadForm quasi_pfister(const std::vector<Elem>& slots);

/// Neighbor test for anisotropic type (1,3) forms a[1,x] + <1,b,c> (after
/// scaling): Yes iff [x,a) splits over F(sqrt b, sqrt c).
/// Throws IsotropicInput, NormalizationFailed.
Verdict pfister_neighbor_13(const QuadForm& phi, const IsotropyOptions& opt = {});
/// The splitting test alone, without checking anisotropy.
Verdict neighbor_criterion_13(const QuadForm& phi, const IsotropyOptions& opt = {});

struct QuasiPfisterNeighbor {
  bool neighbor = false;
  int norm_degree = 0;
  QuadForm ambient;  // quasi-Pfister form on the norm field generators
};
/// sigma totally singular and anisotropic; neighbor iff 2 dim > norm degree.
QuasiPfisterNeighbor quasi_pfister_neighbor(const QuadForm& sigma);

}  // namespace qf2

#endif  // QF2_PFISTER_HPP
