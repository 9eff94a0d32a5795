#ifndef QF2_F2LINEAR_HPP
#define QF2_F2LINEAR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qf2/field.hpp"

namespace qf2 {

/// Coordinates of an element of F = k(t_1..t_n) over F^2 in the basis
/// {t^eps}: a = sum_eps frobenius(coords[eps]) * t^eps. The key is the
/// parity pattern eps as a bitmask over the tower variables.
struct F2Coords {
  TowerPtr tower;
  std::map<std::uint32_t, Elem> coords;
};

/// Throws UnsupportedTower unless the tower is purely rational.
F2Coords decompose(const Elem& a);
Elem reconstruct(const F2Coords& c);

/// Dense linear algebra over F.
namespace linalg {
using Matrix = std::vector<std::vector<Elem>>;
/// Basis of {x : M x = 0}; `cols` is needed when M has no rows.
std::vector<std::vector<Elem>> kernel(const TowerPtr& t, Matrix m, std::size_t cols);
int rank(Matrix m);
}  // namespace linalg

int f2_rank(const std::vector<Elem>& s);
bool f2_member(const Elem& x, const std::vector<Elem>& s);
/// d with x = sum d_i^2 s_i, if x lies in the F^2-span of s.
std::optional<std::vector<Elem>> f2_solve(const Elem& x, const std::vector<Elem>& s);
/// Nonzero d with sum d_i^2 s_i = 0, if s is F^2-dependent.
std::optional<std::vector<Elem>> f2_dependency(const std::vector<Elem>& s);

/// Norm degree of the totally singular form <c_1..c_s>. Throws
/// IsotropicInput if the coefficients are F^2-dependent.
int norm_degree(const std::vector<Elem>& coeffs);

/// Anisotropic totally singular forms given by their coefficients.
bool ts_isometric(const std::vector<Elem>& a, const std::vector<Elem>& b);
/// span(small) is contained in span(big).
bool ts_dominates(const std::vector<Elem>& big, const std::vector<Elem>& small);
/// Some lambda with lambda*<a> isometric to <b>, if one exists.
std::optional<Elem> ts_similarity_factor(const std::vector<Elem>& a, const std::vector<Elem>& b);

}  // namespace qf2

#endif  // QF2_F2LINEAR_HPP
