#ifndef QF2_GF2K_HPP
#define QF2_GF2K_HPP

#include <cstdint>
#include <optional>

namespace qf2 {

/// Largest supported extension degree of the finite base field F_{2^k}.
inline constexpr int kMaxGfDegree = 16;

/// Arithmetic in F_{2^k}, elements stored as bit vectors over the
/// polynomial basis 1, g, g^2, ... where g is a root of a fixed primitive
/// polynomial. Every instance with the same k shares one table set.
class GF2k {
 public:
  using Elem = std::uint32_t;

  static const GF2k& get(int k);

  int degree() const { return k_; }
  Elem size() const { return Elem{1} << k_; }
  Elem generator() const { return k_ == 1 ? 1 : 2; }
  std::uint32_t modulus() const { return modulus_; }

  static Elem add(Elem a, Elem b) { return a ^ b; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem square(Elem a) const { return mul(a, a); }
  /// Frobenius is bijective on a finite field: sqrt(a) = a^(2^(k-1)).
  Elem sqrt(Elem a) const;
  /// Absolute trace to F_2.
  int trace(Elem a) const;
  /// Some w with w^2 + w = c, or nothing when trace(c) = 1.
  std::optional<Elem> solve_artin_schreier(Elem c) const;

 private:
  explicit GF2k(int k);

  int k_;
  std::uint32_t modulus_;
  Elem order_;  // 2^k - 1
  // exp_ is doubled so mul needs no reduction of the summed logs.
  Elem* exp_;
  std::uint32_t* log_;
};

}  // namespace qf2

#endif  // QF2_GF2K_HPP
