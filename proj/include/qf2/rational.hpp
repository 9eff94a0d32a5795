#ifndef QF2_RATIONAL_HPP
#define QF2_RATIONAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "qf2/poly.hpp"

namespace qf2 {

/// Element of F_{2^k}(x_0, ..., x_{n-1}) as a reduced fraction with monic denominator.
class Rational {
 public:
  Rational() : num_(1), den_(Poly::constant(1, 1)) {}
  explicit Rational(int k) : num_(k), den_(Poly::constant(k, 1)) {}
  explicit Rational(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.field_degree(), 1)) {}
  /// Reduces and normalizes; throws on zero denominator.
  Rational(Poly num, Poly den);

  static Rational constant(int k, GF2k::Elem c) { return Rational(Poly::constant(k, c)); }

  int field_degree() const { return num_.field_degree(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  std::uint32_t support() const { return num_.support() | den_.support(); }

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational inverse() const;
  Rational operator/(const Rational& o) const { return *this * o.inverse(); }
  Rational square() const;
  /// Square root when every exponent is even.
  std::optional<Rational> sqrt() const;

  /// var-adic valuation; zero has none (caller checks is_zero).
  int valuation(int var) const { return num_.order_in(var) - den_.order_in(var); }
  /// Value at var = 0 of a var-adic unit.
  Rational residue(int var) const;
  Rational substitute(int var, const Rational& value) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  struct NoReduce {};
  Rational(Poly num, Poly den, NoReduce) : num_(std::move(num)), den_(std::move(den)) {}
  static Rational make_normalized(Poly num, Poly den);

  Poly num_;
  Poly den_;
};

/// Substitution of a rational value into a polynomial.
Rational substitute_rational(const Poly& p, int var, const Rational& value);

}  // namespace qf2

#endif  // QF2_RATIONAL_HPP
