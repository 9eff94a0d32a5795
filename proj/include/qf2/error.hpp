#ifndef QF2_ERROR_HPP
#define QF2_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qf2 {

enum class ErrorKind {
  IllegalLayer,
  DuplicateVariable,
  DivisionByZero,
  TowerMismatch,
  NotASquare,
  UnsupportedTower,
  ResidueOfNonUnit,
  ParseError,
  LengthMismatch,
  IsotropicInput,
  SingularInput,
  ReduciblePolynomial,
  UnknownIsotropy,
  NormalFormUnavailable,
  DimensionTooLarge,
  ZeroSlot,
  NormalizationFailed,
  PreconditionFailed,
  MalformedWitness,
  ProfileUnsatisfiable,
  CapacityExceeded,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qf2

#endif  // QF2_ERROR_HPP
