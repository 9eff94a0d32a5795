#ifndef QF2_CLASSIFIER_HPP
#define QF2_CLASSIFIER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qf2/pfister.hpp"

namespace qf2 {

/// Clause names: "1.1(1)".."1.1(6)", "1.2(1)".."1.2(5)", "Lemma".
namespace branch {
inline constexpr const char* kLemma = "Lemma";
}

struct ClassificationResult;

struct Witness {
  enum class Kind {
    WeakDomination,    // alpha psi < phi
    Similarity,        // phi = alpha psi
    RhoPi,      // R1, R2, rho, pi, alpha, beta, a, b
    GP3Decomposition,  // alpha phi ~ phi' + pi
    Reduction,         // psi' and the classification over F(psi')
    Vector,            // isotropic vector of phi over the function field of psi
  };
  Kind kind = Kind::Vector;
  std::optional<Elem> alpha, beta;
  std::vector<Elem> slots;  // a, b (RhoPi); k, l (, m) search values
  QuadForm r1, r2, rho, pi, phi_prime, psi_prime;
  std::optional<Vec> vector;
  std::shared_ptr<ClassificationResult> sub;
};

const char* to_string(Witness::Kind k);

struct ClassificationResult {
  Verdict verdict;
  std::string branch;
  std::optional<Witness> witness;
  std::vector<std::string> transcript;
};

struct ClassifyOptions {
  IsotropyOptions iso;
  /// Degree bound for the oracle fallback inside classify; 0 disables it.
  int oracle_degree = 2;
  /// Number of coefficient factors in candidate scalars.
  int candidate_factors = 3;
  /// Run verify_witness on every Yes before returning it.
  bool verify = true;
};

/// Isotropy of an anisotropic non-neighbor phi of type (1,3) over F(psi).
/// Throws PreconditionFailed on invalid inputs.
ClassificationResult classify(const QuadForm& phi, const QuadForm& psi, const ClassifyOptions& opt = {});

/// Branch-level search outcome: No only for a certified necessary-condition failure.
struct SearchOutcome {
  Answer answer = Answer::Unknown;
  std::optional<Witness> witness;
  std::vector<std::string> notes;
};
SearchOutcome witness_search_rho_pi(const QuadForm& phi, const QuadForm& psi, const ClassifyOptions& opt = {});
SearchOutcome witness_search_gp3(const QuadForm& phi, const QuadForm& psi, const ClassifyOptions& opt = {});

/// Re-checks every relation of the witness; Yes only if all pass. Throws MalformedWitness.
Verdict verify_witness(const QuadForm& phi, const QuadForm& psi, const Witness& w, const ClassifyOptions& opt = {});

/// Engine run on phi over the function field of psi.
Verdict oracle_isotropy_over_function_field(const QuadForm& phi, const QuadForm& psi, int degree_bound,
                                            const IsotropyOptions& base = {});

/// Square-free products of at most `factors` of the given elements (monomials
/// reduced modulo squares), deduplicated, 1 first.
std::vector<Elem> candidate_scalars(const std::vector<Elem>& coeffs, int factors);

/// Basis of span_{F^2}(a) intersected with span_{F^2}(b).
std::vector<Elem> f2_intersection(const std::vector<Elem>& a, const std::vector<Elem>& b);

}  // namespace qf2

#endif  // QF2_CLASSIFIER_HPP
