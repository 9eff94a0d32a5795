#ifndef QF2_ISOTROPY_HPP
#define QF2_ISOTROPY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qf2/quadform.hpp"

namespace qf2 {

enum class Answer { Yes, No, Unknown };
const char* to_string(Answer a);
Answer negate(Answer a);

/// Tri-state result. A Yes from the isotropy engine carries a verified
/// isotropic vector; a No carries the residue trace that justified it.
struct Verdict {
  Answer answer = Answer::Unknown;
  std::optional<Vec> vector;
  std::vector<std::string> trace;

  bool yes() const { return answer == Answer::Yes; }
  bool no() const { return answer == Answer::No; }
  bool unknown() const { return answer == Answer::Unknown; }

  static Verdict make_yes(std::string why, std::optional<Vec> v = std::nullopt);
  static Verdict make_no(std::string why);
  static Verdict make_unknown(std::string why);
  Verdict& note(std::string line) {
    trace.push_back(std::move(line));
    return *this;
  }
};

struct IsotropyOptions {
  int degree_bound = 4;             // certificate search, total degree per coordinate
  bool search = true;               // fall back to the certificate search
  bool residues = true;             // residue recursion over rational towers
  std::size_t max_unknowns = 2400;  // search system size cap (degree is lowered to fit)
  std::size_t max_combos = 1500;    // enumerated y-coordinate choices
};

Verdict isotropy(const QuadForm& f, const IsotropyOptions& opt = {});

/// Bounded search for an isotropic vector with polynomial coordinates of
/// total degree <= degree_bound. Returns a verified nonzero zero of f.
std::optional<Vec> certificate_search(const QuadForm& f, int degree_bound, const IsotropyOptions& opt = {});

/// Cheap exact zeros: zero entries, F^2-dependencies of pairwise orthogonal
/// values, and blocks [a,b] with ab in the Artin-Schreier image.
std::optional<Vec> structural_zero(const QuadForm& f);

}  // namespace qf2

#endif  // QF2_ISOTROPY_HPP
