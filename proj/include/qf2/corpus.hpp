#ifndef QF2_CORPUS_HPP
#define QF2_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qf2/classifier.hpp"

namespace qf2 {

/// One screened (phi, psi) pair.
struct CorpusInstance {
  std::string profile;
  std::uint64_t seed = 0;
  QuadForm phi, psi;
  /// Screening facts, one per line; rescreen() must reproduce them exactly.
  std::vector<std::string> screening;
};

/// "1.1(1)".."1.1(6)", "1.2(1)".."1.2(5)", "Lemma".
const std::vector<std::string>& corpus_profiles();

/// Deterministic monomial-coefficient instances for a profile over a rational
/// tower with at least four variables. Throws ProfileUnsatisfiable.
std::vector<CorpusInstance> gen_corpus(const TowerPtr& field, std::uint64_t seed, const std::string& profile,
                                       int count, const IsotropyOptions& opt = {});

/// Screening transcript of a pair; throws ProfileUnsatisfiable when a check fails.
std::vector<std::string> screen(const QuadForm& phi, const QuadForm& psi, const std::string& profile,
                                const IsotropyOptions& opt = {});

/// Recomputes the screening transcript and compares it to the stored one.
bool rescreen(const CorpusInstance& inst, const IsotropyOptions& opt = {});

}  // namespace qf2

#endif  // QF2_CORPUS_HPP
