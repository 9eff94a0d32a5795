#ifndef QF2_SERIALIZE_HPP
#define QF2_SERIALIZE_HPP

#include <json.hpp>

#include "qf2/corpus.hpp"

namespace qf2 {

using Json = nlohmann::json;

Json to_json(const Verdict& v);
Json to_json(const Witness& w);
/// {"verdict", "branch", "witness", "transcript", "timings"}; timings omitted when negative.
Json to_json(const ClassificationResult& r, double seconds = -1);

/// One line of an instance file.
Json to_json(const CorpusInstance& inst);
/// Parses a record written by to_json(CorpusInstance); ParseError on bad input.
CorpusInstance instance_from_json(const Json& j);

}  // namespace qf2

#endif  // QF2_SERIALIZE_HPP
