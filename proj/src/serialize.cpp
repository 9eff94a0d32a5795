#include "qf2/serialize.hpp"

namespace qf2 {

namespace {

Json form_or_null(const QuadForm& f) { return f.tower() ? Json(f.to_string()) : Json(nullptr); }

}  // namespace

Json to_json(const Verdict& v) {
  Json j{{"answer", to_string(v.answer)}, {"trace", v.trace}};
  if (v.vector) {
    Json vec = Json::array();
    for (const auto& x : *v.vector) vec.push_back(x.to_string());
    j["vector"] = vec;
  }
  return j;
}

Json to_json(const Witness& w) {
  Json j{{"kind", to_string(w.kind)}};
  if (w.alpha) j["alpha"] = w.alpha->to_string();
  if (w.beta) j["beta"] = w.beta->to_string();
  if (!w.slots.empty()) {
    Json s = Json::array();
    for (const auto& e : w.slots) s.push_back(e.to_string());
    j["slots"] = s;
  }
  const std::pair<const char*, const QuadForm*> forms[] = {{"R1", &w.r1},   {"R2", &w.r2},
                                                           {"rho", &w.rho}, {"pi", &w.pi},
                                                           {"phi_prime", &w.phi_prime}, {"psi_prime", &w.psi_prime}};
  for (const auto& [name, f] : forms)
    if (f->tower() && f->dim() > 0) j[name] = form_or_null(*f);
  if (w.vector) {
    Json vec = Json::array();
    for (const auto& x : *w.vector) vec.push_back(x.to_string());
    j["vector"] = vec;
    if (!w.vector->empty()) j["vector_field"] = w.vector->front().tower()->to_string();
  }
  if (w.sub) j["sub"] = to_json(*w.sub);
  return j;
}

Json to_json(const ClassificationResult& r, double seconds) {
  Json j{{"verdict", to_string(r.verdict.answer)},
         {"branch", r.branch},
         {"reason", r.verdict.trace},
         {"transcript", r.transcript},
         {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)}};
  if (seconds >= 0) j["timings"] = Json{{"classify_s", seconds}};
  return j;
}

Json to_json(const CorpusInstance& inst) {
  return Json{{"profile", inst.profile},
              {"seed", inst.seed},
              {"field", inst.phi.tower()->to_string()},
              {"phi", inst.phi.to_string()},
              {"psi", inst.psi.to_string()},
              {"screening", inst.screening}};
}

CorpusInstance instance_from_json(const Json& j) {
  try {
    CorpusInstance inst;
    const TowerPtr t = parse_tower(j.at("field").get<std::string>());
    inst.profile = j.at("profile").get<std::string>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.phi = parse_form(t, j.at("phi").get<std::string>());
    inst.psi = parse_form(t, j.at("psi").get<std::string>());
    inst.screening = j.at("screening").get<std::vector<std::string>>();
    return inst;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("instance record: ") + e.what());
  }
}

}  // namespace qf2
