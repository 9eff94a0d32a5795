#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "qf2/f2linear.hpp"
#include "qf2/serialize.hpp"

using namespace qf2;

namespace {

constexpr int kExitDecided = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

struct Globals {
  std::string field = "F2(t,u,v,w)";
  bool json = false;
  bool timings = false;
  int degree = -1;  // -1: environment or default
};

int degree_bound(const Globals& g) {
  if (g.degree >= 0) return g.degree;
  if (const char* env = std::getenv("QF2_DEGREE_BOUND")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string("QF2_DEGREE_BOUND=") + env + " is not an integer");
    }
  }
  return 4;
}

IsotropyOptions iso_options(const Globals& g) {
  IsotropyOptions o;
  o.degree_bound = degree_bound(g);
  return o;
}

int exit_for(Answer a) { return a == Answer::Unknown ? kExitUnknown : kExitDecided; }

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json) std::cout << j.dump() << "\n";
  else std::cout << text << "\n";
}

int report_verdict(const Globals& g, const Verdict& v, Json extra = Json::object()) {
  Json j = to_json(v);
  j["verdict"] = to_string(v.answer);
  for (auto& [k, val] : extra.items()) j[k] = val;
  std::string text = to_string(v.answer);
  if (v.vector) {
    text += "\nvector:";
    for (const auto& x : *v.vector) text += " " + x.to_string();
  }
  for (const auto& l : v.trace) text += "\n  " + l;
  emit(g, j, text);
  return exit_for(v.answer);
}

std::string result_text(const ClassificationResult& r) {
  std::string s = std::string(to_string(r.verdict.answer)) + " (branch " + r.branch + ")";
  if (r.witness) s += "\nwitness: " + to_json(*r.witness).dump();
  for (const auto& l : r.transcript) s += "\n  " + l;
  for (const auto& l : r.verdict.trace) s += "\n  . " + l;
  return s;
}

// Per-instance sweep record.
Json sweep_one(const CorpusInstance& inst, const ClassifyOptions& copt, int oracle_degree, bool timings) {
  const auto t0 = std::chrono::steady_clock::now();
  Json j{{"profile", inst.profile}, {"seed", inst.seed}, {"phi", inst.phi.to_string()}, {"psi", inst.psi.to_string()}};
  if (!rescreen(inst, copt.iso)) {
    j["error"] = "screening transcript does not reproduce";
    return j;
  }
  try {
    const ClassificationResult r = classify(inst.phi, inst.psi, copt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    j["result"] = to_json(r, timings ? secs : -1);
    if (r.verdict.yes() && r.witness) j["reverified"] = to_string(verify_witness(inst.phi, inst.psi, *r.witness, copt).answer);
    if (oracle_degree > 0) {
      try {
        const Verdict o = oracle_isotropy_over_function_field(inst.phi, inst.psi, oracle_degree, copt.iso);
        j["oracle"] = to_string(o.answer);
        j["contradiction"] = (o.yes() && r.verdict.no()) || (o.no() && r.verdict.yes());
      } catch (const Error& e) {
        j["oracle"] = std::string("n/a: ") + e.what();
      }
    }
  } catch (const Error& e) {
    j["error"] = e.what();
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic forms in characteristic 2"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "Field, e.g. F2(t,u) or F2^2(t)[sep:t]")->capture_default_str();
  app.add_flag("--json", g.json, "Structured output");
  app.add_flag("--timings", g.timings, "Add timings to structured results");
  app.add_option("--degree", g.degree, "Certificate-search degree bound (overrides QF2_DEGREE_BOUND, default 4)");

  std::string form, small, big, phi, psi, profile = "all", out_file, in_file;
  bool weak = false, criterion = false;
  std::uint64_t seed = 1;
  int count = 13, threads = 0, oracle_degree = 0;

  auto* c_type = app.add_subcommand("type", "Normal form and type (r,s)");
  auto* c_witt = app.add_subcommand("witt", "Witt decomposition");
  auto* c_iso = app.add_subcommand("isotropy", "Decide isotropy");
  auto* c_arf = app.add_subcommand("arf", "Arf invariant of a nonsingular form");
  auto* c_cliff = app.add_subcommand("clifford", "Clifford invariant of a nonsingular form");
  auto* c_ndeg = app.add_subcommand("ndeg", "Norm degree of a totally singular form");
  auto* c_pn = app.add_subcommand("pfister-neighbor", "Pfister-neighbor test for type (1,3)");
  for (auto* c : {c_type, c_witt, c_iso, c_arf, c_cliff, c_ndeg, c_pn}) c->add_option("form", form)->required();
  c_pn->add_flag("--criterion", criterion, "Only the splitting criterion, no anisotropy check");

  auto* c_dom = app.add_subcommand("dominates", "Is SMALL dominated by BIG");
  c_dom->add_option("small", small)->required();
  c_dom->add_option("big", big)->required();
  c_dom->add_flag("--weak", weak, "Allow a scalar");

  auto* c_cls = app.add_subcommand("classify", "Isotropy of phi over F(psi) with witness");
  auto* c_orc = app.add_subcommand("oracle", "Engine run of phi over F(psi)");
  for (auto* c : {c_cls, c_orc}) {
    c->add_option("--phi", phi)->required();
    c->add_option("--psi", psi)->required();
  }

  auto* c_gen = app.add_subcommand("gen-corpus", "Write screened instances as JSON lines");
  c_gen->add_option("--seed", seed)->capture_default_str();
  c_gen->add_option("--profile", profile, "Profile name or 'all'")->capture_default_str();
  c_gen->add_option("--count", count, "Instances per profile")->capture_default_str();
  c_gen->add_option("-o,--output", out_file, "Output file (default stdout)");

  auto* c_sweep = app.add_subcommand("sweep", "Classify every instance of a corpus file");
  c_sweep->add_option("input", in_file)->required();
  c_sweep->add_option("--threads", threads, "Worker threads (default: hardware)");
  c_sweep->add_option("--oracle-degree", oracle_degree, "Cross-check with the oracle at this degree (0: off)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    const TowerPtr t = parse_tower(g.field);
    const IsotropyOptions io = iso_options(g);
    auto F = [&](const std::string& s) { return parse_form(t, s); };

    if (*c_type) {
      const Normalized n = normalize(F(form));
      const std::string tp = "(" + std::to_string(n.r) + "," + std::to_string(n.s) + ")";
      emit(g, Json{{"type", tp}, {"defect", n.defect}, {"normal_form", n.form.to_string()}},
           "type " + tp + ", defect " + std::to_string(n.defect) + "\n" + n.form.to_string());
      return kExitDecided;
    }
    if (*c_witt) {
      const WittData w = witt_decompose(F(form), io);
      emit(g, Json{{"i_W", w.i_W}, {"i_d", w.i_d}, {"an_part", w.an_part.to_string()}},
           "i_W = " + std::to_string(w.i_W) + ", i_d = " + std::to_string(w.i_d) + ", anisotropic part " +
               w.an_part.to_string());
      return kExitDecided;
    }
    if (*c_iso) return report_verdict(g, isotropy(F(form), io));
    if (*c_arf) {
      const ArfClass a = arf(F(form));
      emit(g, Json{{"arf", a.normalized.to_string()}, {"zero", a.is_zero()}}, a.normalized.to_string());
      return kExitDecided;
    }
    if (*c_cliff) {
      const BrauerClass c = clifford_class(F(form));
      const Verdict v = brauer_trivial(c, io);
      emit(g, Json{{"class", c.to_string()}, {"split", to_string(v.answer)}},
           c.to_string() + "\nsplit: " + to_string(v.answer));
      return exit_for(v.answer);
    }
    if (*c_ndeg) {
      const QuadForm f = F(form);
      if (!f.is_totally_singular()) throw Error(ErrorKind::SingularInput, "ndeg needs a totally singular form");
      const int n = norm_degree(f.diag());
      emit(g, Json{{"ndeg", n}}, std::to_string(n));
      return kExitDecided;
    }
    if (*c_pn) return report_verdict(g, criterion ? neighbor_criterion_13(F(form), io) : pfister_neighbor_13(F(form), io));
    if (*c_dom) {
      if (!weak) return report_verdict(g, dominates(F(small), F(big), io));
      const SimilarityVerdict s = weakly_dominates(F(small), F(big), io);
      return report_verdict(g, s.verdict, s.factor ? Json{{"factor", s.factor->to_string()}} : Json::object());
    }
    if (*c_orc) return report_verdict(g, oracle_isotropy_over_function_field(F(phi), F(psi), degree_bound(g), io));
    if (*c_cls) {
      ClassifyOptions co;
      co.iso = io;
      const auto t0 = std::chrono::steady_clock::now();
      const ClassificationResult r = classify(F(phi), F(psi), co);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      emit(g, to_json(r, g.timings ? secs : -1), result_text(r));
      return exit_for(r.verdict.answer);
    }
    if (*c_gen) {
      std::vector<std::string> profiles;
      if (profile == "all") profiles = corpus_profiles();
      else profiles = {profile};
      std::ofstream file;
      if (!out_file.empty()) {
        file.open(out_file);
        if (!file) throw Error(ErrorKind::ParseError, "cannot open " + out_file);
      }
      std::ostream& os = out_file.empty() ? std::cout : file;
      for (const auto& p : profiles)
        for (const auto& inst : gen_corpus(t, seed, p, count, io)) os << to_json(inst).dump() << "\n";
      return kExitDecided;
    }
    if (*c_sweep) {
      std::ifstream in(in_file);
      if (!in) throw Error(ErrorKind::ParseError, "cannot open " + in_file);
      std::vector<CorpusInstance> insts;
      std::string line;
      for (int ln = 1; std::getline(in, line); ++ln) {
        if (line.empty()) continue;
        try {
          insts.push_back(instance_from_json(Json::parse(line)));
        } catch (const Json::exception& e) {
          throw Error(ErrorKind::ParseError, in_file + ":" + std::to_string(ln) + ": " + e.what());
        }
      }
      ClassifyOptions co;
      co.iso = io;
      std::vector<Json> out(insts.size());
      std::atomic<std::size_t> next{0};
      const int nt = std::max(1, threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()));
      std::vector<std::thread> pool;
      for (int i = 0; i < nt; ++i)
        pool.emplace_back([&] {
          for (std::size_t k; (k = next++) < insts.size();) out[k] = sweep_one(insts[k], co, oracle_degree, g.timings);
        });
      for (auto& th : pool) th.join();
      int yes = 0, no = 0, unknown = 0, errors = 0, bad = 0;
      for (const auto& j : out) {
        std::cout << j.dump() << "\n";
        if (j.contains("error")) {
          ++errors;
          continue;
        }
        const std::string v = j["result"]["verdict"];
        (v == "Yes" ? yes : v == "No" ? no : unknown)++;
        if ((j.contains("reverified") && j["reverified"] != "Yes") || j.value("contradiction", false)) ++bad;
      }
      std::cout << Json{{"summary", {{"instances", out.size()}, {"yes", yes}, {"no", no}, {"unknown", unknown},
                                     {"errors", errors}, {"failures", bad}}}}
                       .dump()
                << "\n";
      return errors + bad > 0 ? kExitError : kExitDecided;
    }
  } catch (const Error& e) {
    if (g.json) std::cout << Json{{"error", e.what()}}.dump() << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
