#include "tiltsmith/error.hpp"
#include "tiltsmith/fixtures.hpp"
#include "tiltsmith/io.hpp"
#include "tiltsmith/tilting.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace tiltsmith;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kInconclusive = 3 };

struct RunConfig {
  std::string command;
  std::string fixture;
  std::string algebra;
  std::vector<std::string> objects;
  std::string certificate;
  std::vector<int> shifts;
  int window = 0, degree = 0, stages = 0;
  long long enum_cap = 0;
  int box = 2;
  bool force = false;
  std::string format = "json";
  std::string out;
  std::string out_dir;
  int threads = 1;
};

// Everything a command needs about its inputs.
struct Inputs {
  RegistryPtr reg;
  SMCollection collection;
  std::vector<ModuleRep> images;
  std::optional<GenerationCertificate> certificate;
  const Fixture* fixture = nullptr;
};

Inputs load(const RunConfig& cfg) {
  Inputs in;
  if (cfg.fixture.empty() == cfg.algebra.empty())
    fail(ErrorKind::Config, "give exactly one of --fixture and --algebra");
  if (!cfg.fixture.empty()) {
    in.fixture = &fixture_by_name(cfg.fixture);
    in.reg = in.fixture->reg;
    in.collection = in.fixture->collection;
    in.images = in.fixture->y_modules;
    in.certificate = in.fixture->certificate;
  } else {
    const json a = read_json_file(cfg.algebra);
    in.reg = registry_from_json(a, algebra_from_json(a));
    in.collection.reg = in.reg;
    if (cfg.objects.empty()) fail(ErrorKind::Config, "--algebra needs --objects");
  }
  if (!cfg.objects.empty()) {
    in.collection = SMCollection{in.reg, {}, std::nullopt};
    in.images.clear();
    in.certificate.reset();
    for (const auto& p : cfg.objects) {
      const json o = read_json_file(p);
      in.collection.objects.push_back(object_from_json(o, in.reg));
      if (!o.contains("terms")) in.images.push_back(module_from_json(o, in.reg->algebra()));
    }
  }
  if (!cfg.shifts.empty()) {
    if (cfg.shifts.size() != in.images.size() || in.images.size() != in.collection.objects.size())
      fail(ErrorKind::Config, "--shifts needs one shift per module image");
    in.collection.objects.clear();
    for (std::size_t i = 0; i < in.images.size(); ++i)
      in.collection.objects.push_back(syzygy_object(in.images[i], cfg.shifts[i], *in.reg));
    in.collection.shift_vector = cfg.shifts;
    in.certificate.reset();
  }
  if (!cfg.certificate.empty())
    in.certificate = certificate_from_json(read_json_file(cfg.certificate), in.reg->algebra()->field());
  return in;
}

TiltingCaps caps_from(const RunConfig& cfg) {
  TiltingCaps c;
  if (cfg.window) c.window = cfg.window;
  if (cfg.degree) c.degree = cfg.degree;
  if (cfg.stages) c.stages = cfg.stages;
  if (cfg.enum_cap) c.enum_cap = static_cast<std::uint64_t>(cfg.enum_cap);
  c.threads = cfg.threads;
  return c;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string dims_text(const json& dims) {
  std::string s;
  for (const auto& [k, v] : dims.items()) s += (s.empty() ? "" : " ") + k + ":" + std::to_string(v.get<int>());
  return s.empty() ? "-" : s;
}

// ---------------------------------------------------------------------------
// Text renderings of the JSON reports.

std::string render_smc(const json& r) {
  std::ostringstream o;
  o << "check-smc: " << r["status"].get<std::string>() << " (" << r["reason_code"].get<std::string>() << ")\n";
  if (r.contains("conditions")) {
    const json& ab = r["conditions"];
    o << "condition (a): " << (ab["pass_a"].get<bool>() ? "pass" : "FAIL") << "\n";
    o << "condition (b): " << (ab["pass_b"].get<bool>() ? "pass" : "FAIL") << "\n";
    for (const auto& t : ab["hom_table"])
      o << "  Hom(X_" << t["i"] << ", X_" << t["j"] << "[m]): " << dims_text(t["dims"]) << "\n";
    for (const auto& f : ab["failures"]) o << "  failure: " << f.get<std::string>() << "\n";
  }
  if (r.contains("generation") && !r["generation"].is_null()) {
    const json& g = r["generation"];
    o << "generation: " << (g["pass"].get<bool>() ? "pass" : "FAIL");
    if (!g["reason"].get<std::string>().empty()) o << " (" << g["reason"].get<std::string>() << ")";
    o << "\n";
  }
  if (r.contains("message")) o << "message: " << r["message"].get<std::string>() << "\n";
  return o.str();
}

std::string render_tilting(const json& r) {
  std::ostringstream o;
  o << "build-tilting: " << r["status"].get<std::string>() << " (" << r["reason_code"].get<std::string>() << ")\n";
  if (r.contains("message")) o << "message: " << r["message"].get<std::string>() << "\n";
  if (!r.contains("tilting")) return o.str();
  const json& t = r["tilting"];
  const json& c = t["caps"];
  o << "caps: window " << c["window"] << ", degree " << c["degree"] << ", stages " << c["stages"]
    << ", summands " << c["max_summands"] << "\n";
  for (const auto& s : t["reasons"]) o << "reason: " << s.get<std::string>() << "\n";
  for (const auto& s : t["summands"]) {
    o << "T_" << s["index"] << ":";
    for (const auto& term : s["terms"]) {
      o << "  [" << term["degree"].get<int>() << "]";
      for (const auto& [lbl, k] : term["projectives"].items()) o << " P(" << lbl << ")^" << k.get<int>();
    }
    o << "\n";
    if (s.contains("stages")) o << "  stages: " << s["stages"].size() << "\n";
  }
  if (!t["gamma"].is_null()) {
    const json& g = t["gamma"];
    o << "Gamma: dim " << g["dim"] << ", " << g["simple_count"] << " simples, symmetric form "
      << g["symmetric_search"].get<std::string>() << "\n";
    o << "cartan:\n";
    for (const auto& row : g["cartan"]) {
      o << " ";
      for (const auto& x : row) o << " " << x.get<int>();
      o << "\n";
    }
  }
  return o.str();
}

std::string render_search(const json& r) {
  std::ostringstream o;
  o << "stalk-search: box " << r["box"] << ", " << r["survivors"].size() << " survivor(s)\n";
  o << "shifts        end=k hom=0 stable=0 ab\n";
  for (const auto& s : r["candidates"]) {
    const auto mark = [](const json& b) { return b.get<bool>() ? "  ok " : "  -- "; };
    std::string sh = "(" + join(s["shifts"].get<std::vector<int>>()) + ")";
    sh.resize(13, ' ');
    o << sh << " " << mark(s["end_is_k"]) << " " << mark(s["hom_vanishing"]) << " "
      << mark(s["stable_vanishing"]) << " " << mark(s["ab"]) << "\n";
  }
  if (r.contains("message")) o << "message: " << r["message"].get<std::string>() << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------

const char* ab_code(const ABReport& ab) {
  if (!ab.pass_a) return "SMC_A_FAILED";
  if (!ab.pass_b) return "SMC_B_FAILED";
  return "OK";
}

// (a), (b) and generation. Returns the exit code and fills `r`.
int smc_checks(const Inputs& in, json& r) {
  const ABReport ab = check_conditions_ab(in.collection);
  r["conditions"] = ab_report_to_json(ab);
  r["generation"] = nullptr;
  if (!ab.pass()) {
    r["reason_code"] = ab_code(ab);
    return kFail;
  }
  std::optional<GenerationCertificate> cert = in.certificate;
  r["certificate_source"] = cert ? "given" : "search";
  if (!cert) cert = auto_certificate(in.collection);
  if (!cert) {
    r["reason_code"] = "GENERATION_UNDECIDED";
    r["message"] = "no generation certificate given and the bounded search found none";
    return kInconclusive;
  }
  const GenerationReport g = verify_generation(in.collection, *cert);
  r["generation"] = generation_report_to_json(g);
  r["certificate"] = certificate_to_json(*cert);
  if (!g.pass) {
    r["reason_code"] = "GENERATION_FAILED";
    return kFail;
  }
  r["reason_code"] = "OK";
  return kPass;
}

int cmd_check_smc(const RunConfig& cfg, json& r) {
  const Inputs in = load(cfg);
  return smc_checks(in, r);
}

int cmd_build_tilting(const RunConfig& cfg, json& r) {
  const Inputs in = load(cfg);
  if (!cfg.force) {
    json pre;
    const int code = smc_checks(in, pre);
    r["precheck"] = pre;
    if (code != kPass) {
      r["reason_code"] = "PRECHECK_" + pre["reason_code"].get<std::string>();
      return code;
    }
  } else {
    r["precheck"] = "skipped";
  }
  const TiltingReport t = build_tilting(in.collection, caps_from(cfg));
  r["tilting"] = tilting_report_to_json(t);
  switch (t.status) {
    case TiltingStatus::Certified: r["reason_code"] = "OK"; return kPass;
    case TiltingStatus::Inconclusive: r["reason_code"] = "CAP_EXHAUSTED"; return kInconclusive;
    case TiltingStatus::Failed: r["reason_code"] = "TILTING_FAILED"; return kFail;
  }
  return kFail;
}

int cmd_stalk_search(const RunConfig& cfg, json& r) {
  const Inputs in = load(cfg);
  if (cfg.box < 0) fail(ErrorKind::Config, "--box must be nonnegative");
  if (in.images.empty()) fail(ErrorKind::Config, "stalk-search needs module images");
  const auto found = stalk_search(in.reg, in.images, cfg.box, cfg.threads);
  r["box"] = cfg.box;
  json surv = json::array(), cands = json::array();
  // The per-criterion matrix covers every normalized vector in the box.
  for (const auto& [s, c] : stalk_criteria_box(in.reg, in.images, cfg.box)) {
    bool ab = false;
    for (const auto& f : found)
      if (f.shifts == s) ab = true;
    json row = {{"shifts", s},
                {"end_is_k", c.end_is_k},
                {"hom_vanishing", c.hom_vanishing},
                {"stable_vanishing", c.stable_vanishing},
                {"ab", ab}};
    if (!c.reason.empty()) row["reason"] = c.reason;
    cands.push_back(row);
    if (ab) surv.push_back(s);
  }
  r["survivors"] = surv;
  r["candidates"] = cands;
  r["reason_code"] = "OK";
  return kPass;
}

// Writes the fixture's algebra, objects, images and certificate as files.
int cmd_export(const RunConfig& cfg, json& r) {
  if (cfg.fixture.empty() || cfg.out_dir.empty()) fail(ErrorKind::Config, "export needs --fixture and --out-dir");
  const Fixture& f = fixture_by_name(cfg.fixture);
  std::filesystem::create_directories(cfg.out_dir);
  const auto write = [&](const std::string& name, const json& j) {
    std::ofstream o(std::filesystem::path(cfg.out_dir) / name);
    if (!o) fail(ErrorKind::Config, "cannot write " + name);
    o << j.dump(1) << "\n";
  };
  write("algebra.json", algebra_to_json(*f.reg->algebra(), f.reg.get()));
  json files = json::array();
  for (std::size_t i = 0; i < f.y_modules.size(); ++i) {
    write("image" + std::to_string(i) + ".json", module_to_json(f.y_modules[i], "algebra.json"));
    json x = complex_to_json(f.collection.objects[i]);
    write("object" + std::to_string(i) + ".json", x);
    files.push_back("object" + std::to_string(i) + ".json");
  }
  for (int a = 0; a < f.reg->count(); ++a)
    write("simple_" + f.reg->labels()[a] + ".json", module_to_json(f.reg->simple(a), "algebra.json"));
  write("certificate.json", certificate_to_json(f.certificate));
  r["objects"] = files;
  r["shift_vector"] = f.x_recipe;
  r["reason_code"] = "OK";
  return kPass;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config:
    case ErrorKind::Precondition: return kInput;
    case ErrorKind::Inconclusive: return kInconclusive;
    case ErrorKind::Verification:
    case ErrorKind::Internal: return kFail;
  }
  return kFail;
}

const char* reason_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config: return "INPUT_ERROR";
    case ErrorKind::Precondition: return "PRECONDITION";
    case ErrorKind::Inconclusive: return "CAP_EXHAUSTED";
    case ErrorKind::Verification: return "VERIFICATION_FAILED";
    case ErrorKind::Internal: return "INTERNAL_ERROR";
  }
  return "INTERNAL_ERROR";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"tiltsmith: simple-minded collections and tilting complexes over finite fields"};
  app.require_subcommand(1);

  const auto positive = CLI::PositiveNumber;
  const auto add_inputs = [&](CLI::App* s) {
    s->add_option("--fixture", cfg.fixture, "built-in example")
        ->check(CLI::IsMember({"a5", "a7", "a8", "c2", "semisimple"}));
    s->add_option("--algebra", cfg.algebra, "algebra JSON file");
    s->add_option("--objects", cfg.objects, "object JSON files (modules or complexes)");
    s->add_option("--shifts", cfg.shifts, "shift vector n: X_i = Omega^{n_i}(Y_i)[n_i]")->delimiter(',');
    s->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
    s->add_option("--out", cfg.out, "report file");
  };
  auto* smc = app.add_subcommand("check-smc", "check conditions (a), (b) and generation");
  add_inputs(smc);
  smc->add_option("--certificate", cfg.certificate, "generation certificate JSON");

  auto* tilt = app.add_subcommand("build-tilting", "construct T, verify it and extract Gamma");
  add_inputs(tilt);
  tilt->add_option("--certificate", cfg.certificate, "generation certificate JSON");
  tilt->add_option("--window", cfg.window)->check(positive);
  tilt->add_option("--degree", cfg.degree)->check(positive);
  tilt->add_option("--stages", cfg.stages)->check(positive);
  tilt->add_option("--enum-cap", cfg.enum_cap)->check(positive);
  tilt->add_flag("--force", cfg.force, "skip the SMC pre-check");

  auto* search = app.add_subcommand("stalk-search", "search shift vectors for stalk collections");
  add_inputs(search);
  search->add_option("--box", cfg.box, "shift box [-box, box]")->check(CLI::NonNegativeNumber);

  auto* exp = app.add_subcommand("export", "write a fixture's input files");
  exp->add_option("--fixture", cfg.fixture)->required();
  exp->add_option("--out-dir", cfg.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << "reason_code: INPUT_ERROR\n";
    return kInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (const char* t = std::getenv("TILTSMITH_THREADS")) {
    try {
      cfg.threads = std::max(1, std::stoi(t));
    } catch (const std::exception&) {
      std::cerr << "reason_code: INPUT_ERROR\nTILTSMITH_THREADS is not an integer\n";
      return kInput;
    }
  }

  json r;
  r["command"] = cfg.command;
  int code = kFail;
  try {
    if (cfg.command == "check-smc") code = cmd_check_smc(cfg, r);
    else if (cfg.command == "build-tilting") code = cmd_build_tilting(cfg, r);
    else if (cfg.command == "stalk-search") code = cmd_stalk_search(cfg, r);
    else code = cmd_export(cfg, r);
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    r["reason_code"] = reason_for(e.kind());
    r["message"] = e.what();
  } catch (const std::exception& e) {
    code = kFail;
    r["reason_code"] = "INTERNAL_ERROR";
    r["message"] = e.what();
  }
  static const char* names[] = {"pass", "fail", "input-error", "inconclusive"};
  r["status"] = names[code];
  r["exit_code"] = code;

  std::string text;
  if (cfg.format == "text") {
    if (cfg.command == "build-tilting") text = render_tilting(r);
    else if (cfg.command == "stalk-search" && r.contains("candidates")) text = render_search(r);
    else text = render_smc(r);
  } else {
    text = r.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(cfg.out);
    if (!o) {
      std::cerr << "reason_code: INPUT_ERROR\ncannot write " << cfg.out << "\n";
      return kInput;
    }
    o << text;
  }
  if (code != kPass) std::cerr << "reason_code: " << r["reason_code"].get<std::string>() << "\n";
  return code;
}
