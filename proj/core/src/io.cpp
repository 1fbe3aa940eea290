#include "tiltsmith/io.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

#include <fstream>
#include <sstream>

namespace tiltsmith {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Config, what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

Elem elem_from_json(const FqField& f, const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    bad(what + " must be a list of " + std::to_string(n) + " field elements");
  Elem e(n);
  for (int i = 0; i < n; ++i) e[i] = fq_from_json(f, j[i]);
  return e;
}

json elem_to_json(const FqField& f, const Elem& e) {
  json out = json::array();
  for (Fq x : e) out.push_back(fq_to_json(f, x));
  return out;
}

const char* kind_name(StepKind k) {
  switch (k) {
    case StepKind::Seed: return "SEED";
    case StepKind::Shift: return "SHIFT";
    case StepKind::Cone: return "CONE";
    case StepKind::Stalkify: return "STALKIFY";
    case StepKind::Filtration: return "FILTRATION";
    case StepKind::Iso: return "ISO";
  }
  return "?";
}

json dims_to_json(const std::map<int, int>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = v;
  return o;
}

json table_to_json(const std::vector<std::vector<std::map<int, int>>>& t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j)
      out.push_back({{"i", i}, {"j", j}, {"dims", dims_to_json(t[i][j])}});
  return out;
}

}  // namespace

json fq_to_json(const FqField& f, Fq a) {
  if (f.e() == 1) return static_cast<int>(a);
  return f.to_coeffs(a);
}

Fq fq_from_json(const FqField& f, const json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_array()) {
    std::vector<int> c;
    for (const auto& x : j) {
      if (!x.is_number_integer()) bad("field element coefficients must be integers");
      c.push_back(x.get<int>());
    }
    if (static_cast<int>(c.size()) > f.e()) bad("field element has too many coefficients");
    return f.from_coeffs(c);
  }
  bad("field element must be an integer or a coefficient list");
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(fq_to_json(m.F(), m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const FieldPtr& f, const json& j, int rows, int cols) {
  if (!j.is_array()) bad("matrix must be a list of rows");
  const int r = static_cast<int>(j.size());
  int c = cols;
  if (r > 0) {
    if (!j[0].is_array()) bad("matrix rows must be lists");
    c = static_cast<int>(j[0].size());
  }
  if (rows >= 0 && r != rows) bad("matrix has " + std::to_string(r) + " rows, expected " + std::to_string(rows));
  if (cols >= 0 && r > 0 && c != cols)
    bad("matrix has " + std::to_string(c) + " columns, expected " + std::to_string(cols));
  Matrix m(f, r, c < 0 ? 0 : c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c) bad("matrix rows differ in length");
    for (int k = 0; k < c; ++k) m.at(i, k) = fq_from_json(*f, j[i][k]);
  }
  return m;
}

json field_to_json(const FqField& f) {
  return {{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}};
}

FieldPtr field_from_json(const json& j) {
  const int p = as_int(need(j, "p"), "field.p");
  const int e = j.contains("e") ? as_int(j.at("e"), "field.e") : 1;
  if (e == 1 && !j.contains("modulus")) return FqField::prime(p);
  const json& mod = need(j, "modulus");
  if (!mod.is_array()) bad("field.modulus must be a list");
  std::vector<int> m;
  for (const auto& x : mod) m.push_back(as_int(x, "field.modulus entry"));
  return FqField::make(p, e, m);
}

json algebra_to_json(const Algebra& a, const SimpleRegistry* reg) {
  const FqField& f = a.F();
  json out;
  out["field"] = field_to_json(f);
  out["dim"] = a.dim();
  out["labels"] = a.labels();
  out["unit"] = elem_to_json(f, a.unit());
  json st = json::array();
  for (const auto& t : a.structure_triples()) st.push_back({t.i, t.j, t.k, fq_to_json(f, t.coeff)});
  out["structure"] = st;
  if (a.sym_form()) out["sym_form"] = elem_to_json(f, *a.sym_form());
  if (reg) {
    json s = json::array();
    for (int i = 0; i < reg->count(); ++i) {
      json m = module_to_json(reg->simple(i));
      m["label"] = reg->labels()[i];
      s.push_back(m);
    }
    out["simples"] = s;
  }
  return out;
}

AlgebraPtr algebra_from_json(const json& j) {
  const FieldPtr f = field_from_json(need(j, "field"));
  const int n = as_int(need(j, "dim"), "dim");
  if (n <= 0) bad("dim must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || static_cast<int>(j["labels"].size()) != n)
      bad("labels must list one name per basis element");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) bad("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (int i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
  }
  const Elem unit = elem_from_json(*f, need(j, "unit"), n, "unit");
  std::vector<Algebra::Triple> triples;
  const json& st = need(j, "structure");
  if (!st.is_array()) bad("structure must be a list");
  for (const auto& t : st) {
    if (!t.is_array() || t.size() != 4) bad("structure entries are [i, j, k, coeff]");
    const int a = as_int(t[0], "structure index"), b = as_int(t[1], "structure index"),
              c = as_int(t[2], "structure index");
    if (a < 0 || a >= n || b < 0 || b >= n || c < 0 || c >= n) bad("structure index out of range");
    triples.push_back({a, b, c, fq_from_json(*f, t[3])});
  }
  std::optional<Elem> form;
  if (j.contains("sym_form") && !j["sym_form"].is_null())
    form = elem_from_json(*f, j["sym_form"], n, "sym_form");
  return Algebra::make(f, labels, triples, unit, form);
}

json module_to_json(const ModuleRep& m, const std::string& algebra_ref) {
  json out;
  out["algebra_ref"] = algebra_ref;
  out["dim"] = m.dim();
  json act = json::array();
  for (const auto& a : m.actions()) act.push_back(matrix_to_json(a));
  out["action"] = act;
  return out;
}

ModuleRep module_from_json(const json& j, const AlgebraPtr& alg) {
  const int d = as_int(need(j, "dim"), "module dim");
  if (d < 0) bad("module dim must be nonnegative");
  const json& act = need(j, "action");
  if (!act.is_array() || static_cast<int>(act.size()) != alg->dim())
    bad("module action must list one matrix per algebra basis element");
  std::vector<Matrix> a;
  for (const auto& m : act) a.push_back(matrix_from_json(alg->field(), m, d, d));
  try {
    return ModuleRep::make(alg, d, std::move(a));
  } catch (const Error& e) {
    bad(std::string("module action invalid: ") + e.what());
  }
}

RegistryPtr registry_from_json(const json& j, const AlgebraPtr& alg) {
  std::vector<ModuleRep> simples;
  std::vector<std::string> labels;
  if (j.contains("simples")) {
    for (const auto& s : j["simples"]) {
      simples.push_back(module_from_json(s, alg));
      labels.push_back(s.value("label", "S" + std::to_string(labels.size())));
    }
  } else {
    simples = find_simples(alg);
    if (simples.size() == 1) labels.push_back("k");
    else
      for (std::size_t i = 0; i < simples.size(); ++i) labels.push_back("S" + std::to_string(i));
  }
  return register_simples(alg, simples, labels);
}

json complex_to_json(const Complex& c) {
  json out;
  json terms = json::object(), diffs = json::object();
  for (const auto& [k, m] : c.terms()) terms[std::to_string(k)] = module_to_json(m);
  for (const auto& [k, m] : c.terms()) {
    (void)m;
    if (c.terms().count(k + 1)) diffs[std::to_string(k)] = matrix_to_json(c.diff(k));
  }
  out["terms"] = terms;
  out["diffs"] = diffs;
  out["certified_below"] = nullptr;
  return out;
}

Complex object_from_json(const json& j, const RegistryPtr& reg) {
  const AlgebraPtr& alg = reg->algebra();
  if (!j.is_object()) bad("object must be a JSON object");
  if (!j.contains("terms")) {
    const int deg = j.contains("degree") ? as_int(j["degree"], "degree") : 0;
    return Complex::stalk(module_from_json(j, alg), deg);
  }
  std::map<int, ModuleRep> terms;
  std::map<int, Matrix> diffs;
  auto deg_of = [](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      bad("degree key '" + s + "' is not an integer");
    }
  };
  for (const auto& [k, t] : need(j, "terms").items()) {
    if (t.contains("projectives")) {
      std::vector<int> s;
      for (const auto& l : t["projectives"]) {
        if (!l.is_string()) bad("projective labels must be strings");
        s.push_back(reg->index_of(l.get<std::string>()));
      }
      terms.emplace(deg_of(k), projective_sum(s, *reg));
    } else {
      terms.emplace(deg_of(k), module_from_json(t, alg));
    }
  }
  if (j.contains("diffs"))
    for (const auto& [k, d] : j["diffs"].items()) {
      const int kk = deg_of(k);
      auto a = terms.find(kk), b = terms.find(kk + 1);
      if (a == terms.end() || b == terms.end()) bad("differential " + k + " has no source or target");
      diffs.emplace(kk, matrix_from_json(alg->field(), d, b->second.dim(), a->second.dim()));
    }
  try {
    return Complex::make(alg, std::move(terms), std::move(diffs));
  } catch (const Error& e) {
    bad(std::string("complex invalid: ") + e.what());
  }
}

json certificate_to_json(const GenerationCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) {
    json o;
    o["kind"] = kind_name(s.kind);
    switch (s.kind) {
      case StepKind::Seed: o["index"] = s.index; break;
      case StepKind::Shift:
        o["ref"] = s.ref;
        o["shift"] = s.shift;
        break;
      case StepKind::Cone:
        o["source"] = s.ref;
        o["target"] = s.ref2;
        if (s.directive == ConeDirective::Explicit) {
          json m = json::object();
          for (const auto& [k, f] : s.map) m[std::to_string(k)] = matrix_to_json(f);
          o["map"] = m;
        } else {
          o["directive"] = s.directive == ConeDirective::Surjection ? "surjection" : "injection";
        }
        break;
      case StepKind::Stalkify: o["ref"] = s.ref; break;
      case StepKind::Filtration: {
        o["ref"] = s.ref;
        o["quotient_by"] = s.quotient_by;
        o["series"] = s.series;
        o["layers"] = s.layer_refs;
        if (!s.chain.empty()) {
          json ch = json::array();
          for (const auto& m : s.chain) ch.push_back(matrix_to_json(m));
          o["chain"] = ch;
        }
        break;
      }
      case StepKind::Iso:
        o["ref"] = s.ref;
        o["simple"] = s.simple;
        break;
    }
    steps.push_back(o);
  }
  json claims = json::array();
  for (const auto& cl : c.claims) claims.push_back({{"step_ref", cl.step_ref}, {"simple_label", cl.simple_label}});
  return {{"steps", steps}, {"claims", claims}};
}

GenerationCertificate certificate_from_json(const json& j, const FieldPtr& f) {
  GenerationCertificate c;
  const json& steps = need(j, "steps");
  if (!steps.is_array()) bad("steps must be a list");
  for (const auto& s : steps) {
    CertStep st;
    const json& kj = need(s, "kind");
    if (!kj.is_string()) bad("step kind must be a string");
    const std::string k = kj.get<std::string>();
    auto ref = [&](const char* key) { return as_int(need(s, key), key); };
    if (k == "SEED") {
      st.kind = StepKind::Seed;
      st.index = ref("index");
    } else if (k == "SHIFT") {
      st.kind = StepKind::Shift;
      st.ref = ref("ref");
      st.shift = ref("shift");
    } else if (k == "CONE") {
      st.kind = StepKind::Cone;
      st.ref = ref("source");
      st.ref2 = ref("target");
      if (s.contains("map")) {
        st.directive = ConeDirective::Explicit;
        for (const auto& [deg, m] : s["map"].items()) st.map.emplace(std::stoi(deg), matrix_from_json(f, m));
      } else {
        const std::string d = need(s, "directive").get<std::string>();
        if (d == "surjection") st.directive = ConeDirective::Surjection;
        else if (d == "injection") st.directive = ConeDirective::Injection;
        else bad("unknown cone directive '" + d + "'");
      }
    } else if (k == "STALKIFY") {
      st.kind = StepKind::Stalkify;
      st.ref = ref("ref");
    } else if (k == "FILTRATION") {
      st.kind = StepKind::Filtration;
      st.ref = ref("ref");
      st.quotient_by = s.value("quotient_by", "");
      st.series = s.value("series", "radical");
      for (const auto& l : need(s, "layers")) {
        std::vector<int> layer;
        for (const auto& x : l) layer.push_back(as_int(x, "layer ref"));
        st.layer_refs.push_back(layer);
      }
      if (s.contains("chain"))
        for (const auto& m : s["chain"]) st.chain.push_back(matrix_from_json(f, m));
    } else if (k == "ISO") {
      st.kind = StepKind::Iso;
      st.ref = ref("ref");
      st.simple = need(s, "simple").get<std::string>();
    } else {
      bad("unknown step kind '" + k + "'");
    }
    c.steps.push_back(std::move(st));
  }
  for (const auto& cl : need(j, "claims")) {
    Claim x;
    x.step_ref = as_int(need(cl, "step_ref"), "step_ref");
    const json& lbl = need(cl, "simple_label");
    if (!lbl.is_string()) bad("simple_label must be a string");
    x.simple_label = lbl.get<std::string>();
    c.claims.push_back(x);
  }
  return c;
}

json ab_report_to_json(const ABReport& r) {
  json out;
  out["pass_a"] = r.pass_a;
  out["pass_b"] = r.pass_b;
  json t = json::array();
  for (const auto& p : r.table) t.push_back({{"i", p.i}, {"j", p.j}, {"dims", dims_to_json(p.dims)}});
  out["hom_table"] = t;
  json e = json::array();
  for (const auto& x : r.ends)
    e.push_back({{"dim", x.dim}, {"is_field", x.is_field}, {"commutative", x.commutative}, {"note", x.note}});
  out["end_rings"] = e;
  out["failures"] = r.failures;
  return out;
}

json generation_report_to_json(const GenerationReport& r) {
  json out;
  out["pass"] = r.pass;
  out["covered"] = r.covered;
  out["missing"] = r.missing;
  out["failed_step"] = r.failed_step ? json(*r.failed_step) : json(nullptr);
  out["reason"] = r.reason;
  return out;
}

json projcomplex_to_json(const ProjComplex& c) {
  json terms = json::array();
  if (c.is_zero()) return terms;
  const int n = c.reg().count();
  for (const auto& [k, t] : c.terms()) {
    std::vector<int> mult(n, 0);
    for (int a : t) ++mult[a];
    json o = json::object();
    for (int a = 0; a < n; ++a)
      if (mult[a]) o[c.reg().labels()[a]] = mult[a];
    terms.push_back({{"degree", k}, {"projectives", o}});
  }
  return terms;
}

json tilting_report_to_json(const TiltingReport& r) {
  json out;
  out["status"] = to_string(r.status);
  out["reasons"] = r.reasons;
  out["caps"] = {{"window", r.caps.window},
                 {"degree", r.caps.degree},
                 {"stages", r.caps.stages},
                 {"enum_cap", r.caps.enum_cap},
                 {"max_summands", r.caps.max_summands}};
  json sums = json::array();
  for (std::size_t i = 0; i < r.summands.size(); ++i) {
    json s;
    s["index"] = i;
    s["terms"] = projcomplex_to_json(r.summands[i]);
    if (i < r.history.size()) {
      json h = json::array();
      for (const auto& st : r.history[i]) {
        json z = json::array();
        for (const auto& x : st.z) z.push_back({{"j", x.j}, {"t", x.t}, {"mult", x.mult}});
        h.push_back({{"stage", st.stage}, {"z", z}});
      }
      s["stages"] = h;
    }
    sums.push_back(s);
  }
  out["summands"] = sums;
  out["hom_tables"] = {{"T_T", table_to_json(r.hom_tt)},
                       {"T_X", table_to_json(r.hom_tx)},
                       {"X_T_dual", table_to_json(r.hom_xt)}};
  out["generation"] = r.generation;
  if (r.gamma) {
    json g = algebra_to_json(*r.gamma, r.gamma_registry.get());
    g["cartan"] = r.gamma_cartan;
    g["simple_count"] = r.gamma_registry ? r.gamma_registry->count() : 0;
    g["symmetric_search"] = r.symmetric_search;
    out["gamma"] = g;
  } else {
    out["gamma"] = nullptr;
  }
  return out;
}

json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) bad("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    bad(p.string() + ": malformed JSON: " + e.what());
  }
}

}  // namespace tiltsmith
