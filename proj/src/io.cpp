#include "dp4kit/io.hpp"

#include <fstream>

#include "dp4kit/error.hpp"

namespace dp4kit {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

long long need_int(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer()) throw ValidationError(std::string("\"") + key + "\" must be an integer");
  return v.get<long long>();
}

const Json& need_array(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || (n && j.size() != n))
    throw ValidationError(std::string(what) + " must be an array" + (n ? " of length " + std::to_string(n) : ""));
  return j;
}

}  // namespace

Json field_to_json(const FieldSpec& f) {
  Json j;
  j["p"] = f.is_finite() ? f.characteristic() : 0;
  j["k"] = f.is_finite() ? f.degree() : 1;
  if (f.kind() == FieldKind::extension) j["modulus"] = f.modulus();
  return j;
}

FieldSpec field_from_json(const Json& j) {
  const long long p = need_int(j, "p");
  const long long k = j.contains("k") ? need_int(j, "k") : 1;
  if (p < 0 || k < 1 || k > 62) throw ValidationError("invalid field parameters");
  if (p == 0) {
    if (k != 1) throw ValidationError("Q has no extensions here");
    return FieldSpec::rationals();
  }
  FieldSpec f = k == 1 ? FieldSpec::prime(p) : FieldSpec::extension(p, static_cast<int>(k));
  if (j.contains("modulus") && j.at("modulus").get<std::vector<std::uint64_t>>() != f.modulus())
    throw ValidationError("modulus differs from the canonical one for " + f.name());
  return f;
}

Json element_to_json(const FieldElement& x) {
  if (x.field().is_finite()) return x.index();
  const mpq_class& r = x.rational();
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return r.get_str();
}

FieldElement element_from_json(const FieldSpec& f, const Json& j) {
  if (j.is_number_integer()) {
    if (f.kind() == FieldKind::extension) {
      if (j.is_number_unsigned() || j.get<long long>() >= 0) return FieldElement::from_index(f, j.get<std::uint64_t>());
      throw ValidationError("extension field elements are packed indices");
    }
    return FieldElement(f, j.get<std::int64_t>());
  }
  if (j.is_string()) return FieldElement::parse(f, j.get<std::string>());
  throw ValidationError("field element must be an integer or a string");
}

Json vec_to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(element_to_json(x));
  return j;
}

Vec vec_from_json(const FieldSpec& f, const Json& j) {
  need_array(j, 0, "vector");
  Vec v;
  for (const auto& e : j) v.push_back(element_from_json(f, e));
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(vec_to_json(m.row(i)));
  return j;
}

Matrix matrix_from_json(const FieldSpec& f, const Json& j) {
  need_array(j, 0, "matrix");
  std::vector<Vec> rows;
  for (const auto& r : j) {
    rows.push_back(vec_from_json(f, r));
    if (rows.back().size() != rows.front().size()) throw ValidationError("ragged matrix");
  }
  if (rows.empty()) throw ValidationError("empty matrix");
  return Matrix::from_rows(f, rows);
}

Json pencil_to_json(const QuadricPencil& p) {
  Json j;
  j["schema"] = kSchema;
  j["field"] = field_to_json(p.field());
  j["Q0"] = matrix_to_json(p.A);
  j["Q1"] = matrix_to_json(p.B);
  return j;
}

QuadricPencil pencil_from_json(const Json& j) {
  const FieldSpec f = field_from_json(need(j, "field"));
  return make_pencil(matrix_from_json(f, need(j, "Q0")), matrix_from_json(f, need(j, "Q1")));
}

BinaryForm quintic_from_json(const Json& j, const FieldSpec& default_field) {
  FieldSpec f = default_field;
  const Json* c = &j;
  if (j.is_object()) {
    f = field_from_json(need(j, "field"));
    c = &need(j, "coeffs");
  }
  need_array(*c, 6, "quintic coefficients");
  return BinaryForm(f, vec_from_json(f, *c));
}

Json binary_form_to_json(const BinaryForm& f) {
  Json j;
  j["field"] = field_to_json(f.field());
  j["coeffs"] = vec_to_json(f.coeffs());
  return j;
}

Json unipoly_to_json(const UniPoly& p) {
  Json j;
  j["var"] = p.var();
  j["coeffs"] = vec_to_json(p.coeffs());
  return j;
}

Json multipoly_to_json(const MultiPoly& p) {
  Json j;
  j["vars"] = p.vars();
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json::array({m, element_to_json(c)}));
  j["terms"] = terms;
  return j;
}

MultiPoly multipoly_from_json(const FieldSpec& f, const Json& j) {
  const auto vars = need(j, "vars").get<std::vector<std::string>>();
  MultiPoly p(f, vars);
  for (const auto& t : need_array(need(j, "terms"), 0, "terms")) {
    need_array(t, 2, "term");
    const auto m = t[0].get<Monomial>();
    if (m.size() != vars.size()) throw ValidationError("monomial length differs from the variable count");
    for (int e : m)
      if (e < 0) throw ValidationError("negative exponent");
    p.add_term(m, element_from_json(f, t[1]));
  }
  return p;
}

Json model_to_json(const FibrationModel& m) {
  Json j;
  j["schema"] = kSchema;
  j["case"] = m.spec.case_no;
  j["parity"] = m.spec.parity_name();
  j["n"] = m.spec.n;
  j["field"] = field_to_json(m.field);
  j["seed"] = m.seed;
  j["N"] = m.N;
  j["weights"] = m.weights;
  j["alpha"] = m.alpha;
  j["deg_a"] = m.deg_a;
  j["deg_b"] = m.deg_b;
  j["retries"] = m.retries;
  Json forms = Json::array();
  for (const auto& l : m.linear) {
    Json f = multipoly_to_json(l);
    f["role"] = "linear";
    forms.push_back(f);
  }
  Json a = multipoly_to_json(m.qa);
  a["role"] = "qa";
  forms.push_back(a);
  Json b = multipoly_to_json(m.qb);
  b["role"] = "qb";
  forms.push_back(b);
  j["forms"] = forms;
  return j;
}

FibrationModel model_from_json(const Json& j) {
  FibrationModel m;
  const Json& par = need(j, "parity");
  if (!par.is_string()) throw ValidationError("\"parity\" must be \"even\" or \"odd\"");
  m.spec = parse_case(static_cast<int>(need_int(j, "case")), par.get<std::string>(), static_cast<int>(need_int(j, "n")));
  m.field = field_from_json(need(j, "field"));
  m.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
  m.N = static_cast<int>(need_int(j, "N"));
  if (m.N < 4 || m.N > 12) throw ValidationError("N out of range");
  m.weights = need(j, "weights").get<std::vector<int>>();
  m.alpha = static_cast<int>(need_int(j, "alpha"));
  m.deg_a = static_cast<int>(need_int(j, "deg_a"));
  m.deg_b = static_cast<int>(need_int(j, "deg_b"));
  m.retries = j.contains("retries") ? static_cast<int>(need_int(j, "retries")) : 0;
  const auto vars = model_vars(m.N);
  bool have_a = false, have_b = false;
  for (const auto& f : need_array(need(j, "forms"), 0, "forms")) {
    MultiPoly p = multipoly_from_json(m.field, f);
    if (p.vars() != vars) throw ValidationError("form variables must be t0, t1, x0..xN");
    const std::string role = need(f, "role").get<std::string>();
    if (role == "linear") {
      m.linear.push_back(p);
    } else if (role == "qa" && !have_a) {
      m.qa = p;
      have_a = true;
    } else if (role == "qb" && !have_b) {
      m.qb = p;
      have_b = true;
    } else {
      throw ValidationError("unexpected form role \"" + role + "\"");
    }
  }
  if (!have_a || !have_b) throw ValidationError("model needs forms with roles qa and qb");
  validate_model(m);
  return m;
}

Json gram_to_json(const GramTable& t) {
  Json j;
  j["labels"] = t.labels;
  j["gram"] = t.gram;
  return j;
}

GramTable gram_from_json(const Json& j) {
  GramTable t;
  try {
    t.labels = need(j, "labels").get<std::vector<std::string>>();
    t.gram = need(j, "gram").get<IntMatrix>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed Gram table: ") + e.what());
  }
  validate(t);
  return t;
}

std::vector<Matrix> quadrics_from_json(const Json& j) {
  const FieldSpec f = field_from_json(need(j, "field"));
  std::vector<Matrix> out;
  for (const auto& q : need_array(need(j, "quadrics"), 4, "quadrics")) {
    Matrix m = matrix_from_json(f, q);
    if (m.rows() != 5 || m.cols() != 5 || !m.is_symmetric())
      throw ValidationError("quadrics must be symmetric 5x5 matrices");
    out.push_back(m);
  }
  return out;
}

Json section_to_json(const SectionCandidate& s) {
  Json j;
  j["degree"] = s.degree;
  Json c = Json::array();
  for (const auto& v : s.coeffs) c.push_back(vec_to_json(v));
  j["coeffs"] = c;
  return j;
}

Json line_to_json(const Line& l) { return Json::array({vec_to_json(l.p), vec_to_json(l.q)}); }

Json singular_point_to_json(const SingularPoint& s) {
  Json j;
  j["coords"] = vec_to_json(s.coords);
  j["field_degree"] = s.field_degree;
  j["ordinary"] = s.ordinary;
  return j;
}

Json verdict_to_json(const StabilityVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["partition"] = v.partition;
  Json s = Json::array();
  for (const auto& p : v.singular) s.push_back(singular_point_to_json(p));
  j["singular"] = s;
  j["positive_dimensional"] = v.positive_dimensional;
  j["single_node"] = v.single_node();
  return j;
}

Json moduli_point_to_json(const WeightedModuliPoint& w) {
  return Json::array({element_to_json(w.a), element_to_json(w.b), element_to_json(w.c)});
}

Json numerology_to_json(const NumerologyReport& r) {
  Json j;
  j["h"] = r.h;
  j["delta"] = r.delta;
  j["chi"] = r.chi;
  j["chiOmega1"] = r.chi_omega1;
  j["params"] = r.params;
  return j;
}

Json cases_to_json(int n) {
  Json rows = Json::array();
  for (int cn = 1; cn <= 5; ++cn)
    for (int par = 0; par <= 1; ++par) {
      const CaseSpec cs{cn, par, n};
      const CaseSplitting s = case_splitting(cs);
      const int off = case_height_formula(CaseSpec{cn, par, 0});
      Json r;
      r["case"] = cn;
      r["parity"] = cs.parity_name();
      r["linear_forms"] = cs.linear_forms();
      r["height"] = off ? "20n+" + std::to_string(off) : "20n";
      r["height_at_n"] = s.height;
      r["alpha"] = s.alpha;
      r["V"] = s.V.to_string();
      r["W"] = s.W.to_string();
      r["constructible"] = is_constructible(cs);
      rows.push_back(r);
    }
  return rows;
}

Json discriminant_to_json(const FibrationModel& m, const DiscriminantProfile& d) {
  Json j;
  j["delta"] = unipoly_to_json(d.delta);
  j["ord_infinity"] = d.ord_infinity;
  j["projective_degree"] = d.projective_degree;
  j["expected_degree"] = d.expected_degree;
  j["height"] = case_splitting(m.spec).height;
  j["nonzero"] = d.nonzero;
  j["squarefree"] = d.squarefree;
  j["factor_degrees"] = d.delta.is_zero() ? std::vector<int>{} : irreducible_factor_degrees(d.delta);
  return j;
}

Json census_to_json(const FibrationModel& m, const CensusReport& r, const CensusOptions& o, bool timing) {
  Json j;
  j["model"] = {{"case", m.spec.case_no}, {"parity", m.spec.parity_name()}, {"n", m.spec.n}, {"seed", m.seed}};
  j["field"] = field_to_json(m.field);
  j["k"] = o.k;
  Json fibers = Json::array();
  for (const auto& f : r.fibers)
    fibers.push_back({{"t", Json::array({element_to_json(f.t0), element_to_json(f.t1)})},
                      {"count", f.count},
                      {"singular", f.singular}});
  j["fibers"] = fibers;
  j["degree_bound"] = o.degree;
  j["search_space"] = r.search_space;
  Json secs = Json::array();
  for (const auto& s : r.sections) {
    Json e = section_to_json(s.section);
    e["height"] = s.height;
    secs.push_back(e);
  }
  j["sections"] = secs;
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json base_points_to_json(const BasePointResult& r) {
  Json j;
  j["count"] = r.points.size();
  j["multiplicity_free"] = r.multiplicity_free;
  j["geometric_points"] = r.geometric_points;
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back({{"coords", vec_to_json(p.coords)}, {"field_degree", p.field_degree}});
  j["points"] = pts;
  return j;
}

Json figure1_to_json(const FibrationModel& m, const Figure1Result& r) {
  Json j;
  j["field"] = field_to_json(m.field);
  j["lines_in_quadric"] = r.lines_in_quadric;
  j["disjoint"] = r.disjoint;
  j["bisecant"] = r.bisecant;
  j["secancy"] = 1;
  Json acc = Json::array();
  for (const auto& a : r.accepted)
    acc.push_back({{"line", line_to_json(a.line)},
                   {"incidence", vec_to_json(a.incidence)},
                   {"section", section_to_json(a.section)},
                   {"height", section_height(m, a.section)}});
  j["accepted"] = acc;
  j["count"] = r.accepted.size();
  j["all_verified"] = r.all_verified;
  return j;
}

Json expected_dims_to_json() {
  Json rows = Json::array();
  for (const auto& r : expected_dims_high_height()) {
    Json row;
    row["h"] = r.h;
    row["m"] = r.m;
    row["ambient"] = r.ambient;
    row["y_degree"] = r.y_degree;
    row["contracted_sections"] = r.contracted_sections;
    row["params"] = r.params;
    row["y_dim"] = r.y_dim ? Json(*r.y_dim) : Json();
    row["family_dim"] = r.family_dim ? Json(*r.family_dim) : Json();
    row["y_formula"] = r.y_formula;
    rows.push_back(row);
  }
  return rows;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace dp4kit
