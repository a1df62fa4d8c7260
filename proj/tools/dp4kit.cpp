#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dp4kit/census.hpp"
#include "dp4kit/error.hpp"
#include "dp4kit/io.hpp"

using namespace dp4kit;

namespace {

struct Common {
  std::uint64_t p = 0;
  int k = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  bool force = false;
  bool tsv = false;
  bool timing = false;
  std::string out;
};

using Table = std::vector<std::vector<std::string>>;

void emit(const Common& c, const Json& j, const Table& tsv = {}) {
  std::ostringstream os;
  if (c.tsv && !tsv.empty()) {
    for (const auto& row : tsv) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
      os << "\n";
    }
  } else {
    os << j.dump(2) << "\n";
  }
  if (c.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ValidationError("cannot write " + c.out);
  f << os.str();
}

Json header(const char* command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

FieldSpec field_of(const Common& c) {
  if (c.p == 0) return FieldSpec::rationals();
  return c.k == 1 ? FieldSpec::prime(c.p) : FieldSpec::extension(c.p, c.k);
}

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

// TSV rows from an array of flat JSON objects, columns in the given order.
Table rows_table(const Json& rows, const std::vector<std::string>& cols) {
  Table t{cols};
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (const auto& c : cols) line.push_back(r.contains(c) && !r.at(c).is_null() ? str(r.at(c)) : "");
    t.push_back(line);
  }
  return t;
}

int error_exit(const std::string& kind, const std::string& msg, int code) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"kind", kind}, {"message", msg}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dp4kit: quartic del Pezzo surfaces and fibrations over P^1, in exact arithmetic"};
  app.require_subcommand(1);
  Common c;
  auto add_output = [&](CLI::App* s) {
    s->add_option("-o,--output", c.out, "Write the result to a file instead of stdout");
    s->add_flag("--tsv", c.tsv, "Tab-separated output where a table exists");
  };
  auto add_field = [&](CLI::App* s) {
    s->add_option("--p", c.p, "Characteristic (0 for Q)");
    s->add_option("--k", c.k, "Extension degree")->check(CLI::Range(1, 30));
  };

  // classify
  std::string file;
  auto* classify = app.add_subcommand(
      "classify",
      "GIT class of the surface {Q0 = Q1 = 0}: stable iff the determinantal quintic det(s0 Q0 + s1 Q1) is "
      "squarefree; strictly semistable when the surface has ordinary nodes only.");
  classify->add_option("pencil", file, "Pencil JSON")->required();
  add_output(classify);

  int ext = 1;
  auto* lines = app.add_subcommand(
      "lines", "Lines on the surface defined over F_{q^k}; a smooth surface has 16 over the closure.");
  lines->add_option("pencil", file, "Pencil JSON")->required();
  lines->add_option("--ext", ext, "Extension degree k")->check(CLI::Range(1, 8));
  lines->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 256));
  add_output(lines);

  auto* invariants = app.add_subcommand(
      "invariants", "Invariants I4, I8, I12 of a binary quintic and its point [I4 : I8 : I12] of P(1,2,3).");
  invariants->add_option("quintic", file, "Quintic JSON (6 coefficients)")->required();
  add_field(invariants);
  add_output(invariants);

  auto* xi = app.add_subcommand(
      "xi", "Moduli point of a pencil: the invariants of its determinantal quintic in P(1,2,3).");
  xi->add_option("pencil", file, "Pencil JSON")->required();
  add_output(xi);

  std::string table;
  std::vector<std::string> exprs;
  auto* lattice = app.add_subcommand(
      "lattice",
      "Without --table: the D5 lattice data of a quartic del Pezzo surface (|W(D5)| = 1920, 16 exceptional "
      "classes, discriminant group of K-perp).  With --table: pairings of classes in a Gram table.");
  lattice->add_option("--table", table, "Gram table JSON");
  lattice->add_option("--expr", exprs, "Class expression such as \"2h - C + R'\"");
  add_output(lattice);

  int height = -1, h11 = 2;
  bool all = false;
  auto* numer = app.add_subcommand(
      "numerology",
      "Invariants of a fibration of height h with square-free discriminant: singular fibers delta = 2h, "
      "chi(X) = 16 - 2h, chi(Omega^1) = h - 7, expected parameters (3/2) h - 1.");
  numer->add_option("--height", height, "Height h (even, >= 0)");
  numer->add_option("--h11", h11, "h^{1,1} of the total space")->check(CLI::Range(2, 100));
  numer->add_flag("--all", all, "Heights 0, 2, ..., 42");
  add_output(numer);

  int n = 0;
  auto* cases = app.add_subcommand(
      "cases",
      "The complete-intersection constructions by number of (1,1) forms and parity, with the splitting "
      "types of pi_* O(0,1) and pi_* omega^{-1} and the height 20n + offset.");
  cases->add_option("--n", n, "Twist parameter n");
  add_output(cases);

  int case_no = 1;
  std::string parity = "even";
  auto* generate = app.add_subcommand(
      "generate",
      "Random model of the given case over F_q with square-free discriminant of degree 2h, "
      "determined by --seed.");
  generate->add_option("--case", case_no, "Case 1..5")->check(CLI::Range(1, 5));
  generate->add_option("--parity", parity, "even or odd");
  generate->add_option("--n", n, "Twist parameter n");
  generate->add_option("--seed", c.seed, "Seed for the generator (mt19937_64)");
  add_field(generate);
  add_output(generate);

  std::string tval;
  auto* fiber = app.add_subcommand("fiber", "The fiber over t as a pencil in P^4, its class and point count.");
  fiber->add_option("model", file, "Model JSON")->required();
  fiber->add_option("--t", tval, "Base point: a field element or \"inf\"")->required();
  fiber->add_option("--k", c.k, "Count points over F_{q^k}")->check(CLI::Range(1, 6));
  fiber->add_flag("--force", c.force, "Ignore the evaluation budget");
  add_output(fiber);

  auto* disc = app.add_subcommand(
      "discriminant",
      "Discriminant Delta(t) of the fibration: degree counted on P^1, compared with 2h, and squarefreeness.");
  disc->add_option("model", file, "Model JSON")->required();
  add_output(disc);

  int deg = 0;
  bool no_fibers = false, no_sections = false;
  auto* census = app.add_subcommand(
      "census",
      "Point counts of every fiber over F_{q^k} and exhaustive search for sections of degree <= d, with "
      "anticanonical heights alpha + d.");
  census->add_option("model", file, "Model JSON")->required();
  census->add_option("--deg", deg, "Section degree bound")->check(CLI::Range(0, 8));
  census->add_option("--k", c.k, "Fiber counts over F_{q^k}")->check(CLI::Range(1, 6));
  census->add_option("--threads", c.threads, "Worker threads for the section search")->check(CLI::Range(1, 256));
  census->add_flag("--force", c.force, "Ignore the evaluation budget");
  census->add_flag("--no-fibers", no_fibers, "Skip fiber counts");
  census->add_flag("--no-sections", no_sections, "Skip the section search");
  census->add_flag("--timing", c.timing, "Include elapsed time (output is then not reproducible)");
  add_output(census);

  int kmax = 1;
  auto* basepts = app.add_subcommand(
      "basepoints",
      "Common zeros of four quadrics in P^4 over F_{q^k}, k <= kmax (at most 16); for Y = P1 Q2 - Q1 P2 "
      "these are the nodes.");
  basepts->add_option("quadrics", file, "Quadrics JSON")->required();
  basepts->add_option("--kmax", kmax, "Largest extension degree")->check(CLI::Range(1, 8));
  add_output(basepts);

  long long rr_deg = 0, rr_genus = 0, rr_k = 4;
  auto* rr = app.add_subcommand(
      "rrcount",
      "Quartics in P^3 through a curve of given degree and genus, expected: C(k+3,3) - (k deg + 1 - g).");
  rr->add_option("--deg", rr_deg, "Degree of the curve")->required();
  rr->add_option("--genus", rr_genus, "Genus of the curve")->required();
  rr->add_option("--k", rr_k, "Degree of the surfaces");
  add_output(rr);

  auto* fig = app.add_subcommand(
      "figure1",
      "Degree one sections of a case 1 odd n = 0 model X = Bl_C(Q): lines in Q over F_q meeting C once "
      "(secancy 2d - 1 = 1).");
  fig->add_option("model", file, "Model JSON")->required();
  fig->add_flag("--force", c.force, "Ignore the evaluation budget");
  add_output(fig);

  auto* dims = app.add_subcommand(
      "expected-dims", "Dimension counts for the nodal quartic constructions at heights 16, 18 and 20.");
  add_output(dims);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_exit("usage", e.what(), 2);
  }

  try {
    if (*classify) {
      Json j = header("classify");
      j["verdict"] = verdict_to_json(classify_stability(pencil_from_json(read_json_file(file))));
      emit(c, j);
    } else if (*lines) {
      const auto ls = lines_on_surface(pencil_from_json(read_json_file(file)), ext, c.threads);
      Json j = header("lines");
      j["k"] = ext;
      j["count"] = ls.size();
      Json arr = Json::array();
      Table t{{"p", "q"}};
      for (const auto& l : ls) {
        arr.push_back(line_to_json(l));
        t.push_back({vec_to_json(l.p).dump(), vec_to_json(l.q).dump()});
      }
      j["lines"] = arr;
      emit(c, j, t);
    } else if (*invariants) {
      const BinaryForm f = quintic_from_json(read_json_file(file), field_of(c));
      const InvariantVector v = invariants_quintic(f);
      Json j = header("invariants");
      j["field"] = field_to_json(f.field());
      j["I4"] = element_to_json(v.I4);
      j["I8"] = element_to_json(v.I8);
      j["I12"] = element_to_json(v.I12);
      j["moduli"] = moduli_point_to_json(moduli_point(v));
      emit(c, j);
    } else if (*xi) {
      const QuadricPencil p = pencil_from_json(read_json_file(file));
      Json j = header("xi");
      j["quintic"] = binary_form_to_json(determinantal_quintic(p));
      j["xi"] = moduli_point_to_json(xi_of_pencil(p));
      emit(c, j);
    } else if (*lattice) {
      Json j = header("lattice");
      Table t;
      if (table.empty()) {
        if (!exprs.empty()) throw ValidationError("--expr needs --table");
        j["weyl_order"] = weyl_group().size();
        Json ex = Json::array();
        for (const auto& e : exceptional_classes()) ex.push_back(to_string(e));
        j["exceptional_classes"] = ex;
        j["discriminant_group"] = discriminant_group(lambda_gram()).name();
        j["K_squared"] = pairing(canonical_class(), canonical_class());
        t = {{"weyl_order", std::to_string(weyl_group().size())},
             {"exceptional_classes", std::to_string(ex.size())},
             {"discriminant_group", j["discriminant_group"].get<std::string>()},
             {"K_squared", std::to_string(j["K_squared"].get<int>())}};
      } else {
        const GramTable g = gram_from_json(read_json_file(table));
        j["labels"] = g.labels;
        Json rows = Json::array();
        std::vector<std::string> head{"expr", "self"};
        head.insert(head.end(), g.labels.begin(), g.labels.end());
        t.push_back(head);
        for (const auto& e : exprs) {
          const ClassReport r = k3_class_arith(g, e);
          Json row;
          row["expr"] = e;
          row["coefficients"] = r.coefficients;
          row["self"] = r.self_intersection;
          row["pairings"] = r.pairings;
          if (r.genus) row["genus"] = *r.genus;
          rows.push_back(row);
          std::vector<std::string> tr{e, std::to_string(r.self_intersection)};
          for (auto v : r.pairings) tr.push_back(std::to_string(v));
          t.push_back(tr);
        }
        j["classes"] = rows;
      }
      emit(c, j, t);
    } else if (*numer) {
      if (all == (height >= 0)) throw ValidationError("give exactly one of --height and --all");
      const std::vector<std::string> cols{"h", "delta", "chi", "chiOmega1", "params"};
      if (all) {
        Json j = header("numerology");
        Json rows = Json::array();
        for (int h = 0; h <= 42; h += 2) rows.push_back(numerology_to_json(numerology(h, h11)));
        j["rows"] = rows;
        emit(c, j, rows_table(rows, cols));
      } else {
        const Json j = numerology_to_json(numerology(height, h11));
        emit(c, j, rows_table(Json::array({j}), cols));
      }
    } else if (*cases) {
      Json j = header("cases");
      j["n"] = n;
      j["rows"] = cases_to_json(n);
      emit(c, j,
           rows_table(j["rows"], {"case", "parity", "linear_forms", "height", "height_at_n", "alpha", "V", "W"}));
    } else if (*generate) {
      if (c.p == 0) throw ValidationError("generate needs a finite field (--p)");
      emit(c, model_to_json(generate_model(parse_case(case_no, parity, n), field_of(c), c.seed)));
    } else if (*fiber) {
      const FibrationModel m = model_from_json(read_json_file(file));
      FieldElement t0 = FieldElement::one(m.field), t1 = FieldElement::one(m.field);
      if (tval == "inf") {
        t1 = FieldElement::zero(m.field);
      } else {
        t0 = FieldElement::parse(m.field, tval);
      }
      const QuadricPencil p = fiber_at(m, t0, t1);
      Json j = header("fiber");
      j["t"] = Json::array({element_to_json(t0), element_to_json(t1)});
      j["pencil"] = pencil_to_json(p);
      j["verdict"] = verdict_to_json(classify_stability(p));
      if (m.field.is_finite()) {
        j["k"] = c.k;
        j["count"] = fiber_point_count(m, t0, t1, c.k, 0, c.force);
      }
      emit(c, j);
    } else if (*disc) {
      const FibrationModel m = model_from_json(read_json_file(file));
      Json j = header("discriminant");
      j.update(discriminant_to_json(m, discriminant_profile(m)));
      emit(c, j);
    } else if (*census) {
      const FibrationModel m = model_from_json(read_json_file(file));
      CensusOptions o;
      o.degree = deg;
      o.k = c.k;
      o.threads = c.threads;
      o.force = c.force;
      o.fiber_counts = !no_fibers;
      o.sections = !no_sections;
      Json j = header("census");
      j.update(census_to_json(m, run_census(m, o), o, c.timing));
      Table t{{"t0", "t1", "count", "singular"}};
      for (const auto& f : j["fibers"])
        t.push_back({str(f["t"][0]), str(f["t"][1]), str(f["count"]), f["singular"].get<bool>() ? "1" : "0"});
      emit(c, j, t);
    } else if (*basepts) {
      Json j = header("basepoints");
      j["kmax"] = kmax;
      j.update(base_points_to_json(base_points(quadrics_from_json(read_json_file(file)), kmax)));
      Table t{{"field_degree", "coords"}};
      for (const auto& p : j["points"]) t.push_back({str(p["field_degree"]), p["coords"].dump()});
      emit(c, j, t);
    } else if (*rr) {
      Json j = header("rrcount");
      j["deg"] = rr_deg;
      j["genus"] = rr_genus;
      j["k"] = rr_k;
      j["count"] = rr_quartic_count(rr_deg, rr_genus, rr_k);
      emit(c, j);
    } else if (*fig) {
      const FibrationModel m = model_from_json(read_json_file(file));
      Json j = header("figure1");
      j.update(figure1_to_json(m, figure1_d1_check(m, 0, c.force)));
      emit(c, j);
    } else if (*dims) {
      Json j = header("expected-dims");
      j["rows"] = expected_dims_to_json();
      emit(c, j,
           rows_table(j["rows"], {"h", "m", "ambient", "y_degree", "contracted_sections", "params", "y_dim",
                                  "family_dim"}));
    }
  } catch (const BudgetError& e) {
    return error_exit("budget", e.what(), 3);
  } catch (const ValidationError& e) {
    return error_exit("validation", e.what(), 2);
  } catch (const MathError& e) {
    return error_exit("math", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return error_exit("validation", e.what(), 2);
  } catch (const std::exception& e) {
    return error_exit("internal", e.what(), 1);
  }
  return 0;
}
