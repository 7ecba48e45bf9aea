#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tb/json_io.hpp"

using namespace tb;

namespace {

struct Outcome {
  Json result;
  int exit_code = 0;
  std::vector<std::string> lines;  // preferred text rendering, if any
};

Json read_payload(const std::string& arg) {
  std::string text;
  if (arg.empty() || arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (arg.front() == '{' || arg.front() == '[') {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open payload file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, "malformed JSON payload", {{"parser", e.what()}});
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("payload is missing '") + key + "'");
  return j.at(key);
}

ConnectedSumExpr base_expr(const Json& j) {
  if (is_profile_json(j)) return from_betti(profile_from_json(j));
  return expr_from_json(j);
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path.empty() ? "value" : path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render_text(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

void emit(const Outcome& o, const std::string& format) {
  if (format == "text") {
    if (!o.lines.empty())
      for (const std::string& l : o.lines) std::cout << l << '\n';
    else
      std::cout << render_text(o.result);
  } else {
    std::cout << o.result.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circle and torus bundles over connected sums"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string payload;
  int k = 1;
  bool cohom4 = false, cohom2 = false, table1 = false, rows = false, twisted = false;
  int bound = 5;

  auto with_payload = [&](CLI::App* sub) { sub->add_option("payload", payload, "Inline JSON, file path, or - for standard input"); };

  CLI::App* normalize = app.add_subcommand("normalize", "Canonical form and Betti profile of a manifold");
  with_payload(normalize);
  CLI::App* bcircle = app.add_subcommand("bundle-circle", "Total space of a circle bundle {base, euler}");
  with_payload(bcircle);
  CLI::App* btorus = app.add_subcommand("bundle-torus", "Total space of a torus bundle {base, E}");
  with_payload(btorus);
  CLI::App* susp = app.add_subcommand("suspend", "Suspension of a summand or sum {base, euler}");
  with_payload(susp);
  susp->add_flag("--twisted", twisted, "Twisted suspension");
  CLI::App* feas = app.add_subcommand("feasible", "Free torus action with form (*) quotient");
  with_payload(feas);
  feas->add_option("--k", k, "Torus rank");
  CLI::App* tower = app.add_subcommand("tower", "Quotient tower realizing a free torus action");
  with_payload(tower);
  tower->add_option("--k", k, "Torus rank");
  CLI::App* classify = app.add_subcommand("classify", "Low cohomogeneity classification");
  with_payload(classify);
  classify->add_flag("--cohom4", cohom4, "Cohomogeneity four");
  classify->add_flag("--cohom2", cohom2, "Cohomogeneity two");
  CLI::App* base = app.add_subcommand("base", "Circle bundle witness for a profile");
  with_payload(base);
  base->add_flag("--table1", table1, "Witness from the tabulated constructions");
  base->add_flag("--rows", rows, "List the tabulated constructions");
  CLI::App* stab = app.add_subcommand("stabilize", "Least stabilization index with circle bundle realizations");
  with_payload(stab);
  stab->add_flag("--twisted", twisted, "Twisted target");
  CLI::App* self = app.add_subcommand("selftest", "Acceptance criteria and exhaustive table sweep");
  self->add_option("--bound", bound, "Sweep bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_to_json(Error(ErrorCode::InvalidInput, e.what())).dump(2) << '\n';
    return exit_code_for(ErrorCode::InvalidInput);
  }

  try {
    Outcome o;
    if (normalize->parsed()) {
      const Json j = read_payload(payload);
      if (is_profile_json(j)) {
        const BettiProfile p = profile_from_json(j);
        o.result = Json{{"canonical", expr_to_json(from_betti(p))}, {"profile", profile_to_json(p)}};
      } else {
        const ConnectedSumExpr e = expr_from_json(j);
        o.result = Json{{"canonical", expr_to_json(canonicalize(e))}, {"profile", profile_to_json(betti_profile(e))}};
      }
    } else if (bcircle->parsed()) {
      const Json j = read_payload(payload);
      const BettiProfile p = circle_bundle(base_expr(member(j, "base")), vec_from_json(member(j, "euler")));
      o.result = profile_to_json(p);
    } else if (btorus->parsed()) {
      const Json j = read_payload(payload);
      const Json& b = member(j, "base");
      const IntMat E = mat_from_json(member(j, "E"));
      if (b.is_object() && b.contains("b2")) {
        o.result = Json{{"total", profile_to_json(torus_bundle_over_4(four_from_json(b), E))}};
      } else {
        const BundleResult r = torus_bundle(base_expr(b), E);
        Json stages = Json::array();
        for (const BettiProfile& s : r.stages) stages.push_back(profile_to_json(s));
        o.result = Json{{"total", profile_to_json(r.total)}, {"stages", stages}};
      }
    } else if (susp->parsed()) {
      const Json j = read_payload(payload);
      const Json& b = member(j, "base");
      const IntVec e = vec_from_json(member(j, "euler"));
      if (b.contains("summands"))
        o.result = expr_to_json(suspend(expr_from_json(b), e, twisted));
      else
        o.result = expr_to_json(suspend(summand_from_json(b, b.value("n", 0)), e, twisted));
    } else if (feas->parsed()) {
      const FeasibilityReport r = free_torus_feasible(any_profile_from_json(read_payload(payload)), k);
      o.result = report_to_json(r);
      o.exit_code = r.verdict ? 0 : 1;
    } else if (tower->parsed()) {
      o.result = tower_to_json(quotient_tower(any_profile_from_json(read_payload(payload)), k));
    } else if (classify->parsed()) {
      if (cohom4 == cohom2) throw Error(ErrorCode::InvalidInput, "classify needs exactly one of --cohom4 or --cohom2");
      const BettiProfile M = any_profile_from_json(read_payload(payload));
      if (cohom4) {
        const std::optional<Cohom4Witness> w = cohom4_classify(M);
        o.result = Json{{"accepted", w.has_value()}, {"witness", w ? cohom4_to_json(*w) : Json(nullptr)}};
        o.exit_code = w ? 0 : 1;
      } else {
        const bool ok = cohom2_check(M);
        o.result = Json{{"accepted", ok}};
        o.exit_code = ok ? 0 : 1;
      }
    } else if (base->parsed()) {
      if (rows) {
        o.result = rows_to_json(table1_rows());
      } else {
        if (!table1) throw Error(ErrorCode::InvalidInput, "base needs --table1 or --rows");
        const std::optional<CircleWitness> w = table1_base(any_profile_from_json(read_payload(payload)));
        o.result = Json{{"found", w.has_value()}, {"witness", w ? witness_to_json(*w) : Json(nullptr)}};
        o.exit_code = w ? 0 : 1;
      }
    } else if (stab->parsed()) {
      o.result = stabilization_to_json(stabilization_m0(any_profile_from_json(read_payload(payload)), twisted));
    } else if (self->parsed()) {
      const std::vector<CriterionResult> acc = run_acceptance();
      const SweepReport sweep = exhaustive_row_sweep(bound);
      bool pass = sweep.counterexamples.empty();
      for (const CriterionResult& r : acc) {
        pass = pass && r.pass;
        o.lines.push_back(format_line(r));
      }
      o.lines.push_back(std::string(sweep.counterexamples.empty() ? "[PASS]" : "[FAIL]") + " sweep bound " +
                        std::to_string(bound) + ": " + std::to_string(sweep.cases) + " profiles, " +
                        std::to_string(sweep.counterexamples.size()) + " counterexamples");
      for (const std::string& c : sweep.counterexamples) o.lines.push_back("  " + c);
      o.result = Json{{"pass", pass}, {"criteria", acceptance_to_json(acc)}, {"sweep", sweep_to_json(sweep)}};
      o.exit_code = pass ? 0 : 1;
    }
    emit(o, format);
    return o.exit_code;
  } catch (const Error& e) {
    std::cout << error_to_json(e).dump(2) << '\n';
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    std::cout << error_to_json(Error(ErrorCode::InvalidInput, std::string("bad payload: ") + e.what())).dump(2) << '\n';
    return exit_code_for(ErrorCode::InvalidInput);
  }
}
