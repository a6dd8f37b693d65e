#include "thetaform/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "thetaform/bracket_io.hpp"
#include "thetaform/errors.hpp"
#include "thetaform/random.hpp"

namespace thetaform {

namespace {

using nlohmann::json;

struct Options {
  std::string file;
  int order = 0;
  std::string format = "text";
  bool emit_miura = false;
  bool fast = false;
  int p = 3;
  int d = 3;
  int max_degree = 8;
  std::uint64_t seed = 1;
  int trials = 3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BracketSpecFile load(const Options& opt) {
  BracketSpecFile spec = parse_spec(read_file(opt.file));
  return opt.order > 0 ? spec.with_order(opt.order) : spec;
}

void report_error(const Options& opt, std::ostream& out, std::ostream& err, const std::string& kind,
                  const std::string& message, json extra = json::object()) {
  if (opt.format == "json") {
    json e = {{"kind", kind}, {"message", message}};
    e.update(extra);
    out << json{{"error", e}}.dump(2) << "\n";
  } else {
    err << "error (" << kind << "): " << message << "\n";
  }
}

int cmd_normalize(const Options& opt, std::ostream& out) {
  const BracketSpecFile spec = load(opt);
  const BracketSeries series = spec.series();
  NormalizationResult r;
  if (opt.fast) {
    const auto jacobi = jacobi_check(series);
    if (!jacobi.ok) throw JacobiViolation(*jacobi.violation_degree, "[P, P] does not vanish");
    const auto [c1, c2] = invariants_fast(series);
    r.order = series.order();
    r.invariants = {{1, c1}, {2, c2}};
  } else {
    r = normalize(series);
  }
  if (opt.format == "json") {
    out << result_to_json(r).dump(2) << "\n";
  } else {
    out << result_to_text(r, opt.emit_miura);
  }
  return exit_ok;
}

int cmd_check(const Options& opt, std::ostream& out) {
  const BracketSeries series = load(opt).series();
  const auto report = jacobi_check(series);
  if (opt.format == "json") {
    json j = {{"order", series.order()}};
    j["jacobi"] = report.ok ? json("ok") : json{{"violation_degree", *report.violation_degree}};
    out << j.dump(2) << "\n";
  } else if (report.ok) {
    out << "jacobi ok through degree " << series.order() + 2 << "\n";
  } else {
    out << "jacobi violation at degree " << *report.violation_degree << "\n";
  }
  return report.ok ? exit_ok : exit_jacobi;
}

int cmd_cohomology(const Options& opt, std::ostream& out) {
  if (opt.p < 1 || opt.d < 0) throw std::invalid_argument("need --p >= 1 and --d >= 0");
  const auto full = theta_basis(opt.p, opt.d);
  const auto basis = theta_quotient_basis(opt.p, opt.d);
  const std::size_t by_rank = quotient_dimension_by_rank(opt.p, opt.d);
  if (opt.format == "json") {
    json j = {{"p", opt.p}, {"d", opt.d}, {"dimension", full.size()}, {"quotient_dimension", basis.size()},
              {"rank_nullity", by_rank}};
    j["basis"] = json::array();
    for (const auto& t : basis) j["basis"].push_back(to_string(t.poly()));
    out << j.dump(2) << "\n";
  } else {
    out << "Theta^" << opt.p << "_" << opt.d << ": dimension " << full.size() << "\n";
    out << "quotient by d_x: dimension " << basis.size() << " (rank-nullity " << by_rank << ")\n";
    for (const auto& t : basis) out << "  " << t.poly() << "\n";
  }
  return basis.size() == by_rank ? exit_ok : exit_usage;
}

int cmd_verify_lemmas(const Options& opt, std::ostream& out) {
  const int n = opt.max_degree;
  if (n < 1) throw std::invalid_argument("--max-degree must be >= 1");
  json results = json::array();
  bool all = true;
  auto record = [&](const char* name, int degree, bool ok) {
    all = all && ok;
    results.push_back({{"lemma", name}, {"degree", degree}, {"holds", ok}});
    if (opt.format != "json") out << name << " " << degree << ": " << (ok ? "holds" : "FAILS") << "\n";
  };
  for (int k = 1; k <= n; ++k) record("square", k, verify_square_lemma(k));
  for (int d = 1; d <= n; ++d) record("varder", d, verify_varder_lemma(d));
  for (int d = 1; d <= std::min(n, 9); ++d) record("nontrivial", d, verify_nontrivial_lemma(d));
  for (int d = 1; d <= std::min(n, 9); ++d) record("splitting", d, verify_bockstein_injective(d));
  if (opt.format == "json") out << json{{"results", results}, {"all_hold", all}}.dump(2) << "\n";
  return all ? exit_ok : exit_usage;
}

int cmd_selftest(const Options& opt, std::ostream& out) {
  Rng rng(opt.seed);
  const int order = opt.order > 0 ? opt.order : 5;
  bool all = true;
  for (int trial = 1; trial <= opt.trials; ++trial) {
    const auto c = random_constants(rng, static_cast<std::size_t>(order / 2));
    BracketSeries p = build_normal_form(c, order);
    for (int degree = 1; degree <= std::min(3, order - 1); ++degree) {
      p = miura_apply(random_vector_field(rng, degree, 2, 2), p);
    }
    const auto r = normalize(p);
    const bool ok = r.constants() == c;
    all = all && ok;
    out << "trial " << trial << ": " << (ok ? "recovered" : "MISMATCH") << " c =";
    for (const auto& q : c) out << " " << rational_string(q);
    out << "\n";
  }
  return all ? exit_ok : exit_usage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Normal forms of scalar Poisson brackets in two space variables", "thetaform"};
  app.require_subcommand(1);

  auto* norm = app.add_subcommand("normalize", "Reduce a bracket to normal form and print its invariants");
  norm->add_option("file", opt.file, "Bracket specification file")->required();
  norm->add_option("--order", opt.order, "Truncation order (overrides the file)")->check(CLI::PositiveNumber);
  norm->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
  norm->add_flag("--emit-miura", opt.emit_miura, "List the Miura generators in text output");
  norm->add_flag("--fast", opt.fast, "Closed formulas for c1 and c2 only");

  auto* check = app.add_subcommand("check", "Test the Jacobi identity");
  check->add_option("file", opt.file)->required();
  check->add_option("--order", opt.order)->check(CLI::PositiveNumber);
  check->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  auto* coh = app.add_subcommand("cohomology", "Basis of the quotient of constant x-thetas by d_x");
  coh->add_option("--p", opt.p, "Number of thetas")->required();
  coh->add_option("--d", opt.d, "Degree")->required();
  coh->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  auto* lemmas = app.add_subcommand("verify-lemmas", "Exact checks of the technical lemmas at small degree");
  lemmas->add_option("--max-degree", opt.max_degree)->check(CLI::PositiveNumber);
  lemmas->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  auto* self = app.add_subcommand("selftest", "Normalize random Miura conjugates of normal forms");
  self->add_option("--seed", opt.seed);
  self->add_option("--trials", opt.trials)->check(CLI::PositiveNumber);
  self->add_option("--order", opt.order)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (norm->parsed()) return cmd_normalize(opt, out);
    if (check->parsed()) return cmd_check(opt, out);
    if (coh->parsed()) return cmd_cohomology(opt, out);
    if (lemmas->parsed()) return cmd_verify_lemmas(opt, out);
    return cmd_selftest(opt, out);
  } catch (const JacobiViolation& e) {
    report_error(opt, out, err, e.kind(), e.what(), {{"degree", e.degree()}});
    return exit_jacobi;
  } catch (const ObstructionNonzeroBockstein& e) {
    if (opt.format == "json") {
      json j = {{"order", opt.order}, {"invariants", json::array()}, {"generators", json::array()}, {"jacobi", "ok"}};
      j["obstruction"] = {{"degree", e.degree()}, {"chi", e.chi()}, {"message", e.what()}};
      out << j.dump(2) << "\n";
    } else {
      err << "obstruction: " << e.what() << "\n";
    }
    return exit_obstruction;
  } catch (const Error& e) {
    report_error(opt, out, err, e.kind(), e.what());
    return exit_usage;
  } catch (const std::exception& e) {
    report_error(opt, out, err, "error", e.what());
    return exit_usage;
  }
}

}  // namespace thetaform
