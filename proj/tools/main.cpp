#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fukaya/datasets.hpp"
#include "fukaya/errors.hpp"
#include "fukaya/json_io.hpp"
#include "fukaya/suites.hpp"
#include "fukaya/toric.hpp"

namespace {

using namespace fukaya;

void print_report(const Report& r) {
  std::cout << r.summary_line() << "\n";
  for (const auto& c : r.cases) {
    if (c.status == CaseStatus::Pass) continue;
    std::cout << "  " << status_name(c.status) << " " << c.id << "  dev=" << c.max_dev;
    if (!c.lhs.empty()) std::cout << "  lhs: " << c.lhs;
    if (!c.rhs.empty()) std::cout << "  rhs: " << c.rhs;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
}

void write_reports(const std::string& path, const std::vector<Report>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write report to '" + path + "'");
  out << Json{{"reports", std::move(arr)}}.dump(2) << "\n";
}

struct UserDatasets {
  std::string category_path;
  std::string fiber_path;
  std::string point_path;
  std::string isotopy_path;
};

int run_verify(const std::string& suite, const SuiteOptions& opts, const UserDatasets& user,
               const std::string& out_path) {
  std::vector<Report> reports = run_suite(suite, opts);
  if (!user.category_path.empty()) {
    reports.push_back(run_user_category(load_json_file(user.category_path), opts));
  }
  if (!user.fiber_path.empty()) {
    std::optional<Json> point;
    if (!user.point_path.empty()) point = load_json_file(user.point_path);
    reports.push_back(run_user_fiber(load_json_file(user.fiber_path), point, opts));
  }
  if (!user.isotopy_path.empty()) {
    reports.push_back(run_user_isotopy(load_json_file(user.isotopy_path), opts));
  }
  bool ok = true;
  for (const auto& r : reports) {
    print_report(r);
    ok = ok && r.all_passed();
  }
  if (!out_path.empty()) write_reports(out_path, reports);
  return ok ? 0 : 1;
}

int run_potential(const std::string& polytope_path, const std::string& builtin_name,
                  const std::string& point_path, int tau_count, RingConfig cfg, bool n_given,
                  const std::string& out_path) {
  Json point_json;
  FiberAlgebra alg = [&] {
    if (!builtin_name.empty()) {
      BuiltinDataset ds = builtin_dataset(builtin_name);
      if (!n_given) cfg = RingConfig(cfg.cutoff, cfg.tol, ds.n);
      if (ds.kind == "polytope") return cho_oh_classes(polytope_from_json(ds.data));
      if (ds.kind == "fiber") {
        if (ds.data.contains("point")) point_json = ds.data.at("point");
        return fiber_from_json(ds.data);
      }
      throw ValidationError("builtin '" + builtin_name + "' is not a potential dataset");
    }
    if (polytope_path.empty()) {
      throw ValidationError("potential needs --polytope FILE or --builtin NAME");
    }
    return cho_oh_classes(polytope_from_json(load_json_file(polytope_path)));
  }();
  if (!point_path.empty()) point_json = load_json_file(point_path);

  MCPoint pt = point_json.is_null()
                   ? MCPoint(std::vector<NovikovScalar>(static_cast<std::size_t>(alg.rank()),
                                                        NovikovScalar::constant({1.0, 0.0})),
                             GradedVector(alg.basis()))
                   : point_from_json(point_json, alg.basis());

  // The character is required for the action; without --tau an inconsistent
  // class system only downgrades the printout.
  std::optional<HolonomyCharacter> gamma;
  std::string gamma_note;
  try {
    gamma = compute_gamma(alg.classes(), cfg);
  } catch (const InconsistentSystemError& e) {
    if (tau_count > 0) throw;
    gamma_note = e.what();
  }
  for (int i = 0; i < tau_count; ++i) pt = apply_tau(pt, *gamma, cfg);

  WeakMCResult result = weak_mc_check(alg, pt, cfg);
  Report report;
  report.suite = "potential";
  report.config["cutoff"] = cfg.cutoff.str();
  report.config["tol"] = std::to_string(cfg.tol);
  report.config["n"] = std::to_string(cfg.n);
  report.config["tau"] = std::to_string(tau_count);
  std::string offending;
  for (const auto& name : result.offending) offending += (offending.empty() ? "" : ", ") + name;
  report.add_check("weak-mc", result.is_weak_mc, 0.0, "P(b)", "W * unit",
                   offending.empty() ? "" : "non-unit coordinates: " + offending);
  report.add_pass("w-value", 0.0, result.w.str(), "");

  if (gamma) {
    std::cout << "gamma = (";
    for (std::size_t i = 0; i < gamma->size(); ++i) {
      std::cout << (i ? ", " : "") << format_complex(gamma->value(i));
    }
    std::cout << ")\n";
  } else {
    std::cout << "gamma: " << gamma_note << "\n";
  }
  std::cout << "W = " << result.w.str() << "\n";
  std::cout << "weak Maurer-Cartan: " << (result.is_weak_mc ? "yes" : "no") << "\n";
  if (!result.is_weak_mc) {
    std::cout << "non-unit coordinates: " << offending << "\n";
  }
  if (!out_path.empty()) write_reports(out_path, {report});
  return result.is_weak_mc ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification kernel for twisted A-infinity structures over the Novikov ring"};
  app.require_subcommand(1);

  std::string cutoff_str = "2";
  double tol = 1e-9;
  int n = 1;
  std::uint64_t seed = 42;
  std::string out_path;
  bool implicit_identity = true;

  app.add_option("--cutoff", cutoff_str, "energy cutoff, NUM or NUM/DEN")->capture_default_str();
  app.add_option("--tol", tol, "coefficient comparison tolerance")->capture_default_str();
  auto* n_opt =
      app.add_option("--n", n, "cyclic order n (zeta = e^{i pi / n})")->capture_default_str();
  app.add_option("--seed", seed, "seed for the randomized suites")->capture_default_str();
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--implicit-identity", implicit_identity,
                 "include the identity normalization term in f")
      ->capture_default_str();

  auto* verify = app.add_subcommand(
      "verify", "run a suite: twisted-functor, equivariance, wallcross, novikov-laws, all");
  verify->fallthrough();
  std::string suite;
  int cases = 100;
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--cases", cases, "randomized cases per suite")->capture_default_str();
  UserDatasets user;
  verify->add_option("--category", user.category_path,
                     "also check a user category JSON file");
  verify->add_option("--fiber", user.fiber_path, "also check a user fiber JSON file");
  verify->add_option("--point", user.point_path, "chart point for --fiber");
  verify->add_option("--isotopy", user.isotopy_path, "also check a user isotopy JSON file");

  auto* potential_cmd =
      app.add_subcommand("potential", "superpotential and weak Maurer-Cartan verdict");
  potential_cmd->fallthrough();
  std::string polytope_path, builtin_name, point_path;
  potential_cmd->add_option("--polytope", polytope_path, "polytope JSON file");
  potential_cmd->add_option("--builtin", builtin_name, "builtin dataset name");
  potential_cmd->add_option("--point", point_path, "point JSON file");
  std::vector<std::string> tau_vals;
  auto* tau_opt = potential_cmd->add_option("--tau", tau_vals, "apply tau (optionally N times)")
                      ->expected(0, 1);

  auto* mirror = app.add_subcommand("cp2-mirror", "complete-mirror example of the plane");
  mirror->fallthrough();
  int samples = 1000;
  mirror->add_option("--samples", samples, "number of sampled points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RingConfig cfg(Rational::parse(cutoff_str), tol, n);
    if (verify->parsed()) {
      SuiteOptions opts{cfg, seed, cases, implicit_identity};
      return run_verify(suite, opts, user, out_path);
    }
    if (potential_cmd->parsed()) {
      int tau_count = 0;
      if (tau_opt->count() > 0) {
        tau_count = (tau_vals.empty() || tau_vals.front().empty())
                        ? 1
                        : static_cast<int>(std::stoll(tau_vals.front()));
      }
      return run_potential(polytope_path, builtin_name, point_path, tau_count, cfg,
                           n_opt->count() > 0, out_path);
    }
    if (mirror->parsed()) {
      Report report = run_cp2_mirror(samples, seed, tol);
      print_report(report);
      if (!out_path.empty()) write_reports(out_path, {report});
      return report.all_passed() ? 0 : 1;
    }
  } catch (const UnknownSuiteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
