#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsdom/io.hpp"
#include "bsdom/report.hpp"
#include "bsdom/stieltjes.hpp"
#include "bsdom/verify.hpp"

namespace {

// Exit codes: 0 every requested conclusion holds (or campaign ran clean),
// 1 a conclusion was withheld (or the campaign found violations),
// 2 input or usage error.
constexpr int kExitHolds = 0;
constexpr int kExitWithheld = 1;
constexpr int kExitError = 2;

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
  out << body;
}

struct CheckOpts {
  std::string file1, file2;
  int order = 1;
  std::string cls = "both";
  std::optional<int> uni_j;
  double tol = bsdom::kDefaultTolerance;
  std::string format = "text";
  std::string out;
  int bootstrap = 200;
  std::uint64_t seed = 1;
};

void add_report_flags(CLI::App* cmd, CheckOpts& o) {
  cmd->add_option("--order", o.order, "dominance order")->check(CLI::Range(1, 2));
  cmd->add_option("--class", o.cls, "utility class side")
      ->check(CLI::IsMember({"sub", "super", "both"}));
  cmd->add_option("--uni-j", o.uni_j,
                  "check order-j dominance of each marginal instead");
  cmd->add_option("--tol", o.tol, "comparison tolerance");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  cmd->add_option("--out", o.out, "write the report to this file");
}

bsdom::CheckRequest to_request(const CheckOpts& o) {
  bsdom::CheckRequest req;
  req.order = o.order;
  req.side = o.cls == "sub"     ? bsdom::UtilitySide::Submodular
             : o.cls == "super" ? bsdom::UtilitySide::Supermodular
                                : bsdom::UtilitySide::Both;
  req.univariate_order = o.uni_j;
  req.tolerance = o.tol;
  return req;
}

std::string render(const bsdom::ConditionReport& r, const std::string& format) {
  if (format == "json") return bsdom::to_json_string(r) + "\n";
  if (format == "csv") return bsdom::to_csv(r);
  return bsdom::to_text(r);
}

int run_check_command(const CheckOpts& o, bool with_bootstrap) {
  const bsdom::SampleSet s1 = bsdom::ingest(o.file1);
  const bsdom::SampleSet s2 = bsdom::ingest(o.file2);
  bsdom::CheckOutcome outcome;
  if (with_bootstrap) {
    outcome = bsdom::run_infer(s1, s2, to_request(o), o.bootstrap, o.seed);
  } else {
    const bsdom::CommonFrame frame = bsdom::build_common_frame(s1, s2);
    outcome = bsdom::run_check(bsdom::build_cdf(s1, frame), bsdom::build_cdf(s2, frame),
                               to_request(o), "check");
  }
  emit(render(outcome.report, o.format), o.out);
  return outcome.requested_holds ? kExitHolds : kExitWithheld;
}

struct ExpectationOpts {
  std::string file;
  std::string phi;
  std::string format = "text";
  std::string out;
};

int run_expectation(const ExpectationOpts& o) {
  const bsdom::SampleSet s = bsdom::ingest(o.file);
  const bsdom::TestFunction phi = bsdom::parse_descriptor(o.phi);
  const bsdom::CommonFrame frame = bsdom::single_set_frame(s);
  const bsdom::BivariateStepCdf cdf = bsdom::build_cdf(s, frame);
  const double value = bsdom::exact_expectation(phi, cdf);

  std::string body;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "expectation";
    j["phi"] = phi.descriptor();
    j["frame"] = {{"x_lo", frame.x_lo},
                  {"x_hi", frame.x_hi},
                  {"y_lo", frame.y_lo},
                  {"y_hi", frame.y_hi}};
    j["value"] = value;
    body = j.dump(2) + "\n";
  } else if (o.format == "csv") {
    body = "phi,value\n\"" + phi.descriptor() + "\"," + bsdom::format_double(value) + "\n";
  } else {
    body = "E[" + phi.descriptor() + "] = " + bsdom::format_double(value) + "\n";
  }
  emit(body, o.out);
  return kExitHolds;
}

struct SurfaceOpts {
  std::string file;
  std::string kind = "F";
  std::string out;
};

int run_surface(const SurfaceOpts& o) {
  const bsdom::SampleSet s = bsdom::ingest(o.file);
  const bsdom::BivariateStepCdf cdf = bsdom::build_cdf(s, bsdom::single_set_frame(s));
  const bsdom::SurfaceKind kind = o.kind == "F"   ? bsdom::SurfaceKind::F
                                  : o.kind == "K" ? bsdom::SurfaceKind::K
                                  : o.kind == "H" ? bsdom::SurfaceKind::H
                                                  : bsdom::SurfaceKind::L;
  emit(bsdom::surface_csv(cdf, kind), o.out);
  return kExitHolds;
}

struct VerifyOpts {
  std::string kind = "first-sub";
  std::string generator;  // empty: pick the hypothesis-preserving default
  int trials = 100;
  int phi_count = 10;
  int atoms_min = 2;
  int atoms_max = 12;
  std::uint64_t seed = 1;
  double tol = bsdom::kDefaultTolerance;
  std::string format = "text";
  std::string out;
};

int run_verify(const VerifyOpts& o) {
  bsdom::CampaignConfig cfg;
  cfg.kind = o.kind == "first-sub"    ? bsdom::DominanceKind::FirstOrderSubmodular
             : o.kind == "first-super" ? bsdom::DominanceKind::FirstOrderSupermodular
             : o.kind == "second-sub"  ? bsdom::DominanceKind::SecondOrderSubmodular
                                       : bsdom::DominanceKind::SecondOrderSupermodular;
  if (o.generator.empty()) {
    const bool sub = o.kind == "first-sub" || o.kind == "second-sub";
    cfg.generator = sub ? bsdom::PairGenerator::MonotoneShift : bsdom::PairGenerator::EtSwap;
  } else {
    cfg.generator = o.generator == "monotone-shift" ? bsdom::PairGenerator::MonotoneShift
                    : o.generator == "et-swap"      ? bsdom::PairGenerator::EtSwap
                                                    : bsdom::PairGenerator::Unconstrained;
  }
  cfg.master_seed = o.seed;
  cfg.trials = o.trials;
  cfg.min_atoms = o.atoms_min;
  cfg.max_atoms = o.atoms_max;
  cfg.phi_per_trial = o.phi_count;
  cfg.tolerance = o.tol;

  const bsdom::CampaignReport report = bsdom::run_campaign(cfg);
  std::string body;
  if (o.format == "json") {
    body = bsdom::to_json_string(report) + "\n";
  } else if (o.format == "csv") {
    body = bsdom::to_csv(report);
  } else {
    body = bsdom::to_text(report);
  }
  emit(body, o.out);
  return report.violations.empty() ? kExitHolds : kExitWithheld;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bivariate stochastic dominance: checks, surfaces, self-verification"};
  app.require_subcommand(1);

  CheckOpts check_o;
  CLI::App* check = app.add_subcommand(
      "check", "decide which dominance conclusions hold for a pair of sample files");
  check->add_option("file1", check_o.file1, "samples of the candidate dominating side")
      ->required();
  check->add_option("file2", check_o.file2, "samples of the dominated side")->required();
  add_report_flags(check, check_o);

  CheckOpts infer_o;
  CLI::App* infer = app.add_subcommand(
      "infer", "check plus recentered-bootstrap p-values per condition family");
  infer->add_option("file1", infer_o.file1, "samples of the candidate dominating side")
      ->required();
  infer->add_option("file2", infer_o.file2, "samples of the dominated side")->required();
  add_report_flags(infer, infer_o);
  infer->add_option("--bootstrap", infer_o.bootstrap, "bootstrap replicates")
      ->check(CLI::PositiveNumber);
  infer->add_option("--seed", infer_o.seed, "bootstrap seed");

  ExpectationOpts exp_o;
  CLI::App* expectation = app.add_subcommand(
      "expectation", "expected utility of one sample file under a named function");
  expectation->add_option("file", exp_o.file, "sample file")->required();
  expectation->add_option("--phi", exp_o.phi, "utility descriptor, e.g. cobb_douglas:0.5,0.5")
      ->required();
  expectation->add_option("--format", exp_o.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  expectation->add_option("--out", exp_o.out, "write the result to this file");

  SurfaceOpts surf_o;
  CLI::App* surface = app.add_subcommand(
      "surface", "tabulate F, K, H or L on the distribution's grid as CSV");
  surface->add_option("file", surf_o.file, "sample file")->required();
  surface->add_option("--kind", surf_o.kind, "surface to tabulate")
      ->check(CLI::IsMember({"F", "K", "H", "L"}));
  surface->add_option("--out", surf_o.out, "write the CSV to this file");

  VerifyOpts verify_o;
  CLI::App* verify = app.add_subcommand(
      "verify", "randomized self-check: hypothesis-preserving pairs vs expectation order");
  verify->add_option("--kind", verify_o.kind, "dominance claim to exercise")
      ->check(CLI::IsMember({"first-sub", "first-super", "second-sub", "second-super"}));
  verify->add_option("--generator", verify_o.generator, "pair generator")
      ->check(CLI::IsMember({"monotone-shift", "et-swap", "unconstrained"}));
  verify->add_option("--trials", verify_o.trials, "trial count")->check(CLI::PositiveNumber);
  verify->add_option("--phi-count", verify_o.phi_count, "utilities sampled per trial")
      ->check(CLI::PositiveNumber);
  verify->add_option("--atoms-min", verify_o.atoms_min, "fewest atoms per set")
      ->check(CLI::PositiveNumber);
  verify->add_option("--atoms-max", verify_o.atoms_max, "most atoms per set")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_o.seed, "campaign master seed");
  verify->add_option("--tol", verify_o.tol, "comparison tolerance");
  verify->add_option("--format", verify_o.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  verify->add_option("--out", verify_o.out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (check->parsed()) return run_check_command(check_o, false);
    if (infer->parsed()) return run_check_command(infer_o, true);
    if (expectation->parsed()) return run_expectation(exp_o);
    if (surface->parsed()) return run_surface(surf_o);
    if (verify->parsed()) return run_verify(verify_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
