#include "bsdom/report.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "bsdom/first_order.hpp"
#include "bsdom/io.hpp"
#include "bsdom/rng.hpp"
#include "bsdom/second_order.hpp"
#include "bsdom/univariate.hpp"

namespace bsdom {

namespace {

using ojson = nlohmann::ordered_json;

ReportVerdict to_row(const DominanceVerdict& v, std::string family,
                     bool witness_on_y = false) {
  ReportVerdict row;
  row.family = std::move(family);
  row.holds = v.holds;
  row.margin = v.margin;
  if (v.witness) {
    // Univariate checks report the location in x; remap for the y marginal.
    row.witness = witness_on_y ? WitnessPoint{0.0, v.witness->x}
                               : WitnessPoint{v.witness->x, v.witness->y};
  }
  return row;
}

void validate_request(const CheckRequest& req) {
  if (req.univariate_order) {
    if (*req.univariate_order < 1) {
      throw std::invalid_argument("univariate dominance order must be >= 1");
    }
  } else if (req.order != 1 && req.order != 2) {
    throw std::invalid_argument("order must be 1 or 2");
  }
  if (!(req.tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be nonnegative");
  }
}

struct FamilyResults {
  std::vector<ReportVerdict> rows;
  std::vector<std::string> conclusions;
  bool requested_holds = true;
  bool any_strict = false;
  bool all_hold = true;
};

FamilyResults family_results(const BivariateStepCdf& f1, const BivariateStepCdf& f2,
                             const CheckRequest& req) {
  FamilyResults out;
  const double tol = req.tolerance;

  const auto push = [&out](const DominanceVerdict& v, std::string family,
                           bool on_y = false) {
    out.rows.push_back(to_row(v, std::move(family), on_y));
    out.any_strict = out.any_strict || v.strict_somewhere;
    out.all_hold = out.all_hold && v.holds;
    return v.holds;
  };

  if (req.univariate_order) {
    const int j = *req.univariate_order;
    const bool sx = push(sd_check(marginal_x(f1), marginal_x(f2), j, tol),
                         "SX_" + std::to_string(j));
    const bool sy = push(sd_check(marginal_y(f1), marginal_y(f2), j, tol),
                         "SY_" + std::to_string(j), true);
    if (sx) out.conclusions.push_back(univariate_conclusion('x', j));
    if (sy) out.conclusions.push_back(univariate_conclusion('y', j));
    out.requested_holds = sx && sy;
    return out;
  }

  const bool sub = req.side != UtilitySide::Supermodular;
  const bool super = req.side != UtilitySide::Submodular;

  if (req.order == 1) {
    bool f_ok = true, mx_ok = true, my_ok = true, k_ok = true;
    if (sub) f_ok = push(pointwise_cdf_dominance(f1, f2, tol), "F");
    if (super) {
      mx_ok = push(marginal_dominance_x(f1, f2, tol), "FX");
      my_ok = push(marginal_dominance_y(f1, f2, tol), "FY", true);
      k_ok = push(k_dominance(f1, f2, tol), "K");
    }
    if (sub && f_ok) out.conclusions.emplace_back(kConclusionFirstSub);
    if (super && mx_ok && my_ok && k_ok) {
      out.conclusions.emplace_back(kConclusionFirstSuper);
    }
    out.requested_holds = (!sub || f_ok) && (!super || (mx_ok && my_ok && k_ok));
  } else {
    const bool hx_ok = push(h_marginal_dominance_x(f1, f2, tol), "HX");
    const bool hy_ok = push(h_marginal_dominance_y(f1, f2, tol), "HY", true);
    bool h_ok = true, l_ok = true;
    if (sub) h_ok = push(h_dominance(f1, f2, tol), "H");
    if (super) l_ok = push(l_dominance(f1, f2, tol), "L");
    if (sub && hx_ok && hy_ok && h_ok) {
      out.conclusions.emplace_back(kConclusionSecondSub);
    }
    if (super && hx_ok && hy_ok && l_ok) {
      out.conclusions.emplace_back(kConclusionSecondSuper);
    }
    out.requested_holds =
        hx_ok && hy_ok && (!sub || h_ok) && (!super || l_ok);
  }
  return out;
}

}  // namespace

std::string univariate_conclusion(char axis, int order) {
  return "order-" + std::to_string(order) + " stochastic dominance of the " + axis +
         " marginal";
}

CheckOutcome run_check(const BivariateStepCdf& f1, const BivariateStepCdf& f2,
                       const CheckRequest& req, std::string command) {
  validate_request(req);
  FamilyResults fr = family_results(f1, f2, req);

  CheckOutcome out;
  out.report.command = std::move(command);
  out.report.frame = f1.frame();
  out.report.tolerance = req.tolerance;
  out.report.verdicts = std::move(fr.rows);
  out.report.conclusions = std::move(fr.conclusions);
  if (fr.all_hold && !fr.any_strict) {
    out.report.conclusions.emplace_back(kNoteCoincident);
  }
  out.requested_holds = fr.requested_holds;
  return out;
}

namespace {

SampleSet resample(const SampleSet& s, Rng& r) {
  std::vector<double> cum(s.weights().size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    acc += s.weights()[i];
    cum[i] = acc;
  }
  std::vector<SamplePoint> pts;
  pts.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double u = r.uniform() * acc;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::size_t idx =
        std::min(cum.size() - 1, static_cast<std::size_t>(it - cum.begin()));
    pts.push_back(s.points()[idx]);
  }
  return SampleSet::unweighted(std::move(pts));
}

}  // namespace

CheckOutcome run_infer(const SampleSet& s1, const SampleSet& s2,
                       const CheckRequest& req, int replicates, std::uint64_t seed) {
  validate_request(req);
  if (replicates < 1) throw std::invalid_argument("bootstrap needs at least one replicate");

  const CommonFrame frame = build_common_frame(s1, s2);
  const BivariateStepCdf f1 = build_cdf(s1, frame);
  const BivariateStepCdf f2 = build_cdf(s2, frame);
  CheckOutcome out = run_check(f1, f2, req, "infer");
  out.report.seed = seed;

  std::vector<int> exceed(out.report.verdicts.size(), 0);
  for (int b = 0; b < replicates; ++b) {
    Rng r(derive_seed(seed, static_cast<std::uint64_t>(b)));
    const SampleSet r1 = resample(s1, r);
    const SampleSet r2 = resample(s2, r);
    const FamilyResults fr =
        family_results(build_cdf(r1, frame), build_cdf(r2, frame), req);
    for (std::size_t i = 0; i < exceed.size(); ++i) {
      const double t_obs = out.report.verdicts[i].margin;
      if (fr.rows[i].margin - t_obs >= t_obs) ++exceed[i];
    }
  }

  std::vector<PValueEntry> ps;
  ps.reserve(exceed.size());
  for (std::size_t i = 0; i < exceed.size(); ++i) {
    ps.push_back({out.report.verdicts[i].family,
                  (1.0 + exceed[i]) / (replicates + 1.0), replicates});
  }
  out.report.pvalues = std::move(ps);
  return out;
}

CommonFrame single_set_frame(const SampleSet& s) {
  const CommonFrame id = CommonFrame::identity();
  const bool inside = std::all_of(s.points().begin(), s.points().end(),
                                  [&](const SamplePoint& p) { return id.contains(p); });
  return inside ? id : bounding_frame(s);
}

std::string surface_csv(const BivariateStepCdf& cdf, SurfaceKind which) {
  std::vector<double> xs, ys;
  std::vector<std::vector<double>> vals;

  if (which == SurfaceKind::F || which == SurfaceKind::K) {
    xs = cdf.xs();
    ys = cdf.ys();
    vals.assign(xs.size(), std::vector<double>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const double f = cdf.f(i, j);
        vals[i][j] =
            which == SurfaceKind::F ? f : cdf.fx()[i] + cdf.fy()[j] - f;
      }
    }
  } else {
    const MergedGrid grid = single_grid(cdf);
    const BilinearSheet sheet = which == SurfaceKind::H ? h_surface(cdf, grid)
                                                        : l_surface(cdf, grid);
    xs = sheet.xs();
    ys = sheet.ys();
    vals.assign(xs.size(), std::vector<double>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) vals[i][j] = sheet.corner(i, j);
    }
  }

  std::string out;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    out += ",";
    out += format_double(ys[j]);
  }
  out += "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += format_double(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      out += ",";
      out += format_double(vals[i][j]);
    }
    out += "\n";
  }
  return out;
}

namespace {

ojson frame_json(const CommonFrame& f) {
  return ojson{{"x_lo", f.x_lo}, {"x_hi", f.x_hi}, {"y_lo", f.y_lo}, {"y_hi", f.y_hi}};
}

CommonFrame frame_from(const ojson& j) {
  return CommonFrame{j.at("x_lo").get<double>(), j.at("x_hi").get<double>(),
                     j.at("y_lo").get<double>(), j.at("y_hi").get<double>()};
}

ojson verdict_json(const ReportVerdict& v) {
  ojson w = nullptr;
  if (v.witness) w = ojson{{"x", v.witness->x}, {"y", v.witness->y}};
  return ojson{{"family", v.family}, {"holds", v.holds}, {"witness", std::move(w)},
               {"margin", v.margin}};
}

DominanceKind kind_from(std::string_view s) {
  for (DominanceKind k : {DominanceKind::FirstOrderSubmodular,
                          DominanceKind::FirstOrderSupermodular,
                          DominanceKind::SecondOrderSubmodular,
                          DominanceKind::SecondOrderSupermodular}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown dominance kind '" + std::string(s) + "'");
}

PairGenerator generator_from(std::string_view s) {
  for (PairGenerator g : {PairGenerator::MonotoneShift, PairGenerator::EtSwap,
                          PairGenerator::Unconstrained}) {
    if (to_string(g) == s) return g;
  }
  throw std::invalid_argument("unknown pair generator '" + std::string(s) + "'");
}

}  // namespace

std::string to_json_string(const ConditionReport& r) {
  ojson j;
  j["command"] = r.command;
  j["frame"] = frame_json(r.frame);
  j["tolerance"] = r.tolerance;
  ojson verdicts = ojson::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
  j["verdicts"] = std::move(verdicts);
  j["conclusions"] = r.conclusions;
  if (r.pvalues) {
    ojson ps = ojson::array();
    for (const auto& p : *r.pvalues) {
      ps.push_back(ojson{{"family", p.family}, {"p", p.p}, {"B", p.b}});
    }
    j["pvalues"] = std::move(ps);
  } else {
    j["pvalues"] = nullptr;
  }
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j.dump(2);
}

ConditionReport condition_report_from_json(std::string_view text) {
  const ojson j = ojson::parse(text);
  ConditionReport r;
  r.command = j.at("command").get<std::string>();
  r.frame = frame_from(j.at("frame"));
  r.tolerance = j.at("tolerance").get<double>();
  for (const auto& v : j.at("verdicts")) {
    ReportVerdict row;
    row.family = v.at("family").get<std::string>();
    row.holds = v.at("holds").get<bool>();
    if (!v.at("witness").is_null()) {
      row.witness = WitnessPoint{v.at("witness").at("x").get<double>(),
                                 v.at("witness").at("y").get<double>()};
    }
    row.margin = v.at("margin").get<double>();
    r.verdicts.push_back(std::move(row));
  }
  r.conclusions = j.at("conclusions").get<std::vector<std::string>>();
  if (!j.at("pvalues").is_null()) {
    std::vector<PValueEntry> ps;
    for (const auto& p : j.at("pvalues")) {
      ps.push_back({p.at("family").get<std::string>(), p.at("p").get<double>(),
                    p.at("B").get<int>()});
    }
    r.pvalues = std::move(ps);
  }
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

std::string to_text(const ConditionReport& r) {
  std::string out = "command: " + r.command + "\n";
  out += "frame: [" + format_double(r.frame.x_lo) + ", " + format_double(r.frame.x_hi) +
         "] x [" + format_double(r.frame.y_lo) + ", " + format_double(r.frame.y_hi) +
         "]\n";
  out += "tolerance: " + format_double(r.tolerance) + "\n";
  out += "verdicts:\n";
  for (const auto& v : r.verdicts) {
    out += "  " + v.family + ": " + (v.holds ? "holds" : "fails") +
           " (margin " + format_double(v.margin) + ")";
    if (v.witness) {
      out += " at (" + format_double(v.witness->x) + ", " +
             format_double(v.witness->y) + ")";
    }
    out += "\n";
  }
  out += "conclusions:\n";
  if (r.conclusions.empty()) out += "  (none)\n";
  for (const auto& c : r.conclusions) out += "  - " + c + "\n";
  if (r.pvalues) {
    out += "pvalues:\n";
    for (const auto& p : *r.pvalues) {
      out += "  " + p.family + ": p = " + format_double(p.p) + " (B = " +
             std::to_string(p.b) + ")\n";
    }
  }
  if (r.seed) out += "seed: " + std::to_string(*r.seed) + "\n";
  return out;
}

std::string to_csv(const ConditionReport& r) {
  std::string out = "family,holds,margin,witness_x,witness_y,p,B\n";
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    const auto& v = r.verdicts[i];
    out += v.family;
    out += v.holds ? ",true," : ",false,";
    out += format_double(v.margin);
    out += ",";
    if (v.witness) out += format_double(v.witness->x);
    out += ",";
    if (v.witness) out += format_double(v.witness->y);
    out += ",";
    if (r.pvalues && i < r.pvalues->size()) {
      out += format_double((*r.pvalues)[i].p);
      out += "," + std::to_string((*r.pvalues)[i].b);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

namespace {

ojson config_json(const CampaignConfig& c) {
  return ojson{{"master_seed", c.master_seed},
               {"trials", c.trials},
               {"min_atoms", c.min_atoms},
               {"max_atoms", c.max_atoms},
               {"generator", std::string(to_string(c.generator))},
               {"kind", std::string(to_string(c.kind))},
               {"phi_per_trial", c.phi_per_trial},
               {"tolerance", c.tolerance}};
}

ojson points_json(const std::vector<SamplePoint>& pts) {
  ojson arr = ojson::array();
  for (const auto& p : pts) arr.push_back(ojson::array({p.x, p.y}));
  return arr;
}

std::vector<SamplePoint> points_from(const ojson& j) {
  std::vector<SamplePoint> pts;
  for (const auto& p : j) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return pts;
}

}  // namespace

std::string to_json_string(const CampaignReport& r) {
  ojson j;
  j["config"] = config_json(r.config);
  j["trials_run"] = r.trials_run;
  j["condition_satisfied"] = r.condition_satisfied;
  if (r.min_margin) {
    j["min_margin"] = *r.min_margin;
  } else {
    j["min_margin"] = nullptr;
  }
  ojson vs = ojson::array();
  for (const auto& v : r.violations) {
    vs.push_back(ojson{{"trial", v.trial},
                       {"seed", v.seed},
                       {"phi", v.phi},
                       {"e1", v.e1},
                       {"e2", v.e2},
                       {"points1", points_json(v.points1)},
                       {"points2", points_json(v.points2)},
                       {"weights1", v.weights1},
                       {"weights2", v.weights2}});
  }
  j["violations"] = std::move(vs);
  return j.dump(2);
}

CampaignReport campaign_report_from_json(std::string_view text) {
  const ojson j = ojson::parse(text);
  CampaignReport r;
  const ojson& c = j.at("config");
  r.config.master_seed = c.at("master_seed").get<std::uint64_t>();
  r.config.trials = c.at("trials").get<int>();
  r.config.min_atoms = c.at("min_atoms").get<int>();
  r.config.max_atoms = c.at("max_atoms").get<int>();
  r.config.generator = generator_from(c.at("generator").get<std::string>());
  r.config.kind = kind_from(c.at("kind").get<std::string>());
  r.config.phi_per_trial = c.at("phi_per_trial").get<int>();
  r.config.tolerance = c.at("tolerance").get<double>();
  r.trials_run = j.at("trials_run").get<int>();
  r.condition_satisfied = j.at("condition_satisfied").get<int>();
  if (!j.at("min_margin").is_null()) r.min_margin = j.at("min_margin").get<double>();
  for (const auto& v : j.at("violations")) {
    ViolationRecord rec;
    rec.trial = v.at("trial").get<int>();
    rec.seed = v.at("seed").get<std::uint64_t>();
    rec.phi = v.at("phi").get<std::string>();
    rec.e1 = v.at("e1").get<double>();
    rec.e2 = v.at("e2").get<double>();
    rec.points1 = points_from(v.at("points1"));
    rec.points2 = points_from(v.at("points2"));
    rec.weights1 = v.at("weights1").get<std::vector<double>>();
    rec.weights2 = v.at("weights2").get<std::vector<double>>();
    r.violations.push_back(std::move(rec));
  }
  return r;
}

std::string to_text(const CampaignReport& r) {
  std::string out = "campaign: " + std::string(to_string(r.config.kind)) +
                    " via " + std::string(to_string(r.config.generator)) + "\n";
  out += "seed: " + std::to_string(r.config.master_seed) + "\n";
  out += "trials: " + std::to_string(r.trials_run) + " run, " +
         std::to_string(r.condition_satisfied) + " satisfied the hypothesis\n";
  out += "utilities per trial: " + std::to_string(r.config.phi_per_trial) + "\n";
  if (r.min_margin) {
    out += "smallest expectation gap: " + format_double(*r.min_margin) + "\n";
  }
  out += "violations: " + std::to_string(r.violations.size()) + "\n";
  for (const auto& v : r.violations) {
    out += "  trial " + std::to_string(v.trial) + " (seed " + std::to_string(v.seed) +
           "): E1 = " + format_double(v.e1) + " < E2 = " + format_double(v.e2) +
           " for " + v.phi + "\n";
  }
  return out;
}

std::string to_csv(const CampaignReport& r) {
  std::string out = "trial,seed,phi,e1,e2\n";
  for (const auto& v : r.violations) {
    out += std::to_string(v.trial) + "," + std::to_string(v.seed) + ",\"" + v.phi +
           "\"," + format_double(v.e1) + "," + format_double(v.e2) + "\n";
  }
  return out;
}

}  // namespace bsdom
