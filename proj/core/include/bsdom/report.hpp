#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsdom/sample_set.hpp"
#include "bsdom/step_cdf.hpp"
#include "bsdom/verdict.hpp"
#include "bsdom/verify.hpp"

namespace bsdom {

enum class UtilitySide { Submodular, Supermodular, Both };
enum class SurfaceKind { F, K, H, L };

// What a check/infer run is asked to decide. univariate_order switches to
// per-marginal order-j dominance and ignores order/side.
struct CheckRequest {
  int order = 1;  // 1 or 2
  UtilitySide side = UtilitySide::Both;
  std::optional<int> univariate_order;
  double tolerance = kDefaultTolerance;
};

struct WitnessPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const WitnessPoint&, const WitnessPoint&) = default;
};

// One row of the machine-readable report; mirrors the JSON schema exactly.
struct ReportVerdict {
  std::string family;
  bool holds = false;
  std::optional<WitnessPoint> witness;
  double margin = 0.0;

  friend bool operator==(const ReportVerdict&, const ReportVerdict&) = default;
};

struct PValueEntry {
  std::string family;
  double p = 1.0;
  int b = 0;  // bootstrap replicate count, key "B" in JSON

  friend bool operator==(const PValueEntry&, const PValueEntry&) = default;
};

// Schema: {command, frame:{x_lo,x_hi,y_lo,y_hi}, tolerance,
//          verdicts:[{family, holds, witness:{x,y}|null, margin}],
//          conclusions:[string], pvalues:[{family,p,B}]|null, seed}
struct ConditionReport {
  std::string command;
  CommonFrame frame;
  double tolerance = kDefaultTolerance;
  std::vector<ReportVerdict> verdicts;
  std::vector<std::string> conclusions;
  std::optional<std::vector<PValueEntry>> pvalues;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

// Conclusion strings are stable identifiers; a conclusion appears only when
// every constituent family verdict holds.
inline constexpr std::string_view kConclusionFirstSub =
    "first-order dominance over increasing submodular utilities";
inline constexpr std::string_view kConclusionFirstSuper =
    "first-order dominance over increasing supermodular utilities";
inline constexpr std::string_view kConclusionSecondSub =
    "second-order dominance over increasing concave submodular utilities";
inline constexpr std::string_view kConclusionSecondSuper =
    "second-order dominance over increasing concave supermodular utilities";
inline constexpr std::string_view kNoteCoincident =
    "distributions coincide at every checked point";

std::string univariate_conclusion(char axis, int order);

struct CheckOutcome {
  ConditionReport report;
  bool requested_holds = false;  // every requested conclusion asserted
};

// Runs the family checks implied by the request on two CDFs sharing a frame
// and assembles the report (command name goes through verbatim).
CheckOutcome run_check(const BivariateStepCdf& f1, const BivariateStepCdf& f2,
                       const CheckRequest& req, std::string command);

// run_check plus recentered-bootstrap p-values per family: both sets are
// resampled with replacement (same sizes, original frame) `replicates`
// times; with T the observed margin and T*_b the replicate margins,
// p = (1 + #{T*_b - T >= T}) / (replicates + 1).
CheckOutcome run_infer(const SampleSet& s1, const SampleSet& s2,
                       const CheckRequest& req, int replicates, std::uint64_t seed);

// Frame for single-distribution commands: identity when the points already
// lie in the unit square, otherwise the set's widened bounding box.
CommonFrame single_set_frame(const SampleSet& s);

// Surface matrix as CSV: first row holds the y grid, first column the x
// grid, cell (i,j) the surface value. F/K tabulate on the cdf's own grid,
// H/L on the grid with 0 prepended. Deterministic formatting, so reruns are
// byte-identical.
std::string surface_csv(const BivariateStepCdf& cdf, SurfaceKind which);

std::string to_json_string(const ConditionReport& r);
ConditionReport condition_report_from_json(std::string_view text);
std::string to_text(const ConditionReport& r);
std::string to_csv(const ConditionReport& r);

std::string to_json_string(const CampaignReport& r);
CampaignReport campaign_report_from_json(std::string_view text);
std::string to_text(const CampaignReport& r);
std::string to_csv(const CampaignReport& r);

}  // namespace bsdom
