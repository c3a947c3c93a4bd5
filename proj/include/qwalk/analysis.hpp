#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

// Scaling forms fitted to experiment tables:
//   kLogPrefactor   y = a / log2(N)
//   kSqrtPrefactor  y = b * sqrt(N)
//   kConstant       y = a
//   kPowerLaw       y = k * N^alpha   (least squares in log-log space)
enum class ScalingModel { kLogPrefactor, kSqrtPrefactor, kConstant, kPowerLaw };

const char* model_name(ScalingModel model);
std::optional<ScalingModel> model_from_name(const std::string& name);

struct ScalingFit {
  ScalingModel model = ScalingModel::kConstant;
  // {a} or {b} for the one-parameter forms, {k, alpha} for the power law.
  std::vector<double> coefficients;
  double residual = 0.0;  // root-mean-square relative error
  std::size_t n_points = 0;
  double n_min = 0.0;
  double n_max = 0.0;

  double alpha() const { return coefficients.back(); }
  double prefactor() const { return coefficients.front(); }
};

// Least-squares fit; one-parameter forms use the closed-form projection
// a = sum(y*x) / sum(x*x) with x the model basis. Needs >= 2 points (with
// y > 0 for the power law).
ScalingFit fit(ScalingModel model,
               const std::vector<std::pair<double, double>>& points);

struct GroupedPoint {
  double group = 0.0;  // sweep parameter (tunnelling p, depth, ...)
  double n = 0.0;
  double y = 0.0;
  bool success = true;
};

struct SweepSeries {
  std::vector<std::pair<double, ScalingFit>> fits;  // (group, fit)
  std::vector<double> excluded_groups;              // groups with failed runs
};

// One fit per sweep-parameter group; groups containing failed runs are
// excluded and reported instead.
SweepSeries prefactor_sweep(const std::vector<GroupedPoint>& points,
                            ScalingModel model);

struct AlphaPoint {
  double p = 0.0;
  double n = 0.0;
  std::optional<double> aggregated_time;  // empty when every member failed
};

struct AlphaSeries {
  std::vector<std::pair<double, double>> alpha;  // (p, fitted exponent)
  std::vector<double> skipped;                   // p values without enough data
};

// Power-law exponent of aggregated search time versus N, per percolation
// probability; requires at least three usable sizes per p.
AlphaSeries alpha_vs_p(const std::vector<AlphaPoint>& points);

}  // namespace qwalk
