#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qwalk {

const char* model_name(ScalingModel model) {
  switch (model) {
    case ScalingModel::kLogPrefactor: return "log_prefactor";
    case ScalingModel::kSqrtPrefactor: return "sqrt_prefactor";
    case ScalingModel::kConstant: return "constant";
    case ScalingModel::kPowerLaw: return "power_law";
  }
  return "?";
}

std::optional<ScalingModel> model_from_name(const std::string& name) {
  if (name == "log_prefactor" || name == "log") return ScalingModel::kLogPrefactor;
  if (name == "sqrt_prefactor" || name == "sqrt") return ScalingModel::kSqrtPrefactor;
  if (name == "constant" || name == "const") return ScalingModel::kConstant;
  if (name == "power_law" || name == "power") return ScalingModel::kPowerLaw;
  return std::nullopt;
}

namespace {

double basis_value(ScalingModel model, double n) {
  switch (model) {
    case ScalingModel::kLogPrefactor: return 1.0 / std::log2(n);
    case ScalingModel::kSqrtPrefactor: return std::sqrt(n);
    case ScalingModel::kConstant: return 1.0;
    case ScalingModel::kPowerLaw: break;
  }
  throw std::logic_error("no basis for the power law");
}

double model_value(const ScalingFit& f, double n) {
  switch (f.model) {
    case ScalingModel::kLogPrefactor: return f.coefficients[0] / std::log2(n);
    case ScalingModel::kSqrtPrefactor: return f.coefficients[0] * std::sqrt(n);
    case ScalingModel::kConstant: return f.coefficients[0];
    case ScalingModel::kPowerLaw:
      return f.coefficients[0] * std::pow(n, f.coefficients[1]);
  }
  return 0.0;
}

}  // namespace

ScalingFit fit(ScalingModel model,
               const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("fit needs at least 2 points");
  for (const auto& [n, y] : points) {
    if (n < 2.0) throw std::invalid_argument("fit needs N >= 2");
    if (model == ScalingModel::kPowerLaw && y <= 0.0) {
      throw std::invalid_argument("power-law fit needs positive values");
    }
  }

  ScalingFit result;
  result.model = model;
  result.n_points = points.size();
  result.n_min = points.front().first;
  result.n_max = points.front().first;
  for (const auto& [n, y] : points) {
    result.n_min = std::min(result.n_min, n);
    result.n_max = std::max(result.n_max, n);
  }

  if (model == ScalingModel::kPowerLaw) {
    // Ordinary least squares on (ln N, ln y).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(points.size());
    for (const auto& [n, y] : points) {
      const double lx = std::log(n);
      const double ly = std::log(y);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate power-law fit");
    const double alpha = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - alpha * sx) / m;
    result.coefficients = {std::exp(intercept), alpha};
  } else {
    double num = 0.0, den = 0.0;
    for (const auto& [n, y] : points) {
      const double x = basis_value(model, n);
      num += y * x;
      den += x * x;
    }
    result.coefficients = {num / den};
  }

  double acc = 0.0;
  for (const auto& [n, y] : points) {
    const double rel = (model_value(result, n) - y) / y;
    acc += rel * rel;
  }
  result.residual = std::sqrt(acc / static_cast<double>(points.size()));
  return result;
}

SweepSeries prefactor_sweep(const std::vector<GroupedPoint>& points,
                            ScalingModel model) {
  if (points.empty()) throw std::invalid_argument("empty sweep table");
  std::map<double, std::vector<std::pair<double, double>>> groups;
  std::map<double, bool> tainted;
  for (const auto& pt : points) {
    if (!pt.success) {
      tainted[pt.group] = true;
      continue;
    }
    groups[pt.group].emplace_back(pt.n, pt.y);
    if (!tainted.count(pt.group)) tainted[pt.group] = false;
  }
  SweepSeries series;
  for (const auto& [group, bad] : tainted) {
    if (bad) {
      series.excluded_groups.push_back(group);
      continue;
    }
    series.fits.emplace_back(group, fit(model, groups[group]));
  }
  return series;
}

AlphaSeries alpha_vs_p(const std::vector<AlphaPoint>& points) {
  std::map<double, std::vector<std::pair<double, double>>> groups;
  for (const auto& pt : points) {
    if (pt.aggregated_time) groups[pt.p].emplace_back(pt.n, *pt.aggregated_time);
  }
  // Note p values whose rows were all failures.
  std::map<double, bool> seen;
  for (const auto& pt : points) seen.emplace(pt.p, false);

  AlphaSeries series;
  for (auto& [p, _] : seen) {
    auto it = groups.find(p);
    if (it == groups.end() || it->second.size() < 3) {
      series.skipped.push_back(p);
      continue;
    }
    series.alpha.emplace_back(p, fit(ScalingModel::kPowerLaw, it->second).alpha());
  }
  return series;
}

}  // namespace qwalk
