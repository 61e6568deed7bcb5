#pragma once

#include "ambientlab/curvature.hpp"
#include "ambientlab/metric.hpp"

#include <map>

namespace ambientlab {

// Evaluates the exact metric into the jet algebra at a point; the resulting
// bundle runs the same curvature formulas in the numeric tier. `order` must
// cover the derivatives the caller needs (Ricci needs 2, Bach needs 4).
MatrixX<Jet> metric_jets_at(const MetricField& m, const std::map<VarId, double>& point, int order);

JetCurvature jet_curvature_at(const MetricField& m, const std::map<VarId, double>& point, int order);

// Numeric evaluation of an exact tensor field at a point.
inline std::map<VarId, double> to_double_point(const std::map<VarId, Rational>& p) {
  std::map<VarId, double> out;
  for (const auto& [v, q] : p) out[v] = to_double(q);
  return out;
}

}  // namespace ambientlab
