#include "ambientlab/jet_geometry.hpp"

namespace ambientlab {

MatrixX<Jet> metric_jets_at(const MetricField& m, const std::map<VarId, double>& point, int order) {
  const int n = m.dim();
  std::vector<double> p;
  p.reserve(m.coords.size());
  for (VarId v : m.coords) {
    auto it = point.find(v);
    if (it == point.end())
      throw std::invalid_argument("metric_jets_at: missing coordinate '" + SymbolTable::name(v) + "'");
    p.push_back(it->second);
  }
  MatrixX<Jet> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m.components(i, j).jet_at(m.coords, p, order);
  return out;
}

JetCurvature jet_curvature_at(const MetricField& m, const std::map<VarId, double>& point, int order) {
  return JetCurvature(JetRing{m.dim()}, metric_jets_at(m, point, order));
}

}  // namespace ambientlab
