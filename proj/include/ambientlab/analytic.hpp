#pragma once

#include "ambientlab/expression.hpp"
#include "ambientlab/jet.hpp"

#include <functional>
#include <memory>
#include <string>

namespace ambientlab {

// Evaluates Taylor coefficients (monomial convention) of the atom at a base
// point, for the atom's own variable list.
using JetEvaluator = std::function<Jet(std::span<const double> point, int order)>;

// Opaque analytic scalar with a registered jet evaluator and a declared
// maximum order. Exact-tier operations reject atoms instead of approximating.
class AnalyticAtom {
 public:
  AnalyticAtom(std::string name, std::vector<VarId> vars, int max_order, JetEvaluator evaluator);

  const std::string& name() const { return name_; }
  const std::vector<VarId>& vars() const { return vars_; }
  int max_order() const { return max_order_; }
  bool depends_on(VarId v) const;

  // `vars`/`point` describe the caller's jet context; the atom extracts its
  // own variables from it. Throws std::domain_error beyond max_order.
  Jet jet(std::span<const VarId> vars, std::span<const double> point, int order) const;

 private:
  std::string name_;
  std::vector<VarId> vars_;
  int max_order_;
  JetEvaluator evaluator_;
};

class AtomRegistry {
 public:
  static void register_atom(std::shared_ptr<const AnalyticAtom> atom);
  static std::shared_ptr<const AnalyticAtom> find(std::string_view name);  // nullptr if absent
  // sin, cos, exp of the first transverse coordinate x1.
  static void register_builtins();
};

// Spec operation: Taylor coefficients of an atom-backed or polynomial
// expression at `point` in the atom's own variables.
Jet jet_evaluate(const Expr& f, std::span<const VarId> vars, std::span<const double> point, int order);

}  // namespace ambientlab
