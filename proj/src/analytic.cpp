#include "ambientlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ambientlab {

AnalyticAtom::AnalyticAtom(std::string name, std::vector<VarId> vars, int max_order,
                           JetEvaluator evaluator)
    : name_(std::move(name)), vars_(std::move(vars)), max_order_(max_order),
      evaluator_(std::move(evaluator)) {}

bool AnalyticAtom::depends_on(VarId v) const {
  return std::find(vars_.begin(), vars_.end(), v) != vars_.end();
}

Jet AnalyticAtom::jet(std::span<const VarId> vars, std::span<const double> point, int order) const {
  if (order > max_order_)
    throw std::domain_error("atom '" + name_ + "': requested jet order " + std::to_string(order) +
                            " exceeds registered order " + std::to_string(max_order_));
  std::vector<double> own_point;
  own_point.reserve(vars_.size());
  for (VarId v : vars_) {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end())
      throw std::invalid_argument("atom '" + name_ + "': variable '" + SymbolTable::name(v) +
                                  "' missing from jet context");
    own_point.push_back(point[static_cast<size_t>(it - vars.begin())]);
  }
  Jet own = evaluator_(own_point, order);
  if (vars_.size() == vars.size()) {
    bool same = true;
    for (size_t i = 0; i < vars_.size(); ++i) same = same && vars_[i] == vars[i];
    if (same) return own;
  }
  // Re-embed the atom's jet into the caller's (larger) variable context.
  const int dim = static_cast<int>(vars.size());
  Jet out = Jet::constant(dim, order, 0.0);
  const auto& own_mis = MultiIndexSet::get(static_cast<int>(vars_.size()), order);
  const auto& mis = MultiIndexSet::get(dim, order);
  std::vector<int> embedded(static_cast<size_t>(dim), 0);
  std::vector<double> coeffs(out.coeffs());
  for (int i = 0; i < own_mis.size(); ++i) {
    auto a = own_mis.alpha(i);
    std::fill(embedded.begin(), embedded.end(), 0);
    for (size_t k = 0; k < vars_.size(); ++k) {
      const auto slot = std::find(vars.begin(), vars.end(), vars_[k]) - vars.begin();
      embedded[static_cast<size_t>(slot)] = a[k];
    }
    coeffs[static_cast<size_t>(mis.rank(embedded))] = own.coeffs()[static_cast<size_t>(i)];
  }
  // Rebuild via arithmetic to keep Jet's internals private.
  Jet result = Jet::constant(dim, order, 0.0);
  for (int i = 0; i < mis.size(); ++i) {
    if (coeffs[static_cast<size_t>(i)] == 0.0) continue;
    Jet term = Jet::constant(dim, order, coeffs[static_cast<size_t>(i)]);
    auto a = mis.alpha(i);
    for (int k = 0; k < dim; ++k)
      for (int e = 0; e < a[static_cast<size_t>(k)]; ++e)
        term = term * (Jet::coordinate(dim, order, k, 0.0));
    result = result + term;
  }
  return result;
}

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const AnalyticAtom>, std::less<>> atoms;
};

Registry& registry() {
  static Registry r;
  return r;
}

// Jet of a univariate function from its derivative sequence at the point.
Jet jet_from_derivatives(std::span<const double> derivs, int order) {
  Jet out = Jet::constant(1, order, derivs[0]);
  Jet delta = Jet::coordinate(1, order, 0, 0.0);
  Jet power = Jet::constant(1, order, 1.0);
  double fact = 1.0;
  for (int k = 1; k <= order; ++k) {
    power = power * delta;
    fact *= k;
    out = out + Jet::constant(1, order, derivs[static_cast<size_t>(k)] / fact) * power;
  }
  return out;
}

}  // namespace

void AtomRegistry::register_atom(std::shared_ptr<const AnalyticAtom> atom) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  r.atoms[atom->name()] = std::move(atom);
}

std::shared_ptr<const AnalyticAtom> AtomRegistry::find(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  auto it = r.atoms.find(name);
  return it == r.atoms.end() ? nullptr : it->second;
}

void AtomRegistry::register_builtins() {
  const VarId x1 = SymbolTable::intern("x1");
  constexpr int kMaxOrder = 64;
  auto make = [&](const char* name, auto deriv_fn) {
    register_atom(std::make_shared<AnalyticAtom>(
        name, std::vector<VarId>{x1}, kMaxOrder,
        [deriv_fn](std::span<const double> point, int order) {
          std::vector<double> derivs(static_cast<size_t>(order) + 1);
          for (int k = 0; k <= order; ++k) derivs[static_cast<size_t>(k)] = deriv_fn(point[0], k);
          return jet_from_derivatives(derivs, order);
        }));
  };
  make("sin", [](double x, int k) {
    switch (k % 4) {
      case 0: return std::sin(x);
      case 1: return std::cos(x);
      case 2: return -std::sin(x);
      default: return -std::cos(x);
    }
  });
  make("cos", [](double x, int k) {
    switch (k % 4) {
      case 0: return std::cos(x);
      case 1: return -std::sin(x);
      case 2: return -std::cos(x);
      default: return std::sin(x);
    }
  });
  make("exp", [](double x, int) { return std::exp(x); });
}

Jet jet_evaluate(const Expr& f, std::span<const VarId> vars, std::span<const double> point, int order) {
  return f.jet_at(vars, point, order);
}

}  // namespace ambientlab
