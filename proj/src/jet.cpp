#include "ambientlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ambientlab {

namespace {

void enumerate(int dim, int order, std::vector<int>& current, int remaining, int slot,
               std::vector<int>& flat, std::vector<int>& offsets, std::vector<int>& degrees,
               int degree) {
  if (slot == dim) {
    offsets.push_back(static_cast<int>(flat.size()));
    degrees.push_back(degree);
    flat.insert(flat.end(), current.begin(), current.end());
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[static_cast<size_t>(slot)] = e;
    enumerate(dim, order, current, remaining - e, slot + 1, flat, offsets, degrees, degree + e);
  }
}

}  // namespace

MultiIndexSet::MultiIndexSet(int dim, int order) : dim_(dim), order_(order) {
  std::vector<int> current(static_cast<size_t>(dim), 0);
  // Enumerate by total degree so that index 0 is the constant term and the
  // layout is graded.
  for (int d = 0; d <= order; ++d) {
    std::vector<int> flat, offsets, degrees;
    std::vector<int> cur(static_cast<size_t>(dim), 0);
    enumerate(dim, order, cur, d, 0, flat, offsets, degrees, 0);
    for (size_t k = 0; k < offsets.size(); ++k) {
      std::span<const int> a(flat.data() + offsets[k], static_cast<size_t>(dim));
      int total = 0;
      for (int e : a) total += e;
      if (total != d) continue;
      offsets_.push_back(static_cast<int>(flat_.size()));
      degrees_.push_back(d);
      flat_.insert(flat_.end(), a.begin(), a.end());
    }
  }
}

const MultiIndexSet& MultiIndexSet::get(int dim, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, MultiIndexSet> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({dim, order});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(dim, order), MultiIndexSet(dim, order)).first;
  return it->second;
}

std::span<const int> MultiIndexSet::alpha(int idx) const {
  return {flat_.data() + offsets_[static_cast<size_t>(idx)], static_cast<size_t>(dim_)};
}

int MultiIndexSet::rank(std::span<const int> alpha) const {
  int total = 0;
  for (int e : alpha) total += e;
  if (total > order_) return -1;
  for (int i = 0; i < size(); ++i) {
    auto a = this->alpha(i);
    if (std::equal(a.begin(), a.end(), alpha.begin(), alpha.end())) return i;
  }
  return -1;
}

Jet Jet::constant(int dim, int order, double v) {
  Jet j;
  j.dim_ = dim;
  j.order_ = order;
  j.coeffs_.assign(static_cast<size_t>(MultiIndexSet::get(dim, order).size()), 0.0);
  j.coeffs_[0] = v;
  return j;
}

Jet Jet::coordinate(int dim, int order, int slot, double base_value) {
  Jet j = constant(dim, order, base_value);
  if (order >= 1) {
    std::vector<int> alpha(static_cast<size_t>(dim), 0);
    alpha[static_cast<size_t>(slot)] = 1;
    j.coeffs_[static_cast<size_t>(MultiIndexSet::get(dim, order).rank(alpha))] = 1.0;
  }
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  if (shapeless()) {
    for (int e : alpha)
      if (e != 0) return 0.0;
    return coeffs_[0];
  }
  const int r = MultiIndexSet::get(dim_, order_).rank(alpha);
  if (r < 0) throw std::out_of_range("jet coefficient beyond truncation order");
  return coeffs_[static_cast<size_t>(r)];
}

Jet Jet::shaped(int dim, int order) const {
  if (!shapeless()) {
    if (dim != dim_) throw std::invalid_argument("jet dimension mismatch");
    return truncated(order);
  }
  return constant(dim, order, coeffs_[0]);
}

void Jet::unify(const Jet& a, const Jet& b, Jet& ua, Jet& ub) {
  if (a.shapeless() && b.shapeless()) {
    ua = a;
    ub = b;
    return;
  }
  const int dim = a.shapeless() ? b.dim_ : a.dim_;
  const int order = a.shapeless() ? b.order_ : (b.shapeless() ? a.order_ : std::min(a.order_, b.order_));
  ua = a.shaped(dim, order);
  ub = b.shaped(dim, order);
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet x, y;
  Jet::unify(a, b, x, y);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  return x;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet x, y;
  Jet::unify(a, b, x, y);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
  return x;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet x, y;
  Jet::unify(a, b, x, y);
  if (x.shapeless()) {
    x.coeffs_[0] *= y.coeffs_[0];
    return x;
  }
  const auto& mis = MultiIndexSet::get(x.dim_, x.order_);
  Jet out = Jet::constant(x.dim_, x.order_, 0.0);
  std::vector<int> sum(static_cast<size_t>(x.dim_));
  for (int i = 0; i < mis.size(); ++i) {
    if (x.coeffs_[static_cast<size_t>(i)] == 0.0) continue;
    const auto ai = mis.alpha(i);
    for (int j = 0; j < mis.size(); ++j) {
      if (mis.degree(i) + mis.degree(j) > x.order_) break;  // graded layout
      if (y.coeffs_[static_cast<size_t>(j)] == 0.0) continue;
      const auto aj = mis.alpha(j);
      for (int k = 0; k < x.dim_; ++k) sum[static_cast<size_t>(k)] = ai[static_cast<size_t>(k)] + aj[static_cast<size_t>(k)];
      const int r = mis.rank(sum);
      out.coeffs_[static_cast<size_t>(r)] +=
          x.coeffs_[static_cast<size_t>(i)] * y.coeffs_[static_cast<size_t>(j)];
    }
  }
  return out;
}

Jet Jet::reciprocal() const {
  if (value() == 0.0) throw std::domain_error("jet reciprocal: zero constant term");
  if (shapeless()) return Jet(1.0 / value());
  // Newton iteration r <- r(2 - x r); doubles the correct order each step.
  Jet r = constant(dim_, order_, 1.0 / value());
  const Jet two = constant(dim_, order_, 2.0);
  int correct = 0;
  while (correct < order_) {
    r = r * (two - *this * r);
    correct = correct == 0 ? 1 : correct * 2;
  }
  return r;
}

Jet Jet::derivative(int slot) const {
  if (shapeless()) return Jet(0.0);
  if (order_ == 0) throw std::domain_error("jet derivative: order exhausted");
  const int new_order = order_ - 1;
  const auto& mis_out = MultiIndexSet::get(dim_, new_order);
  const auto& mis_in = MultiIndexSet::get(dim_, order_);
  Jet out = constant(dim_, new_order, 0.0);
  std::vector<int> shifted(static_cast<size_t>(dim_));
  for (int i = 0; i < mis_out.size(); ++i) {
    auto a = mis_out.alpha(i);
    std::copy(a.begin(), a.end(), shifted.begin());
    shifted[static_cast<size_t>(slot)] += 1;
    const int r = mis_in.rank(shifted);
    out.coeffs_[static_cast<size_t>(i)] =
        coeffs_[static_cast<size_t>(r)] * shifted[static_cast<size_t>(slot)];
  }
  return out;
}

Jet Jet::truncated(int new_order) const {
  if (shapeless()) return *this;
  if (new_order > order_) throw std::invalid_argument("cannot extend a jet");
  if (new_order == order_) return *this;
  const auto& mis_out = MultiIndexSet::get(dim_, new_order);
  Jet out = constant(dim_, new_order, 0.0);
  // Graded layout: the first mis_out.size() coefficients coincide.
  std::copy(coeffs_.begin(), coeffs_.begin() + mis_out.size(), out.coeffs_.begin());
  return out;
}

double Jet::max_abs_coeff() const {
  double m = 0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace ambientlab
