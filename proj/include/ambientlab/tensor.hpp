#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ambientlab {

// Dense covariant-component container with symmetry-aware canonical storage.
// Tags:
//   dense       - no symmetry, full storage, rank 1..4
//   symmetric2  - rank 2, S_ij = S_ji, stores i <= j
//   christoffel - rank 3 G^a_{bc} symmetric in bc, stores b <= c
//   riemann     - rank 4 with R_{abcd} = -R_{bacd} = -R_{abdc} = R_{cdab},
//                 stores a < b, c < d, pair(a,b) <= pair(c,d)
// Writes go through canonical indices (for_each_canonical / set); reads apply
// the symmetry signs. First Bianchi is NOT imposed by storage.
template <class S>
class TensorComponents {
 public:
  enum class Sym { dense, symmetric2, christoffel, riemann };

  TensorComponents() = default;

  static TensorComponents dense(int dim, int rank) {
    size_t n = 1;
    for (int r = 0; r < rank; ++r) n *= static_cast<size_t>(dim);
    return TensorComponents(dim, rank, Sym::dense, n);
  }
  static TensorComponents symmetric2(int dim) {
    return TensorComponents(dim, 2, Sym::symmetric2, tri(dim));
  }
  static TensorComponents christoffel(int dim) {
    return TensorComponents(dim, 3, Sym::christoffel, static_cast<size_t>(dim) * tri(dim));
  }
  static TensorComponents riemann(int dim) {
    const size_t pairs = static_cast<size_t>(dim) * (static_cast<size_t>(dim) - 1) / 2;
    return TensorComponents(dim, 4, Sym::riemann, pairs * (pairs + 1) / 2);
  }

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  Sym sym() const { return sym_; }
  size_t storage_size() const { return data_.size(); }
  const std::vector<S>& storage() const { return data_; }

  S get(std::span<const int> idx) const {
    assert(static_cast<int>(idx.size()) == rank_);
    switch (sym_) {
      case Sym::dense:
        return data_[dense_offset(idx)];
      case Sym::symmetric2: {
        int i = idx[0], j = idx[1];
        if (i > j) std::swap(i, j);
        return data_[tri_offset(i, j)];
      }
      case Sym::christoffel: {
        int b = idx[1], c = idx[2];
        if (b > c) std::swap(b, c);
        return data_[static_cast<size_t>(idx[0]) * tri(dim_) + tri_offset(b, c)];
      }
      case Sym::riemann: {
        int a = idx[0], b = idx[1], c = idx[2], d = idx[3];
        if (a == b || c == d) return S(0);
        int sign = 1;
        if (a > b) { std::swap(a, b); sign = -sign; }
        if (c > d) { std::swap(c, d); sign = -sign; }
        size_t p = pair_index(a, b), q = pair_index(c, d);
        if (p > q) std::swap(p, q);
        const S& v = data_[q * (q + 1) / 2 + p];
        return sign > 0 ? v : -v;
      }
    }
    throw std::logic_error("unreachable");
  }
  S get(int a) const { return get(std::array{a}); }
  S get(int a, int b) const { return get(std::array{a, b}); }
  S get(int a, int b, int c) const { return get(std::array{a, b, c}); }
  S get(int a, int b, int c, int d) const { return get(std::array{a, b, c, d}); }

  // Canonical write access; `idx` must already be canonical for the tag.
  S& at(std::span<const int> idx) {
    switch (sym_) {
      case Sym::dense:
        return data_[dense_offset(idx)];
      case Sym::symmetric2:
        assert(idx[0] <= idx[1]);
        return data_[tri_offset(idx[0], idx[1])];
      case Sym::christoffel:
        assert(idx[1] <= idx[2]);
        return data_[static_cast<size_t>(idx[0]) * tri(dim_) + tri_offset(idx[1], idx[2])];
      case Sym::riemann: {
        assert(idx[0] < idx[1] && idx[2] < idx[3]);
        const size_t p = pair_index(idx[0], idx[1]), q = pair_index(idx[2], idx[3]);
        assert(p <= q);
        return data_[q * (q + 1) / 2 + p];
      }
    }
    throw std::logic_error("unreachable");
  }
  S& at(int a) { return at(std::array{a}); }
  S& at(int a, int b) { return at(std::array{a, b}); }
  S& at(int a, int b, int c) { return at(std::array{a, b, c}); }
  S& at(int a, int b, int c, int d) { return at(std::array{a, b, c, d}); }

  // Visits each canonical index tuple once: f(span<const int>, S&).
  template <class F>
  void for_each_canonical(F&& f) {
    for_each_offset([&](std::span<const int> idx, size_t off) { f(idx, data_[off]); });
  }
  template <class F>
  void for_each_canonical(F&& f) const {
    for_each_offset([&](std::span<const int> idx, size_t off) { f(idx, data_[off]); });
  }

  template <class Pred>
  bool all_of(Pred&& pred) const {
    for (const S& v : data_)
      if (!pred(v)) return false;
    return true;
  }

 private:
  TensorComponents(int dim, int rank, Sym sym, size_t n)
      : dim_(dim), rank_(rank), sym_(sym), data_(n, S(0)) {}

  template <class F>
  void for_each_offset(F&& f) const {
    std::array<int, 4> idx{};
    switch (sym_) {
      case Sym::dense: {
        std::vector<int> v(static_cast<size_t>(rank_), 0);
        size_t flat = 0;
        while (true) {
          f(std::span<const int>(v.data(), v.size()), flat);
          int r = rank_ - 1;
          while (r >= 0 && ++v[static_cast<size_t>(r)] == dim_) v[static_cast<size_t>(r--)] = 0;
          ++flat;
          if (r < 0) break;
        }
        return;
      }
      case Sym::symmetric2:
        for (int i = 0; i < dim_; ++i)
          for (int j = i; j < dim_; ++j) {
            idx = {i, j, 0, 0};
            f(std::span<const int>(idx.data(), 2), tri_offset(i, j));
          }
        return;
      case Sym::christoffel:
        for (int a = 0; a < dim_; ++a)
          for (int b = 0; b < dim_; ++b)
            for (int c = b; c < dim_; ++c) {
              idx = {a, b, c, 0};
              f(std::span<const int>(idx.data(), 3),
                static_cast<size_t>(a) * tri(dim_) + tri_offset(b, c));
            }
        return;
      case Sym::riemann:
        for (int a = 0; a < dim_; ++a)
          for (int b = a + 1; b < dim_; ++b)
            for (int c = 0; c < dim_; ++c)
              for (int d = c + 1; d < dim_; ++d) {
                const size_t p = pair_index(a, b), q = pair_index(c, d);
                if (p > q) continue;
                idx = {a, b, c, d};
                f(std::span<const int>(idx.data(), 4), q * (q + 1) / 2 + p);
              }
        return;
    }
  }

  size_t dense_offset(std::span<const int> idx) const {
    size_t o = 0;
    for (int r = 0; r < rank_; ++r) o = o * static_cast<size_t>(dim_) + static_cast<size_t>(idx[static_cast<size_t>(r)]);
    return o;
  }
  static size_t tri(int d) { return static_cast<size_t>(d) * (static_cast<size_t>(d) + 1) / 2; }
  size_t tri_offset(int i, int j) const {
    // i <= j within a dim_ x dim_ upper triangle
    return static_cast<size_t>(i) * static_cast<size_t>(dim_) - static_cast<size_t>(i) * (static_cast<size_t>(i) - 1) / 2 +
           static_cast<size_t>(j - i);
  }
  size_t pair_index(int a, int b) const {
    // a < b
    return static_cast<size_t>(a) * static_cast<size_t>(dim_) - static_cast<size_t>(a) * (static_cast<size_t>(a) + 1) / 2 +
           static_cast<size_t>(b - a - 1);
  }

  int dim_ = 0;
  int rank_ = 0;
  Sym sym_ = Sym::dense;
  std::vector<S> data_;
};

}  // namespace ambientlab
