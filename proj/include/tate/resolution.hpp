#pragma once

#include "tate/gmodule.hpp"

#include <map>

namespace tate {

/// A free resolution ... -> P_2 -> P_1 -> P_0 -> Z -> 0 over Z[G], built
/// degree by degree: each kernel is computed as a lattice and a small set of
/// Z[G]-generators is chosen greedily from its Hermite basis.
///
/// P_r = Z[G]^{rank(r)} has Z-basis g.e_j at index j * |G| + g.
class FreeResolution {
 public:
  using Tuple = std::vector<int>;
  using BarChain = std::map<Tuple, Integer>;

  FreeResolution(FiniteGroup group, std::size_t length) : group_(std::move(group)) {
    ranks_.push_back(1);
    images_.emplace_back();
    extend(length);
  }

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t length() const noexcept { return ranks_.size() - 1; }
  std::size_t rank(std::size_t r) const { return ranks_.at(r); }

  /// d_r(e_j) as a vector in Z^{|G| rank(r-1)}, r >= 1.
  const IntVector& boundary_of_generator(std::size_t r, std::size_t j) const { return images_.at(r).at(j); }

  /// g.v for v in P_r.
  IntVector translate(int g, const IntVector& v) const {
    const std::size_t n = group_.order();
    IntVector out(v.size());
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      if (v[idx] == 0) continue;
      const std::size_t i = idx / n;
      const std::size_t h = idx % n;
      out[i * n + group_.mul(g, int(h))] = v[idx];
    }
    return out;
  }

  /// Z-matrix of d_r : P_r -> P_{r-1}; r = 0 gives the augmentation P_0 -> Z.
  IntMatrix boundary_matrix(std::size_t r) const {
    const std::size_t n = group_.order();
    if (r == 0) {
      IntMatrix m(1, n);
      for (std::size_t g = 0; g < n; ++g) m(0, g) = 1;
      return m;
    }
    IntMatrix m(n * ranks_.at(r - 1), n * ranks_.at(r));
    for (std::size_t j = 0; j < ranks_[r]; ++j)
      for (std::size_t g = 0; g < n; ++g) m.set_column(j * n + g, translate(int(g), images_[r][j]));
    return m;
  }

  /// Comparison chain map P -> bar resolution on generators, built with the
  /// contracting homotopy (x_0..x_k) -> (1, x_0..x_k). Tuples are homogeneous.
  const BarChain& to_bar(std::size_t r, std::size_t j) const {
    std::lock_guard<std::mutex> lock(bar_mutex_);
    while (to_bar_.size() <= r) {
      const std::size_t k = to_bar_.size();
      std::vector<BarChain> level(ranks_.at(k));
      if (k == 0) {
        level[0][Tuple{group_.identity()}] = 1;
      } else {
        const std::size_t n = group_.order();
        for (std::size_t jj = 0; jj < ranks_[k]; ++jj) {
          BarChain acc;
          const IntVector& v = images_[k][jj];
          for (std::size_t idx = 0; idx < v.size(); ++idx) {
            if (v[idx] == 0) continue;
            const int g = static_cast<int>(idx % n);
            for (const auto& [tuple, c] : to_bar_[k - 1][idx / n]) {
              Tuple t;
              t.reserve(tuple.size() + 1);
              t.push_back(group_.identity());
              for (int x : tuple) t.push_back(group_.mul(g, x));
              acc[t] += v[idx] * c;
            }
          }
          for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
          level[jj] = std::move(acc);
        }
      }
      to_bar_.push_back(std::move(level));
    }
    return to_bar_[r][j];
  }

  /// Element y_g of P_1 with d_1(y_g) = g - 1, the degree-1 part of a chain
  /// map from the bar resolution back to P.
  const IntVector& from_bar_degree1(int g) const {
    std::lock_guard<std::mutex> lock(bar_mutex_);
    if (from_bar1_.empty()) {
      const IntMatrix d1 = boundary_matrix(1);
      const SmithForm f = smith_normal_form(d1);
      const std::size_t n = group_.order();
      for (std::size_t h = 0; h < n; ++h) {
        IntVector target(n);
        target[h] += 1;
        target[group_.identity()] -= 1;
        const IntVector ub = f.left * target;
        IntVector y(d1.cols());
        const std::size_t k = std::min(d1.rows(), d1.cols());
        for (std::size_t i = 0; i < d1.rows(); ++i) {
          const Integer di = i < k ? f.diagonal(i, i) : Integer(0);
          if (di == 0) {
            if (ub[i] != 0) throw InternalError("resolution: g - 1 is not a boundary");
            continue;
          }
          if (ub[i] % di != 0) throw InternalError("resolution: g - 1 is not an integral boundary");
          y[i] = ub[i] / di;
        }
        from_bar1_.push_back(f.right * y);
      }
    }
    return from_bar1_.at(g);
  }

  void extend(std::size_t length) {
    while (ranks_.size() <= length) add_degree();
  }

 private:
  void add_degree() {
    const std::size_t r = ranks_.size();  // building P_r and d_r
    const std::size_t n = group_.order();
    const IntMatrix prev = boundary_matrix(r - 1);
    const Lattice ker = Lattice::span(prev.cols(), columns_of(kernel_basis(prev)));
    std::vector<IntVector> candidates;
    if (r == 1) {
      for (int s : group_.generators()) {
        IntVector v(n);
        v[s] += 1;
        v[group_.identity()] -= 1;
        candidates.push_back(std::move(v));
      }
    }
    std::vector<IntVector> basis = ker.basis();
    std::stable_sort(basis.begin(), basis.end(), [](const IntVector& a, const IntVector& b) {
      return weight(a) < weight(b);
    });
    candidates.insert(candidates.end(), basis.begin(), basis.end());

    std::vector<IntVector> chosen;
    Lattice span(prev.cols());
    for (const auto& c : candidates) {
      if (span.rank() == ker.rank() && span.contains(ker)) break;
      if (span.contains(c)) continue;
      chosen.push_back(c);
      for (std::size_t g = 0; g < n; ++g) span.insert(translate(int(g), c));
    }
    if (!(span.rank() == ker.rank() && span.contains(ker)))
      throw InternalError("resolution: chosen generators do not span the kernel");
    // Drop redundant generators.
    for (std::size_t i = chosen.size(); i-- > 0;) {
      if (chosen.size() == 1) break;
      Lattice rest(prev.cols());
      for (std::size_t k = 0; k < chosen.size(); ++k)
        if (k != i)
          for (std::size_t g = 0; g < n; ++g) rest.insert(translate(int(g), chosen[k]));
      if (rest.contains(ker)) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (ker.rank() == 0) chosen.clear();
    ranks_.push_back(chosen.size());
    images_.push_back(std::move(chosen));
  }

  static std::vector<IntVector> columns_of(const IntMatrix& m) {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
    return out;
  }

  static std::pair<std::size_t, Integer> weight(const IntVector& v) {
    std::size_t nz = 0;
    Integer mx = 0;
    for (const auto& x : v)
      if (x != 0) {
        ++nz;
        if (abs(x) > mx) mx = abs(x);
      }
    return {nz, mx};
  }

  FiniteGroup group_;
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<IntVector>> images_;
  mutable std::mutex bar_mutex_;
  mutable std::vector<std::vector<BarChain>> to_bar_;
  mutable std::vector<IntVector> from_bar1_;
};

/// Shared, lazily extended resolution of a group (thread-safe).
inline std::shared_ptr<const FreeResolution> resolution_for(const FiniteGroup& g, std::size_t length) {
  std::lock_guard<std::mutex> lock(g.cache_mutex());
  auto& cached = g.resolution_cache();
  if (!cached || cached->length() < length) cached = std::make_shared<const FreeResolution>(g, length);
  return cached;
}

}  // namespace tate
