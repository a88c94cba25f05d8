#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chernlab/group.hpp"
#include "chernlab/rational.hpp"

namespace chernlab {

/// Hard ceiling on simplex dimension; per-build caps must stay below it.
inline constexpr int kGlobalDimCap = 8;
inline constexpr int kDefaultMaxDim = 4;

/// Finite simplicial complex with enumerated simplices per dimension.
/// Vertices are integers 0..n-1; simplices are strictly increasing vertex
/// lists. Optionally carries a vertex metric and a simplicial group action.
/// Immutable once built (builders attach metric/action before handing out).
class SimplicialComplex {
 public:
  SimplicialComplex(int vertex_count, std::vector<std::vector<std::vector<int>>> simplices_by_dim)
      : vertex_count_(vertex_count), simplices_(std::move(simplices_by_dim)) {
    if (vertex_count_ < 0) throw std::invalid_argument("negative vertex count");
    for (auto& list : simplices_) std::sort(list.begin(), list.end());
    for (int k = 0; k < static_cast<int>(simplices_.size()); ++k) {
      for (const auto& s : simplices_[k]) {
        if (static_cast<int>(s.size()) != k + 1)
          throw std::invalid_argument("simplex listed under wrong dimension");
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] < 0 || s[i] >= vertex_count_)
            throw std::invalid_argument("simplex vertex out of range");
          if (i + 1 < s.size() && s[i] >= s[i + 1])
            throw std::invalid_argument("simplex vertices must be strictly increasing");
        }
        simplex_set_.insert(s);
      }
    }
    // face closure
    for (int k = 1; k < static_cast<int>(simplices_.size()); ++k) {
      for (const auto& s : simplices_[k]) {
        std::vector<int> face(s.size() - 1);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
          face.clear();
          for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) face.push_back(s[i]);
          if (!simplex_set_.count(face))
            throw std::invalid_argument("complex is not closed under faces");
        }
      }
    }
  }

  int vertex_count() const { return vertex_count_; }

  int dim() const {
    for (int k = static_cast<int>(simplices_.size()) - 1; k >= 0; --k)
      if (!simplices_[k].empty()) return k;
    return -1;
  }

  bool empty() const { return dim() < 0; }

  const std::vector<std::vector<int>>& simplices(int k) const {
    static const std::vector<std::vector<int>> kEmpty;
    if (k < 0 || k >= static_cast<int>(simplices_.size())) return kEmpty;
    return simplices_[k];
  }

  bool has_simplex(const std::vector<int>& sorted_verts) const {
    return simplex_set_.count(sorted_verts) > 0;
  }

  void attach_metric(std::vector<std::vector<Rational>> metric) {
    if (static_cast<int>(metric.size()) != vertex_count_)
      throw std::invalid_argument("metric has wrong size");
    for (int v = 0; v < vertex_count_; ++v) {
      if (static_cast<int>(metric[v].size()) != vertex_count_)
        throw std::invalid_argument("metric has wrong size");
      if (metric[v][v] != 0) throw std::invalid_argument("metric diagonal must be zero");
      for (int w = 0; w < vertex_count_; ++w) {
        if (metric[v][w] < 0 || metric[v][w] != metric[w][v])
          throw std::invalid_argument("metric must be symmetric and non-negative");
      }
    }
    metric_ = std::move(metric);
  }

  bool has_metric() const { return metric_.has_value(); }

  const Rational& metric(int v, int w) const {
    if (!metric_) throw std::logic_error("complex carries no vertex metric");
    return (*metric_)[v][w];
  }

  void attach_action(std::shared_ptr<const FiniteGroup> group,
                     std::vector<std::vector<int>> vertex_perms) {
    if (!group) throw std::invalid_argument("null group");
    if (static_cast<int>(vertex_perms.size()) != group->order())
      throw std::invalid_argument("one vertex permutation per group element required");
    for (const auto& perm : vertex_perms) {
      if (static_cast<int>(perm.size()) != vertex_count_)
        throw std::invalid_argument("vertex permutation has wrong size");
      std::vector<bool> seen(vertex_count_, false);
      for (int v : perm) {
        if (v < 0 || v >= vertex_count_ || seen[v])
          throw std::invalid_argument("vertex action is not a permutation");
        seen[v] = true;
      }
    }
    // action must be simplicial: images of simplices are simplices
    for (int g = 0; g < group->order(); ++g) {
      for (const auto& list : simplices_) {
        for (const auto& s : list) {
          std::vector<int> image;
          image.reserve(s.size());
          for (int v : s) image.push_back(vertex_perms[g][v]);
          std::sort(image.begin(), image.end());
          if (!simplex_set_.count(image))
            throw std::invalid_argument("group action is not simplicial");
        }
      }
    }
    group_ = std::move(group);
    action_ = std::move(vertex_perms);
  }

  bool has_action() const { return group_ != nullptr; }

  const FiniteGroup& group() const {
    if (!group_) throw std::logic_error("complex carries no group action");
    return *group_;
  }

  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }

  int act(int g, int v) const {
    if (!group_) throw std::logic_error("complex carries no group action");
    return action_[g][v];
  }

  const std::vector<std::vector<int>>& vertex_perms() const { return action_; }

  std::optional<std::vector<std::vector<Rational>>> metric_copy() const { return metric_; }

 private:
  int vertex_count_;
  std::vector<std::vector<std::vector<int>>> simplices_;
  std::set<std::vector<int>> simplex_set_;
  std::optional<std::vector<std::vector<Rational>>> metric_;
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<std::vector<int>> action_;
};

/// Rips complex P_d: vertex set is the group, a subset spans a simplex iff all
/// pairwise word distances are <= d. Carries the word metric on vertices and
/// the left-translation action. Enumeration is capped at max_dim.
inline SimplicialComplex build_rips(std::shared_ptr<const FiniteGroup> group,
                                    const WordMetric& metric, const Rational& d, int max_dim) {
  if (max_dim < 0 || max_dim > kGlobalDimCap)
    throw std::invalid_argument("max_dim out of range");
  if (d < 0) throw std::invalid_argument("Rips scale must be non-negative");
  if (&metric.group() != group.get())
    throw std::invalid_argument("metric group does not match");
  int n = group->order();
  auto close = [&](int x, int y) { return Rational(metric.distance(x, y)) <= d; };

  std::vector<std::vector<std::vector<int>>> simplices(max_dim + 1);
  for (int v = 0; v < n; ++v) simplices[0].push_back({v});
  for (int k = 1; k <= max_dim; ++k) {
    for (const auto& s : simplices[k - 1]) {
      for (int v = s.back() + 1; v < n; ++v) {
        bool ok = true;
        for (int w : s) {
          if (!close(w, v)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          auto ext = s;
          ext.push_back(v);
          simplices[k].push_back(std::move(ext));
        }
      }
    }
    if (simplices[k].empty()) {
      simplices.resize(k);
      break;
    }
  }

  SimplicialComplex cx(n, std::move(simplices));
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) dist[x][y] = metric.distance(x, y);
  cx.attach_metric(std::move(dist));
  std::vector<std::vector<int>> perms(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int v = 0; v < n; ++v) perms[g][v] = group->multiply(g, v);
  cx.attach_action(group, std::move(perms));
  return cx;
}

/// Subcomplex X_{g,r}: all simplices whose vertices v satisfy d(v, g.v) <= r.
/// The result keeps the ambient vertex numbering and carries no action of its
/// own (the ambient group seldom preserves it); metric queries go through the
/// ambient complex.
inline SimplicialComplex fixed_subcomplex(const SimplicialComplex& x, int g, const Rational& r) {
  if (!x.has_metric()) throw std::logic_error("fixed subcomplex requires a vertex metric");
  if (!x.has_action()) throw std::logic_error("fixed subcomplex requires a group action");
  if (r < 0) throw std::invalid_argument("r must be non-negative");
  std::vector<bool> keep(x.vertex_count(), false);
  for (int v = 0; v < x.vertex_count(); ++v) keep[v] = x.metric(v, x.act(g, v)) <= r;
  std::vector<std::vector<std::vector<int>>> simplices(x.dim() + 1 < 0 ? 0 : x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    for (const auto& s : x.simplices(k)) {
      bool ok = true;
      for (int v : s) {
        if (!keep[v]) {
          ok = false;
          break;
        }
      }
      if (ok) simplices[k].push_back(s);
    }
  }
  return SimplicialComplex(x.vertex_count(), std::move(simplices));
}

/// Subcomplex of simplices fixed pointwise by g.
inline SimplicialComplex pointwise_fixed_subcomplex(const SimplicialComplex& x, int g) {
  if (!x.has_action()) throw std::logic_error("fixed-point subcomplex requires a group action");
  std::vector<std::vector<std::vector<int>>> simplices(x.dim() + 1 < 0 ? 0 : x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    for (const auto& s : x.simplices(k)) {
      bool ok = true;
      for (int v : s) {
        if (x.act(g, v) != v) {
          ok = false;
          break;
        }
      }
      if (ok) simplices[k].push_back(s);
    }
  }
  return SimplicialComplex(x.vertex_count(), std::move(simplices));
}

struct TwistedComponent {
  int g;
  SimplicialComplex subcomplex;
};

/// Union over g of components (g, X_g) inside Gamma_fin x X, closed under the
/// diagonal action gamma.(g, x) = (gamma g gamma^-1, gamma x).
class TwistedSpace {
 public:
  TwistedSpace(const SimplicialComplex& base, Rational r, std::vector<TwistedComponent> components)
      : base_(&base), r_(std::move(r)) {
    std::sort(components.begin(), components.end(),
              [](const TwistedComponent& a, const TwistedComponent& b) { return a.g < b.g; });
    components_ = std::move(components);
    index_.assign(base.has_action() ? base.group().order() : 0, -1);
    for (int i = 0; i < static_cast<int>(components_.size()); ++i) {
      int g = components_[i].g;
      if (g < 0 || g >= static_cast<int>(index_.size()))
        throw std::invalid_argument("component element out of range");
      if (index_[g] >= 0) throw std::invalid_argument("duplicate component");
      index_[g] = i;
      // subcomplex of base
      const auto& sub = components_[i].subcomplex;
      for (int k = 0; k <= sub.dim(); ++k)
        for (const auto& s : sub.simplices(k))
          if (!base.has_simplex(s))
            throw std::invalid_argument("component is not a subcomplex of the base");
    }
    validate_diagonal_closure();
  }

  const SimplicialComplex& base() const { return *base_; }
  const Rational& r() const { return r_; }
  const std::vector<TwistedComponent>& components() const { return components_; }

  const SimplicialComplex* component(int g) const {
    if (g < 0 || g >= static_cast<int>(index_.size()) || index_[g] < 0) return nullptr;
    return &components_[index_[g]].subcomplex;
  }

  const FiniteGroup& group() const { return base_->group(); }

 private:
  void validate_diagonal_closure() const {
    const FiniteGroup& grp = base_->group();
    for (const auto& comp : components_) {
      for (int gamma = 0; gamma < grp.order(); ++gamma) {
        int g2 = grp.conjugate(gamma, comp.g);
        const SimplicialComplex* target = component(g2);
        for (int k = 0; k <= comp.subcomplex.dim(); ++k) {
          for (const auto& s : comp.subcomplex.simplices(k)) {
            std::vector<int> image;
            image.reserve(s.size());
            for (int v : s) image.push_back(base_->act(gamma, v));
            std::sort(image.begin(), image.end());
            if (target == nullptr || !target->has_simplex(image))
              throw std::invalid_argument("components are not closed under the diagonal action");
          }
        }
      }
    }
  }

  const SimplicialComplex* base_;
  Rational r_;
  std::vector<TwistedComponent> components_;
  std::vector<int> index_;
};

/// Twisted space at scale r: one component per group element with nonempty
/// X_{g,r}.
inline TwistedSpace build_twisted_space(const SimplicialComplex& x, const Rational& r) {
  if (!x.has_metric()) throw std::logic_error("twisted space requires a vertex metric");
  if (!x.has_action()) throw std::logic_error("twisted space requires a group action");
  std::vector<TwistedComponent> comps;
  for (int g = 0; g < x.group().order(); ++g) {
    SimplicialComplex sub = fixed_subcomplex(x, g, r);
    if (!sub.empty()) comps.push_back({g, std::move(sub)});
  }
  return TwistedSpace(x, r, std::move(comps));
}

/// Fixed-point space: component per group element (possibly empty) of the
/// simplices fixed pointwise.
inline TwistedSpace build_fixed_point_space(const SimplicialComplex& x) {
  if (!x.has_action()) throw std::logic_error("fixed-point space requires a group action");
  std::vector<TwistedComponent> comps;
  for (int g = 0; g < x.group().order(); ++g)
    comps.push_back({g, pointwise_fixed_subcomplex(x, g)});
  return TwistedSpace(x, Rational(0), std::move(comps));
}

}  // namespace chernlab
