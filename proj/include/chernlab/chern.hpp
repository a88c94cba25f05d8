#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chernlab/chains.hpp"
#include "chernlab/complex.hpp"
#include "chernlab/homology.hpp"
#include "chernlab/kernel.hpp"

namespace chernlab {

/// Rips complex, twisted space and chain contexts for one (group, generators,
/// d) configuration. Contexts cache canonical bases, so keep one workspace per
/// configuration. Not copyable: contexts point into the owned spaces.
class ChernWorkspace {
 public:
  ChernWorkspace(std::shared_ptr<const FiniteGroup> group, const std::vector<int>& generators,
                 Rational d, int max_dim = kDefaultMaxDim)
      : group_(std::move(group)),
        gens_(*group_, generators),
        metric_(gens_),
        d_(std::move(d)),
        max_dim_(max_dim),
        rips_(build_rips(group_, metric_, d_, max_dim)),
        hat_(build_twisted_space(rips_, d_)) {}

  ChernWorkspace(const ChernWorkspace&) = delete;
  ChernWorkspace& operator=(const ChernWorkspace&) = delete;

  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  const WordMetric& metric() const { return metric_; }
  const Rational& d() const { return d_; }
  int max_dim() const { return max_dim_; }
  const SimplicialComplex& rips() const { return rips_; }
  const TwistedSpace& hat() const { return hat_; }

  ChainContext& ctx(Theory th) const {
    auto key = std::make_pair(th.name(), false);
    auto it = contexts_.find(key);
    if (it == contexts_.end())
      it = contexts_.emplace(key, std::make_unique<ChainContext>(rips_, th)).first;
    return *it->second;
  }

  ChainContext& twisted_ctx(Theory th) const {
    auto key = std::make_pair(th.name(), true);
    auto it = contexts_.find(key);
    if (it == contexts_.end())
      it = contexts_.emplace(key, std::make_unique<ChainContext>(hat_, th)).first;
    return *it->second;
  }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  GeneratingSet gens_;
  WordMetric metric_;
  Rational d_;
  int max_dim_;
  SimplicialComplex rips_;
  TwistedSpace hat_;
  mutable std::map<std::pair<std::string, bool>, std::unique_ptr<ChainContext>> contexts_;
};

enum class ChernVariant { torsion_free, twisted };

/// Connes-Chern character chain of an idempotent pair. The torsion-free
/// variant has one invariant simplicial component per even degree <= n; the
/// twisted variant has a single twisted cyclic component in degree n.
struct ChernClass {
  ChernVariant variant = ChernVariant::torsion_free;
  int n = 0;
  Rational d;
  Rational r;                      // twisted scale (equal to d here)
  std::map<int, Chain> components;  // degree -> cycle
};

/// tr(q(x_0, x_1) q(x_1, x_2) ... q(x_k, g^-1 x_0)); the torsion-free formula
/// is the case g = e.
inline QI trace_around(const IdempotentPair& p, const std::vector<int>& tuple, int g) {
  const FiniteGroup& grp = p.q.group();
  int k = static_cast<int>(tuple.size()) - 1;
  int wrap = grp.multiply(grp.inverse(g), tuple[0]);
  Mat acc = p.q.eval(tuple[0], k == 0 ? wrap : tuple[1]);
  for (int i = 1; i <= k; ++i) acc = mat_mul(acc, p.q.eval(tuple[i], i == k ? wrap : tuple[i + 1]));
  return mat_trace(acc);
}

inline void require_chern_preconditions(const ChernWorkspace& ws, const IdempotentPair& p,
                                        int n) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("Chern degree n must be even");
  if (!is_idempotent_pair(p)) throw std::invalid_argument("input is not an idempotent pair");
  Rational prop = p.q.propagation(ws.metric());
  if (ws.d() < (n + 1) * prop)
    throw std::invalid_argument("Rips scale too small: need d >= (n+1) * propagation");
}

/// Character with components in invariant simplicial chains, one per even
/// degree k <= n: sum over all orderings of all k-simplices of the trace of
/// the cyclic product of kernel values. Every component is cycle-checked.
inline ChernClass chern_torsion_free(const ChernWorkspace& ws, const IdempotentPair& p, int n) {
  require_chern_preconditions(ws, p, n);
  ChernClass out{ChernVariant::torsion_free, n, ws.d(), ws.d(), {}};
  const ChainContext& plain = ws.ctx(theories::simplicial);
  const ChainContext& inv = ws.ctx(theories::invariant_simplicial);
  int e = ws.group().identity();
  for (int k = 0; k <= n; k += 2) {
    Chain acc = plain.zero(k);
    for (const auto& simplex : ws.rips().simplices(k)) {
      std::vector<int> tuple = simplex;
      std::sort(tuple.begin(), tuple.end());
      do {
        QI coeff = trace_around(p, tuple, e);
        if (coeff.is_zero()) continue;
        Canon c = plain.canonicalize(-1, tuple, k);
        if (!c.zero) acc.add(c.key, coeff * QI(c.sign));
      } while (std::next_permutation(tuple.begin(), tuple.end()));
    }
    Chain component = inv.collect(acc, true);
    if (!inv.boundary(component).is_zero())
      throw std::logic_error("Chern component is not a cycle");
    out.components.emplace(k, std::move(component));
  }
  return out;
}

/// Twisted character: one invariant twisted cyclic chain in degree n, summing
/// tr(q(x_0,x_1)...q(x_n, g^-1 x_0)) over ordered n-tuples of each component
/// X_{g,d}. Cycle-checked.
inline ChernClass chern_twisted(const ChernWorkspace& ws, const IdempotentPair& p, int n) {
  require_chern_preconditions(ws, p, n);
  ChernClass out{ChernVariant::twisted, n, ws.d(), ws.d(), {}};
  const ChainContext& plain = ws.twisted_ctx(theories::g_cyclic);
  const ChainContext& inv = ws.twisted_ctx(theories::twisted_cyclic);
  Chain acc = plain.zero(n);
  for (const auto& comp : ws.hat().components()) {
    int top = std::min(n, comp.subcomplex.dim());
    for (int s = 0; s <= top; ++s) {
      for (const auto& simplex : comp.subcomplex.simplices(s)) {
        detail::foreach_surjective_tuple(simplex, n + 1, [&](const std::vector<int>& tuple) {
          QI coeff = trace_around(p, tuple, comp.g);
          if (coeff.is_zero()) return;
          Canon c = plain.canonicalize(comp.g, tuple, n);
          if (!c.zero) acc.add(c.key, coeff * QI(c.sign));
        });
      }
    }
  }
  Chain component = inv.collect(acc, true);
  if (!inv.boundary(component).is_zero())
    throw std::logic_error("twisted Chern chain is not a cycle");
  out.components.emplace(n, std::move(component));
  return out;
}

/// Truncation to degrees <= n (the projection between character targets).
inline ChernClass truncate(const ChernClass& c, int n) {
  ChernClass out = c;
  out.n = n;
  for (auto it = out.components.begin(); it != out.components.end();) {
    if (it->first > n) {
      it = out.components.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

/// Largest vertex-set diameter over the terms of every component, measured in
/// the word metric. Terms of invariant chains are expanded over their orbits
/// first.
inline Rational support_diameter(const ChernWorkspace& ws, const ChernClass& c) {
  Rational best(0);
  for (const auto& [degree, chain] : c.components) {
    const ChainContext& ctx = c.variant == ChernVariant::torsion_free
                                  ? ws.ctx(chain.theory)
                                  : ws.twisted_ctx(chain.theory);
    Chain expanded = chain.theory.invariant ? ctx.expand(chain) : chain;
    for (const auto& [key, coeff] : expanded.terms) {
      for (std::size_t i = 0; i < key.verts.size(); ++i)
        for (std::size_t j = i + 1; j < key.verts.size(); ++j)
          best = std::max(best, Rational(ws.metric().distance(key.verts[i], key.verts[j])));
    }
  }
  return best;
}

/// Per-degree homology-class comparison of two characters at the same scales.
inline bool chern_class_compare(const ChernWorkspace& ws, const ChernClass& a,
                                const ChernClass& b) {
  if (a.variant != b.variant || a.d != b.d || a.r != b.r)
    throw std::invalid_argument("Chern class scale mismatch");
  std::vector<int> degrees;
  for (const auto& [k, chain] : a.components) degrees.push_back(k);
  for (const auto& [k, chain] : b.components)
    if (!a.components.count(k)) degrees.push_back(k);
  for (int k : degrees) {
    const ChainContext& ctx = a.variant == ChernVariant::torsion_free
                                  ? ws.ctx(theories::invariant_simplicial)
                                  : ws.twisted_ctx(theories::twisted_cyclic);
    auto za = a.components.count(k) ? a.components.at(k) : ctx.zero(k);
    auto zb = b.components.count(k) ? b.components.at(k) : ctx.zero(k);
    if (!class_equal(ctx, za, zb)) return false;
  }
  return true;
}

}  // namespace chernlab
