#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chernlab/chain_maps.hpp"
#include "chernlab/chains.hpp"
#include "chernlab/chern.hpp"
#include "chernlab/complex.hpp"
#include "chernlab/homology.hpp"
#include "chernlab/kernel.hpp"

namespace chernlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyConfig {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<int> generators;
  Rational d{1};
  int max_dim = kDefaultMaxDim;
  int chern_n = 2;  // used when a kernel is supplied
  std::optional<IdempotentPair> kernel;
  std::uint64_t seed = 1;
};

namespace detail {

inline int rand_below(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

/// Random plain chain with small integer and i coefficients.
inline Chain random_chain(std::mt19937_64& rng, const ChainContext& ctx, int degree, int terms) {
  const auto& basis = ctx.basis(degree);
  Chain out = ctx.zero(degree);
  if (basis.size() == 0) return out;
  for (int t = 0; t < terms; ++t) {
    const ChainKey& key = basis.entries[rand_below(rng, basis.size())].rep;
    QI coeff(Rational(rand_below(rng, 7) - 3), Rational(rand_below(rng, 3) - 1));
    out.add(key, coeff);
  }
  return out;
}

/// Random invertible matrix over Q(i), built from the identity by seeded
/// elementary row operations.
inline Mat random_invertible(std::mt19937_64& rng, int m) {
  Mat u = identity_matrix(m);
  for (int step = 0; step < 4 * m; ++step) {
    int i = rand_below(rng, m), j = rand_below(rng, m);
    if (i == j) continue;
    QI f(Rational(rand_below(rng, 5) - 2), Rational(rand_below(rng, 3) - 1));
    for (int c = 0; c < m; ++c) u[i][c] += f * u[j][c];
  }
  return u;
}

inline std::string key_to_string(const ChainKey& k) {
  std::ostringstream os;
  if (k.g >= 0) os << "g=" << k.g << " ";
  os << "(";
  for (std::size_t i = 0; i < k.verts.size(); ++i) os << (i ? "," : "") << k.verts[i];
  os << ")";
  return os.str();
}

}  // namespace detail

/// Metric axioms, left invariance, Lagrange divisibility.
inline CheckResult check_group_axioms(const VerifyConfig& cfg) {
  const FiniteGroup& g = *cfg.group;
  GeneratingSet gens(g, cfg.generators);
  WordMetric wm(gens);
  for (int x = 0; x < g.order(); ++x) {
    if (wm.distance(x, x) != 0) return {"group_axioms", false, "d(x,x) != 0"};
    for (int y = 0; y < g.order(); ++y) {
      if (wm.distance(x, y) != wm.distance(y, x)) return {"group_axioms", false, "not symmetric"};
      if (x != y && wm.distance(x, y) == 0) return {"group_axioms", false, "degenerate metric"};
      for (int z = 0; z < g.order(); ++z)
        if (wm.distance(x, z) > wm.distance(x, y) + wm.distance(y, z))
          return {"group_axioms", false, "triangle inequality fails"};
      for (int gamma = 0; gamma < g.order(); ++gamma)
        if (wm.distance(g.multiply(gamma, x), g.multiply(gamma, y)) != wm.distance(x, y))
          return {"group_axioms", false, "not left invariant"};
    }
    if (g.order() % g.element_order(x) != 0)
      return {"group_axioms", false, "element order does not divide group order"};
  }
  return {"group_axioms", true, ""};
}

/// P_d is monotone in d; X_{g,r} is monotone in r and equivariant.
inline CheckResult check_rips_monotone_equivariant(const VerifyConfig& cfg) {
  GeneratingSet gens(*cfg.group, cfg.generators);
  WordMetric wm(gens);
  SimplicialComplex small = build_rips(cfg.group, wm, cfg.d, cfg.max_dim);
  SimplicialComplex large = build_rips(cfg.group, wm, cfg.d + 1, cfg.max_dim);
  for (int k = 0; k <= small.dim(); ++k)
    for (const auto& s : small.simplices(k))
      if (!large.has_simplex(s)) return {"rips_monotone_equivariant", false, "P_d not monotone"};
  for (int g = 0; g < cfg.group->order(); ++g) {
    SimplicialComplex xl = fixed_subcomplex(small, g, cfg.d);
    SimplicialComplex xh = fixed_subcomplex(small, g, cfg.d + 1);
    for (int k = 0; k <= xl.dim(); ++k)
      for (const auto& s : xl.simplices(k))
        if (!xh.has_simplex(s))
          return {"rips_monotone_equivariant", false, "X_{g,r} not monotone in r"};
    for (int gamma = 0; gamma < cfg.group->order(); ++gamma) {
      SimplicialComplex target = fixed_subcomplex(small, cfg.group->conjugate(gamma, g), cfg.d);
      int count_target = 0, count_image = 0;
      for (int k = 0; k <= target.dim(); ++k)
        count_target += static_cast<int>(target.simplices(k).size());
      for (int k = 0; k <= xl.dim(); ++k) {
        for (auto s : xl.simplices(k)) {
          for (int& v : s) v = small.act(gamma, v);
          std::sort(s.begin(), s.end());
          if (!target.has_simplex(s))
            return {"rips_monotone_equivariant", false, "gamma.X_{g,r} not in X_{conj,r}"};
          ++count_image;
        }
      }
      if (count_image != count_target)
        return {"rips_monotone_equivariant", false, "equivariance is not onto"};
    }
  }
  return {"rips_monotone_equivariant", true, ""};
}

/// d(d(x)) = 0 as matrices for every theory over the configured spaces.
inline CheckResult check_boundary_squared(const ChernWorkspace& ws, int max_dim) {
  std::vector<std::pair<std::string, const ChainContext*>> ctxs;
  for (Theory th : {theories::simplicial, theories::invariant_simplicial, theories::cyclic,
                    theories::invariant_cyclic, theories::ordered_reduced})
    ctxs.emplace_back(th.name(), &ws.ctx(th));
  for (Theory th : {theories::twisted_cyclic, theories::g_cyclic, theories::twisted_quotient})
    ctxs.emplace_back("hat:" + th.name(), &ws.twisted_ctx(th));
  for (const auto& [name, ctx] : ctxs) {
    for (int k = 1; k + 1 <= max_dim; ++k) {
      BoundaryMatrix at = assemble_boundary(*ctx, k);
      BoundaryMatrix above = assemble_boundary(*ctx, k + 1);
      if (!is_zero(multiply(at.mat, above.mat)))
        return {"boundary_squared", false,
                name + " fails at degrees (" + std::to_string(k) + "," + std::to_string(k + 1) + ")"};
    }
  }
  return {"boundary_squared", true, ""};
}

/// Canonicalization is idempotent and constant on rotation/reorder inputs.
inline CheckResult check_canonicalization(const ChernWorkspace& ws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SimplicialComplex& cx = ws.rips();
  for (Theory th : {theories::cyclic, theories::ordered}) {
    const ChainContext& ctx = ws.ctx(th);
    for (int trial = 0; trial < 200; ++trial) {
      int k = detail::rand_below(rng, std::min(4, std::max(1, cx.dim() + 2)));
      int s = detail::rand_below(rng, std::min(k, cx.dim()) + 1);
      const auto& simplices = cx.simplices(s);
      if (simplices.empty()) continue;
      const auto& simplex = simplices[detail::rand_below(rng, simplices.size())];
      std::vector<int> tuple(k + 1);
      for (int i = 0; i <= k; ++i) tuple[i] = simplex[detail::rand_below(rng, simplex.size())];
      Canon c = ctx.canonicalize(-1, tuple, k);
      if (c.zero) continue;
      Canon again = ctx.canonicalize(-1, c.key.verts, k);
      if (again.zero || again.key != c.key || again.sign != 1)
        return {"canonicalization", false, "not idempotent at " + detail::key_to_string(c.key)};
      if (th.base == BaseTheory::cyclic) {
        std::vector<int> rotated(tuple.size());
        rotated[0] = tuple.back();
        std::copy(tuple.begin(), tuple.end() - 1, rotated.begin() + 1);
        Canon r = ctx.canonicalize(-1, rotated, k);
        int expect = (k % 2 == 0) ? c.sign : -c.sign;
        if (r.zero || r.key != c.key || r.sign != expect)
          return {"canonicalization", false, "rotation changes the class"};
      }
    }
  }
  return {"canonicalization", true, ""};
}

/// Boundary commutes with the orbit-average projection on random chains.
inline CheckResult check_projection_commutes(const ChernWorkspace& ws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (Theory th : {theories::simplicial, theories::cyclic}) {
    const ChainContext& ctx = ws.ctx(th);
    for (int k = 1; k <= std::min(3, ws.max_dim()); ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        Chain z = detail::random_chain(rng, ctx, k, 6);
        Chain lhs = ctx.boundary(ctx.invariant_projection(z));
        Chain rhs = ctx.invariant_projection(ctx.boundary(z));
        if (!chain_equal(lhs, rhs))
          return {"projection_commutes", false, th.name() + " at degree " + std::to_string(k)};
      }
    }
  }
  const ChainContext& tw = ws.twisted_ctx(theories::g_cyclic);
  for (int k = 1; k <= std::min(2, ws.max_dim()); ++k) {
    for (int trial = 0; trial < 5; ++trial) {
      Chain z = detail::random_chain(rng, tw, k, 6);
      Chain lhs = tw.boundary(tw.invariant_projection(z));
      Chain rhs = tw.invariant_projection(tw.boundary(z));
      if (!chain_equal(lhs, rhs))
        return {"projection_commutes", false, "g_cyclic at degree " + std::to_string(k)};
    }
  }
  return {"projection_commutes", true, ""};
}

/// Equivariant cyclic homology against the parity sum of invariant simplicial
/// homology, both sides computed independently.
inline CheckResult check_cyclic_dimension_identity(const ChernWorkspace& ws, int n_max) {
  const ChainContext& cyc = ws.ctx(theories::invariant_cyclic);
  const ChainContext& simp = ws.ctx(theories::invariant_simplicial);
  std::ostringstream detail;
  for (int n = 0; n <= n_max; ++n) {
    int lhs = homology(cyc, n).betti;
    int rhs = 0;
    for (int k = n % 2; k <= n; k += 2) rhs += homology(simp, k).betti;
    detail << "n=" << n << ":" << lhs << "|" << rhs << " ";
    if (lhs != rhs)
      return {"cyclic_dimension_identity", false,
              "n=" + std::to_string(n) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs)};
  }
  return {"cyclic_dimension_identity", true, detail.str()};
}

/// Chain-map identities for the comparison maps, all degrees <= deg_max.
inline CheckResult check_chain_map_harness(const ChernWorkspace& ws, int deg_max) {
  const ChainContext& ord = ws.ctx(theories::ordered_reduced);
  const ChainContext& cyc = ws.ctx(theories::invariant_cyclic);
  const ChainContext& simp = ws.ctx(theories::invariant_simplicial);
  std::vector<ChainMap> maps;
  maps.push_back(chi(ord, cyc));
  maps.push_back(phi_diag(ord, simp));
  maps.push_back(phi_drop2(ord, simp));
  for (int n = 0; n <= deg_max; ++n)
    for (auto& comp : psi_components(ord, simp, n))
      if (comp.degree_shift() > 2) maps.push_back(std::move(comp));
  for (const ChainMap& f : maps) {
    ChainMapReport rep = verify_chain_map(f, std::max(0, f.degree_shift()), deg_max);
    if (!rep.all_pass) {
      for (const auto& check : rep.degrees)
        if (!check.pass)
          return {"chain_map_harness", false,
                  f.name() + " fails at degree " + std::to_string(check.degree) +
                      (check.witness ? " witness " + detail::key_to_string(*check.witness) : "")};
    }
  }
  return {"chain_map_harness", true, ""};
}

/// Induced isomorphisms of chi and psi on homology, degrees <= deg_max.
inline CheckResult check_chain_map_isos(const ChernWorkspace& ws, int deg_max) {
  const ChainContext& ord = ws.ctx(theories::ordered_reduced);
  const ChainContext& cyc = ws.ctx(theories::invariant_cyclic);
  const ChainContext& simp = ws.ctx(theories::invariant_simplicial);
  ChainMap chi_map = chi(ord, cyc);
  std::ostringstream detail;
  for (int n = 0; n <= deg_max; ++n) {
    InducedMap ind = induced_on_homology(chi_map, n);
    detail << "chi@" << n << (ind.invertible ? "+" : "-");
    if (!ind.defined || !ind.invertible)
      return {"chain_map_isos", false,
              "chi is not an isomorphism at degree " + std::to_string(n) + " (" +
                  std::to_string(ind.src_betti) + " vs " + std::to_string(ind.dst_betti) + ")"};
    InducedMap psi = induced_direct_sum(psi_components(ord, simp, n), n);
    detail << " psi@" << n << (psi.invertible ? "+" : "-") << " ";
    if (!psi.defined || !psi.invertible)
      return {"chain_map_isos", false,
              "psi is not an isomorphism at degree " + std::to_string(n) + " (" +
                  std::to_string(psi.src_betti) + " vs " + std::to_string(psi.dst_betti) + ")"};
  }
  return {"chain_map_isos", true, detail.str()};
}

/// Quotient-then-average against the inclusion on twisted homology. The
/// averaging target lives at the smallest scale carrying every translate
/// (max(d, diameter)); when that equals d the check is the literal identity.
inline CheckResult check_averaging_identity(const ChernWorkspace& ws,
                                            const ChernWorkspace& target_ws, int n_max) {
  const ChainContext& tw = ws.twisted_ctx(theories::twisted_cyclic);
  const ChainContext& quot = ws.twisted_ctx(theories::twisted_quotient);
  const ChainContext& tw_big = target_ws.twisted_ctx(theories::twisted_cyclic);
  ChainMap phi = quotient_map(tw, quot);
  ChainMap psi = averaging_map(quot, tw_big);
  ChainMap incl = inclusion_map(tw, tw_big);
  ChainMapReport phi_rep = verify_chain_map(phi, 0, n_max + 1);
  if (!phi_rep.all_pass) return {"averaging_identity", false, "quotient map is not a chain map"};
  ChainMapReport psi_rep = verify_chain_map(psi, 0, n_max + 1);
  if (!psi_rep.all_pass) return {"averaging_identity", false, "averaging map is not a chain map"};
  for (int n = 0; n <= n_max; ++n) {
    HomologyResult hom = homology(tw, n);
    BoundaryMatrix at = assemble_boundary(tw_big, n);
    BoundaryMatrix above = assemble_boundary(tw_big, n + 1);
    for (const Chain& z : hom.cycle_basis) {
      Chain averaged = psi.apply(phi.apply(z));
      Chain included = incl.apply(z);
      if (!class_equal(tw_big, averaged, included, at, above))
        return {"averaging_identity", false,
                "psi(phi(z)) is not homologous to z at degree " + std::to_string(n)};
    }
  }
  return {"averaging_identity", true, ""};
}

// --------------------------------------------------------------------------
// Chern character checks

inline CheckResult check_chern_cycle(const ChernWorkspace& ws, const IdempotentPair& p, int n) {
  ChernClass tf = chern_torsion_free(ws, p, n);   // components are cycle-checked on build
  ChernClass tw = chern_twisted(ws, p, n);
  int terms = 0;
  for (const auto& [k, chain] : tf.components) terms += static_cast<int>(chain.terms.size());
  terms += static_cast<int>(tw.components.at(n).terms.size());
  return {"chern_cycle", true, std::to_string(terms) + " canonical terms"};
}

inline CheckResult check_chern_locality(const ChernWorkspace& ws, const IdempotentPair& p,
                                        int n) {
  Rational bound = (n + 1) * p.q.propagation(ws.metric());
  for (const ChernClass& c : {chern_torsion_free(ws, p, n), chern_twisted(ws, p, n)}) {
    Rational diam = support_diameter(ws, c);
    if (diam > bound)
      return {"chern_locality", false,
              "support diameter " + to_string(diam) + " exceeds " + to_string(bound)};
  }
  return {"chern_locality", true, ""};
}

inline CheckResult check_chern_conjugation(const ChernWorkspace& ws, const IdempotentPair& p,
                                           int n, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  ChernClass base = chern_torsion_free(ws, p, n);
  for (int t = 0; t < trials; ++t) {
    Mat u = detail::random_invertible(rng, p.m());
    IdempotentPair pc = conjugate(p, u);
    if (!is_idempotent_pair(pc)) return {"chern_conjugation", false, "conjugate not idempotent"};
    ChernClass other = chern_torsion_free(ws, pc, n);
    if (!chern_class_compare(ws, base, other))
      return {"chern_conjugation", false, "class changed under conjugation"};
  }
  return {"chern_conjugation", true, std::to_string(trials) + " conjugates"};
}

inline CheckResult check_chern_block_additivity(const ChernWorkspace& ws, const IdempotentPair& p,
                                                int n) {
  ChernClass single = chern_torsion_free(ws, p, n);
  ChernClass doubled = chern_torsion_free(ws, block_sum(p, p), n);
  for (const auto& [k, chain] : doubled.components) {
    Chain expect = single.components.at(k);
    expect += single.components.at(k);
    if (!chain_equal(chain, expect)) return {"chern_block_additivity", false, "degree " + std::to_string(k)};
  }
  return {"chern_block_additivity", true, ""};
}

inline CheckResult check_chern_truncation(const ChernWorkspace& ws, const IdempotentPair& p,
                                          int n, int n_prime) {
  ChernClass low = chern_torsion_free(ws, p, n);
  ChernClass high = chern_torsion_free(ws, p, n_prime);
  ChernClass projected = truncate(high, n);
  if (projected.components.size() != low.components.size())
    return {"chern_truncation", false, "component counts differ"};
  for (const auto& [k, chain] : low.components)
    if (!chain_equal(chain, projected.components.at(k)))
      return {"chern_truncation", false, "degree " + std::to_string(k) + " differs"};
  return {"chern_truncation", true, ""};
}

/// Full property suite for one configuration. Exceptions inside individual
/// checks become failed results, never aborts.
inline std::vector<CheckResult> verify_suite(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  auto guard = [&out](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };
  guard("group_axioms", [&] { return check_group_axioms(cfg); });
  guard("rips_monotone_equivariant", [&] { return check_rips_monotone_equivariant(cfg); });
  ChernWorkspace ws(cfg.group, cfg.generators, cfg.d, cfg.max_dim);
  guard("boundary_squared", [&] { return check_boundary_squared(ws, cfg.max_dim); });
  guard("canonicalization", [&] { return check_canonicalization(ws, cfg.seed); });
  guard("projection_commutes", [&] { return check_projection_commutes(ws, cfg.seed + 1); });
  int deg_max = std::min(3, cfg.max_dim - 1);
  guard("cyclic_dimension_identity", [&] { return check_cyclic_dimension_identity(ws, deg_max); });
  guard("chain_map_harness", [&] { return check_chain_map_harness(ws, deg_max); });
  guard("chain_map_isos", [&] { return check_chain_map_isos(ws, deg_max); });
  {
    GeneratingSet gens(*cfg.group, cfg.generators);
    WordMetric wm(gens);
    Rational big_d = std::max(cfg.d, Rational(wm.diameter()));
    int n_max = std::min(2, cfg.max_dim - 1);
    if (big_d == cfg.d) {
      guard("averaging_identity", [&] { return check_averaging_identity(ws, ws, n_max); });
    } else {
      ChernWorkspace big(cfg.group, cfg.generators, big_d, cfg.max_dim);
      guard("averaging_identity", [&] { return check_averaging_identity(ws, big, n_max); });
    }
  }
  if (cfg.kernel) {
    const IdempotentPair& p = *cfg.kernel;
    GeneratingSet gens(*cfg.group, cfg.generators);
    WordMetric wm(gens);
    int n = cfg.chern_n;
    Rational prop = p.q.propagation(wm);
    Rational need = (n + 3) * prop;  // room for the truncation check at n + 2
    Rational d = std::max(std::max(cfg.d, need), Rational(1));
    ChernWorkspace cws(cfg.group, cfg.generators, d, std::min(kGlobalDimCap, n + 3));
    if (!is_idempotent_pair(p)) {
      out.push_back({"chern_idempotent", false, "input fails the idempotent equations"});
    } else {
      out.push_back({"chern_idempotent", true, ""});
      guard("chern_cycle", [&] { return check_chern_cycle(cws, p, n); });
      guard("chern_locality", [&] { return check_chern_locality(cws, p, n); });
      guard("chern_conjugation", [&] { return check_chern_conjugation(cws, p, n, cfg.seed + 2, 3); });
      guard("chern_block_additivity", [&] { return check_chern_block_additivity(cws, p, n); });
      guard("chern_truncation", [&] { return check_chern_truncation(cws, p, n, n + 2); });
    }
  }
  return out;
}

}  // namespace chernlab
