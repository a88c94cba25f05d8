#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernlab/chains.hpp"
#include "chernlab/homology.hpp"

namespace chernlab {

struct RawTerm {
  int g = -1;
  std::vector<int> tuple;
  QI coeff;
};

/// Linear map between chain theories, defined element-wise on plain symbols
/// and extended linearly; target symbols are re-canonicalized on the way in.
/// The chain-map identity is checked by verify_chain_map, never assumed.
class ChainMap {
 public:
  using Rule = std::function<std::vector<RawTerm>(int src_degree, const ChainKey&)>;

  ChainMap(std::string name, const ChainContext& src, const ChainContext& dst, int degree_shift,
           Rule rule)
      : name_(std::move(name)), src_(&src), dst_(&dst), shift_(degree_shift),
        rule_(std::move(rule)) {}

  const std::string& name() const { return name_; }
  const ChainContext& source() const { return *src_; }
  const ChainContext& target() const { return *dst_; }
  int degree_shift() const { return shift_; }

  Chain apply(const Chain& chain) const {
    if (!(chain.theory == src_->theory()))
      throw std::invalid_argument("chain does not belong to the source theory");
    int dst_degree = chain.degree - shift_;
    if (dst_degree < 0) return Chain{dst_->theory(), dst_degree, {}};
    Chain plain = src_->theory().invariant ? src_->expand(chain) : chain;
    Chain out{dst_->theory().plain(), dst_degree, {}};
    for (const auto& [key, coeff] : plain.terms) {
      for (const RawTerm& t : rule_(chain.degree, key)) {
        Canon c = dst_->canonicalize(t.g, t.tuple, dst_degree);
        if (!c.zero) out.add(c.key, coeff * t.coeff * QI(c.sign));
      }
    }
    if (dst_->theory().invariant) return dst_->collect(out, true);
    return out;
  }

 private:
  std::string name_;
  const ChainContext* src_;
  const ChainContext* dst_;
  int shift_;
  Rule rule_;
};

struct ChainMapCheck {
  int degree = 0;
  bool pass = false;
  std::optional<ChainKey> witness;  // first basis symbol violating the identity
};

struct ChainMapReport {
  std::string map_name;
  std::vector<ChainMapCheck> degrees;
  bool all_pass = true;
};

/// Exact check of boundary compatibility on every basis element of the source
/// in the given degree range. Failures are reported with a witness, not
/// thrown.
inline ChainMapReport verify_chain_map(const ChainMap& f, int degree_lo, int degree_hi) {
  ChainMapReport report{f.name(), {}, true};
  for (int k = degree_lo; k <= degree_hi; ++k) {
    ChainMapCheck check{k, true, std::nullopt};
    const auto& basis = f.source().basis(k);
    for (const auto& entry : basis.entries) {
      Chain e = f.source().unit(entry.rep, k);
      Chain lhs = f.target().boundary(f.apply(e));
      Chain rhs = f.apply(f.source().boundary(e));
      if (!chain_equal(lhs, rhs)) {
        check.pass = false;
        check.witness = entry.rep;
        break;
      }
    }
    report.all_pass = report.all_pass && check.pass;
    report.degrees.push_back(std::move(check));
  }
  return report;
}

// ---------------------------------------------------------------------------
// The comparison maps between the ordered-reduced, cyclic, and simplicial
// theories, and the quotient/averaging pair for the twisted theory.

/// ordered tuple -> cyclically oriented simplex (same degree)
inline ChainMap chi(const ChainContext& ordered_src, const ChainContext& cyclic_dst) {
  return ChainMap("chi", ordered_src, cyclic_dst, 0,
                  [](int, const ChainKey& key) -> std::vector<RawTerm> {
                    return {{-1, key.verts, QI(1)}};
                  });
}

/// ordered tuple -> oriented simplex (tuples with a repeat die in the target)
inline ChainMap phi_diag(const ChainContext& ordered_src, const ChainContext& simplicial_dst) {
  return ChainMap("phi_diag", ordered_src, simplicial_dst, 0,
                  [](int, const ChainKey& key) -> std::vector<RawTerm> {
                    return {{-1, key.verts, QI(1)}};
                  });
}

/// Removes the smallest repeated pair (dictionary order on (i, j)) with sign
/// (-1)^(j-i+1); nullopt when all vertices are distinct.
inline std::optional<std::pair<std::vector<int>, int>> collapse_repeat(
    const std::vector<int>& tuple) {
  int n = static_cast<int>(tuple.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (tuple[i] == tuple[j]) {
        std::vector<int> out;
        out.reserve(n - 2);
        for (int p = 0; p < n; ++p)
          if (p != i && p != j) out.push_back(tuple[p]);
        return std::make_pair(std::move(out), (j - i + 1) % 2 == 0 ? 1 : -1);
      }
    }
  }
  return std::nullopt;
}

/// ordered tuple of degree k -> oriented simplex of degree k - 2j, collapsing
/// the smallest repeated pair j times. j = 0 recovers phi_diag.
inline ChainMap phi_general(const ChainContext& ordered_src, const ChainContext& simplicial_dst,
                            int degree_drop) {
  if (degree_drop < 0 || degree_drop % 2 != 0)
    throw std::invalid_argument("degree drop must be even and non-negative");
  int steps = degree_drop / 2;
  std::string name = degree_drop == 2 ? "phi_drop2" : "phi_drop" + std::to_string(degree_drop);
  if (degree_drop == 0) name = "phi_diag";
  return ChainMap(name, ordered_src, simplicial_dst, degree_drop,
                  [steps](int, const ChainKey& key) -> std::vector<RawTerm> {
                    std::vector<int> t = key.verts;
                    int sign = 1;
                    for (int s = 0; s < steps; ++s) {
                      auto collapsed = collapse_repeat(t);
                      if (!collapsed) return {};
                      t = std::move(collapsed->first);
                      sign *= collapsed->second;
                    }
                    return {{-1, std::move(t), QI(sign)}};
                  });
}

inline ChainMap phi_drop2(const ChainContext& ordered_src, const ChainContext& simplicial_dst) {
  return phi_general(ordered_src, simplicial_dst, 2);
}

/// The direct sum psi_n = (+)_{l <= n, n-l even} phi_{n,l}, represented by its
/// components.
inline std::vector<ChainMap> psi_components(const ChainContext& ordered_src,
                                            const ChainContext& simplicial_dst, int n) {
  std::vector<ChainMap> out;
  for (int l = n; l >= 0; l -= 2) out.push_back(phi_general(ordered_src, simplicial_dst, n - l));
  return out;
}

/// twisted cyclic -> quotient by per-coordinate powers of g
inline ChainMap quotient_map(const ChainContext& twisted_src, const ChainContext& quotient_dst) {
  return ChainMap("quotient", twisted_src, quotient_dst, 0,
                  [](int, const ChainKey& key) -> std::vector<RawTerm> {
                    return {{key.g, key.verts, QI(1)}};
                  });
}

/// quotient class -> average over all per-coordinate translates, with weight
/// 1 / n_g^(k+1). The target space must carry every translate; pick its scale
/// accordingly.
inline ChainMap averaging_map(const ChainContext& quotient_src, const ChainContext& twisted_dst) {
  const TwistedSpace* tw = quotient_src.twisted_space();
  if (!tw) throw std::invalid_argument("averaging map needs a twisted source");
  const SimplicialComplex* base = &tw->base();
  return ChainMap(
      "averaging", quotient_src, twisted_dst, 0,
      [base](int degree, const ChainKey& key) -> std::vector<RawTerm> {
        const FiniteGroup& grp = base->group();
        int ng = grp.element_order(key.g);
        int len = degree + 1;
        std::vector<int> powers(ng);
        for (int e = 0; e < ng; ++e) powers[e] = grp.power(key.g, e);
        Rational total = 1;
        for (int i = 0; i < len; ++i) total *= ng;
        QI weight{Rational(1) / total};
        std::vector<RawTerm> out;
        std::vector<int> exps(len, 0);
        while (true) {
          std::vector<int> translated(len);
          for (int i = 0; i < len; ++i) translated[i] = base->act(powers[exps[i]], key.verts[i]);
          out.push_back({key.g, std::move(translated), weight});
          int pos = 0;
          while (pos < len && ++exps[pos] == ng) exps[pos++] = 0;
          if (pos == len) break;
        }
        return out;
      });
}

/// Re-canonicalizing inclusion into the same theory over a larger carrier.
inline ChainMap inclusion_map(const ChainContext& src, const ChainContext& dst) {
  if (!(src.theory() == dst.theory()))
    throw std::invalid_argument("inclusion requires matching theories");
  return ChainMap("inclusion", src, dst, 0,
                  [](int, const ChainKey& key) -> std::vector<RawTerm> {
                    return {{key.g, key.verts, QI(1)}};
                  });
}

// ---------------------------------------------------------------------------
// Induced maps on homology: images of the source cycle basis are solved
// exactly against (target cycle basis | target boundaries); the matrix of
// cycle-basis coordinates is the induced map.

struct InducedMap {
  bool defined = false;  // images are cycles and lie in the solved span
  int src_betti = 0;
  int dst_betti = 0;
  std::vector<std::vector<QI>> matrix;  // dst_betti rows, src_betti cols
  bool invertible = false;
};

namespace detail {

/// Solver for homology coordinates in a fixed target degree.
struct HomologyCoordinateSolver {
  const ChainContext* ctx;
  HomologyResult hom;
  SparseMatrix span;  // [cycle basis columns | boundary columns]

  HomologyCoordinateSolver(const ChainContext& c, int degree) : ctx(&c), hom(homology(c, degree)) {
    BoundaryMatrix above = assemble_boundary(c, degree + 1);
    span.rows = c.basis(degree).size();
    span.cols = hom.betti + above.mat.cols;
    for (const Chain& z : hom.cycle_basis) span.col.push_back(vectorize(c, z));
    for (auto& col : above.mat.col) span.col.push_back(col);
  }

  std::optional<std::vector<QI>> coords(const Chain& z) const {
    if (!ctx->boundary(z).is_zero()) return std::nullopt;
    auto x = solve(span, vectorize(*ctx, z));
    if (!x) return std::nullopt;
    std::vector<QI> out(hom.betti, QI(0));
    for (const auto& [idx, v] : x->e)
      if (idx < hom.betti) out[idx] = v;
    return out;
  }
};

inline bool dense_invertible(const std::vector<std::vector<QI>>& m) {
  if (m.empty()) return true;  // 0 x 0
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m.front().size());
  if (rows != cols) return false;
  SparseMatrix sm;
  sm.rows = rows;
  sm.cols = cols;
  sm.col.resize(cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) sm.col[j].add(i, m[i][j]);
  return rank(sm) == rows;
}

}  // namespace detail

/// Induced map of a single chain map at one source degree.
inline InducedMap induced_on_homology(const ChainMap& f, int src_degree) {
  InducedMap out;
  HomologyResult src_hom = homology(f.source(), src_degree);
  detail::HomologyCoordinateSolver target(f.target(), src_degree - f.degree_shift());
  out.src_betti = src_hom.betti;
  out.dst_betti = target.hom.betti;
  out.matrix.assign(out.dst_betti, std::vector<QI>(out.src_betti, QI(0)));
  out.defined = true;
  for (int j = 0; j < src_hom.betti; ++j) {
    auto coords = target.coords(f.apply(src_hom.cycle_basis[j]));
    if (!coords) {
      out.defined = false;
      return out;
    }
    for (int i = 0; i < out.dst_betti; ++i) out.matrix[i][j] = (*coords)[i];
  }
  out.invertible = out.src_betti == out.dst_betti && detail::dense_invertible(out.matrix);
  return out;
}

/// Induced map of a direct sum of chain maps (shared source, per-component
/// target degrees), with the component blocks stacked.
inline InducedMap induced_direct_sum(const std::vector<ChainMap>& components, int src_degree) {
  InducedMap out;
  if (components.empty()) return out;
  HomologyResult src_hom = homology(components.front().source(), src_degree);
  out.src_betti = src_hom.betti;
  out.defined = true;

  std::vector<detail::HomologyCoordinateSolver> targets;
  for (const auto& f : components)
    targets.emplace_back(f.target(), src_degree - f.degree_shift());
  for (const auto& t : targets) out.dst_betti += t.hom.betti;
  out.matrix.assign(out.dst_betti, std::vector<QI>(out.src_betti, QI(0)));

  for (int j = 0; j < src_hom.betti; ++j) {
    int row = 0;
    for (std::size_t c = 0; c < components.size(); ++c) {
      auto coords = targets[c].coords(components[c].apply(src_hom.cycle_basis[j]));
      if (!coords) {
        out.defined = false;
        return out;
      }
      for (int i = 0; i < targets[c].hom.betti; ++i) out.matrix[row + i][j] = (*coords)[i];
      row += targets[c].hom.betti;
    }
  }
  out.invertible = out.src_betti == out.dst_betti && detail::dense_invertible(out.matrix);
  return out;
}

}  // namespace chernlab
