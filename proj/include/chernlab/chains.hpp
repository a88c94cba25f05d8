#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chernlab/complex.hpp"
#include "chernlab/group.hpp"
#include "chernlab/rational.hpp"

namespace chernlab {

// The five chain theories are combinations of a base identification rule and
// an optional restriction to group-invariant chains:
//   simplicial          oriented simplices, even permutations identified
//   ordered             vertex tuples (repeats allowed), odd-degree constant
//                       tuples quotiented away ("reduced")
//   cyclic              tuples modulo rotation with sign (-1)^k per step
//   g_cyclic            tuples in a component (g, X_g) modulo the g-twisted
//                       rotation (v_0..v_k) -> (g v_k, v_0..v_{k-1})
//   g_cyclic_quotient   g_cyclic, additionally modulo per-coordinate
//                       translation by powers of g
enum class BaseTheory { simplicial, ordered, cyclic, g_cyclic, g_cyclic_quotient };

struct Theory {
  BaseTheory base = BaseTheory::simplicial;
  bool invariant = false;

  friend bool operator==(const Theory&, const Theory&) = default;

  std::string name() const {
    switch (base) {
      case BaseTheory::simplicial:
        return invariant ? "invariant" : "simplicial";
      case BaseTheory::ordered:
        return invariant ? "ordered_reduced" : "ordered";
      case BaseTheory::cyclic:
        return invariant ? "invariant_cyclic" : "cyclic";
      case BaseTheory::g_cyclic:
        return invariant ? "twisted_cyclic" : "g_cyclic";
      case BaseTheory::g_cyclic_quotient:
        return invariant ? "twisted_quotient" : "g_cyclic_quotient";
    }
    return "?";
  }

  Theory plain() const { return Theory{base, false}; }
};

namespace theories {
inline constexpr Theory simplicial{BaseTheory::simplicial, false};
inline constexpr Theory invariant_simplicial{BaseTheory::simplicial, true};
inline constexpr Theory ordered{BaseTheory::ordered, false};
inline constexpr Theory ordered_reduced{BaseTheory::ordered, true};
inline constexpr Theory cyclic{BaseTheory::cyclic, false};
inline constexpr Theory invariant_cyclic{BaseTheory::cyclic, true};
inline constexpr Theory g_cyclic{BaseTheory::g_cyclic, false};
inline constexpr Theory twisted_cyclic{BaseTheory::g_cyclic, true};
inline constexpr Theory g_cyclic_quotient{BaseTheory::g_cyclic_quotient, false};
inline constexpr Theory twisted_quotient{BaseTheory::g_cyclic_quotient, true};
}  // namespace theories

inline Theory theory_from_name(const std::string& name) {
  using namespace theories;
  for (Theory t : {simplicial, invariant_simplicial, ordered, ordered_reduced, cyclic,
                   invariant_cyclic, g_cyclic, twisted_cyclic, g_cyclic_quotient,
                   twisted_quotient}) {
    if (t.name() == name) return t;
  }
  throw std::invalid_argument("unknown chain theory '" + name + "'");
}

/// Canonical label of a basis symbol: component element g (-1 for untwisted
/// carriers) and a vertex list. Ordering is g-major, then lexicographic.
struct ChainKey {
  int g = -1;
  std::vector<int> verts;

  friend auto operator<=>(const ChainKey&, const ChainKey&) = default;
};

/// Result of canonicalization: either the zero class, or a canonical key
/// together with the sign relating the input symbol to the canonical one.
struct Canon {
  bool zero = true;
  ChainKey key;
  int sign = 1;

  static Canon zero_class() { return Canon{}; }
  static Canon of(ChainKey k, int s) { return Canon{false, std::move(k), s}; }
};

/// Sparse chain: canonical key -> Q(i) coefficient, no explicit zeros.
/// Invariant theories store one coefficient per orbit, keyed by the orbit
/// representative; per-element signs live in the basis expansion tables.
struct Chain {
  Theory theory;
  int degree = 0;
  std::map<ChainKey, QI> terms;

  bool is_zero() const { return terms.empty(); }

  void add(const ChainKey& key, const QI& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, coeff);
    } else {
      it->second += coeff;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  Chain& operator+=(const Chain& o) {
    if (!(theory == o.theory) || degree != o.degree)
      throw std::invalid_argument("chain theory/degree mismatch");
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
  }

  Chain scaled(const QI& s) const {
    Chain out{theory, degree, {}};
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms) out.terms.emplace(k, c * s);
    return out;
  }

  friend Chain operator-(const Chain& a, const Chain& b) {
    Chain out = a;
    out += b.scaled(QI(-1));
    return out;
  }
};

inline bool chain_equal(const Chain& a, const Chain& b) {
  if (!(a.theory == b.theory) || a.degree != b.degree)
    throw std::invalid_argument("chain theory/degree mismatch");
  return a.terms == b.terms;
}

namespace detail {

/// Calls fn for every length-sized tuple over the vertices of `simplex` that
/// uses every vertex at least once.
inline void foreach_surjective_tuple(const std::vector<int>& simplex, int length,
                                     const std::function<void(const std::vector<int>&)>& fn) {
  int s = static_cast<int>(simplex.size());
  if (length < s) return;
  std::vector<int> tuple(length);
  std::vector<int> count(s, 0);
  int used = 0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == length) {
      if (used == s) fn(tuple);
      return;
    }
    int remaining = length - pos;
    for (int i = 0; i < s; ++i) {
      int new_used = used + (count[i] == 0 ? 1 : 0);
      if (s - new_used > remaining - 1) continue;  // cannot cover the rest
      tuple[pos] = simplex[i];
      if (count[i]++ == 0) ++used;
      self(self, pos + 1);
      if (--count[i] == 0) --used;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// One chain theory over one carrier (a complex or a twisted space), with
/// cached canonical bases per degree. Not thread-safe; use one context per
/// thread.
class ChainContext {
 public:
  struct BasisEntry {
    ChainKey rep;
    // full orbit of the representative with signs relative to it; for plain
    // theories this is the singleton (rep, +1)
    std::vector<std::pair<ChainKey, int>> expansion;
  };

  struct Basis {
    std::vector<BasisEntry> entries;
    std::map<ChainKey, int> index_of;                  // representative -> index
    std::map<ChainKey, std::pair<int, int>> elem_rep;  // element -> (index, sign)
    std::set<ChainKey> forced_zero;                    // elements of sign-killed orbits

    int size() const { return static_cast<int>(entries.size()); }
  };

  ChainContext(const SimplicialComplex& cx, Theory th) : cx_(&cx), theory_(th) {
    if (th.base == BaseTheory::g_cyclic || th.base == BaseTheory::g_cyclic_quotient)
      throw std::invalid_argument("twisted theory requires a twisted space carrier");
    if (th.invariant && !cx.has_action())
      throw std::logic_error("invariant theory requires a group action");
  }

  ChainContext(const TwistedSpace& tw, Theory th) : tw_(&tw), theory_(th) {
    if (th.base == BaseTheory::ordered || th.base == BaseTheory::cyclic)
      throw std::invalid_argument("theory not defined over a twisted space");
    if ((th.invariant || th.base == BaseTheory::g_cyclic_quotient) && !tw.base().has_action())
      throw std::logic_error("theory requires a group action on the base");
  }

  const Theory& theory() const { return theory_; }
  bool twisted_carrier() const { return tw_ != nullptr; }
  const SimplicialComplex* complex() const { return cx_; }
  const TwistedSpace* twisted_space() const { return tw_; }

  const FiniteGroup* group() const {
    if (cx_) return cx_->has_action() ? &cx_->group() : nullptr;
    return tw_->base().has_action() ? &tw_->base().group() : nullptr;
  }

  /// Canonical form of a raw symbol. Throws if the vertex list is not carried
  /// by a simplex of the appropriate (sub)complex.
  Canon canonicalize(int g, std::vector<int> tuple, int degree) const {
    if (static_cast<int>(tuple.size()) != degree + 1)
      throw std::invalid_argument("tuple length does not match degree");
    if (!supported(g, tuple))
      throw std::invalid_argument("ordering not supported by any simplex");
    switch (theory_.base) {
      case BaseTheory::simplicial:
        return canon_oriented(g, std::move(tuple));
      case BaseTheory::ordered:
        return canon_ordered(g, std::move(tuple), degree);
      case BaseTheory::cyclic:
        return canon_rotation(-1, std::move(tuple));
      case BaseTheory::g_cyclic:
        return canon_rotation(g, std::move(tuple));
      case BaseTheory::g_cyclic_quotient:
        return canon_quotient(g, std::move(tuple));
    }
    return Canon::zero_class();
  }

  /// Image of a canonical key under the group action, re-canonicalized.
  Canon act(int gamma, const ChainKey& key) const {
    const FiniteGroup* grp = group();
    if (!grp) throw std::logic_error("carrier has no group action");
    const SimplicialComplex& base = cx_ ? *cx_ : tw_->base();
    std::vector<int> tuple;
    tuple.reserve(key.verts.size());
    for (int v : key.verts) tuple.push_back(base.act(gamma, v));
    int g2 = key.g < 0 ? -1 : grp->conjugate(gamma, key.g);
    return canonicalize(g2, std::move(tuple), static_cast<int>(key.verts.size()) - 1);
  }

  const Basis& basis(int degree) const {
    auto it = basis_cache_.find(degree);
    if (it != basis_cache_.end()) return it->second;
    return basis_cache_.emplace(degree, build_basis(degree)).first->second;
  }

  Chain zero(int degree) const { return Chain{theory_, degree, {}}; }

  Chain unit(const ChainKey& rep, int degree) const {
    const Basis& b = basis(degree);
    if (!b.index_of.count(rep)) throw std::invalid_argument("key is not a basis representative");
    Chain c{theory_, degree, {}};
    c.add(rep, QI(1));
    return c;
  }

  /// Alternating face sum, re-canonicalized; degree 0 maps to the zero chain.
  Chain boundary(const Chain& chain) const {
    require_theory(chain);
    if (theory_.invariant) return collect(plain_twin_boundary(expand(chain)), true);
    return plain_twin_boundary(chain);
  }

  /// Orbit-average projection onto invariant chains (plain theories only).
  Chain invariant_projection(const Chain& chain) const {
    require_theory(chain);
    if (theory_.invariant) return chain;  // idempotent by construction
    const FiniteGroup* grp = group();
    if (!grp) throw std::logic_error("carrier has no group action");
    Chain acc = zero(chain.degree);
    for (int gamma = 0; gamma < grp->order(); ++gamma) {
      for (const auto& [key, coeff] : chain.terms) {
        Canon c = act(gamma, key);
        if (!c.zero) acc.add(c.key, coeff * QI(c.sign));
      }
    }
    return acc.scaled(QI(Rational(1, grp->order())));
  }

  /// Element-wise form of an invariant chain, in the plain twin theory.
  Chain expand(const Chain& chain) const {
    require_theory(chain);
    if (!theory_.invariant) return chain;
    const Basis& b = basis(chain.degree);
    Chain out{theory_.plain(), chain.degree, {}};
    for (const auto& [rep, coeff] : chain.terms) {
      auto it = b.index_of.find(rep);
      if (it == b.index_of.end())
        throw std::invalid_argument("chain key is not a basis representative");
      for (const auto& [elem, sign] : b.entries[it->second].expansion)
        out.add(elem, coeff * QI(sign));
    }
    return out;
  }

  /// Orbit-wise form of an invariant element-wise chain. With validate set,
  /// throws if the input is not exactly invariant.
  Chain collect(const Chain& plain, bool validate = true) const {
    if (!theory_.invariant) throw std::logic_error("collect requires an invariant theory");
    if (!(plain.theory == theory_.plain()) )
      throw std::invalid_argument("collect expects the plain twin theory");
    const Basis& b = basis(plain.degree);
    Chain out{theory_, plain.degree, {}};
    for (const auto& [key, coeff] : plain.terms) {
      auto it = b.index_of.find(key);
      if (it != b.index_of.end()) out.add(key, coeff);
    }
    if (validate) {
      Chain back = expand(out);
      if (!(back.terms == plain.terms))
        throw std::logic_error("chain is not invariant under the group action");
    }
    return out;
  }

 private:
  void require_theory(const Chain& chain) const {
    if (!(chain.theory == theory_)) throw std::invalid_argument("chain belongs to another theory");
  }

  const SimplicialComplex* carrier_component(int g) const {
    if (cx_) {
      if (g != -1) throw std::invalid_argument("untwisted carrier takes g = -1");
      return cx_;
    }
    if (theory_.base == BaseTheory::simplicial || theory_.base == BaseTheory::g_cyclic ||
        theory_.base == BaseTheory::g_cyclic_quotient) {
      return tw_->component(g);
    }
    return nullptr;
  }

  bool supported(int g, const std::vector<int>& tuple) const {
    if (tuple.empty()) return false;
    const SimplicialComplex* comp = carrier_component(g);
    if (!comp) return false;
    std::vector<int> support(tuple);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return comp->has_simplex(support);
  }

  Canon canon_oriented(int g, std::vector<int> tuple) const {
    // repeated vertices kill an oriented simplex
    std::vector<int> sorted(tuple);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return Canon::zero_class();
    // parity of the sorting permutation by counting inversions
    int sign = 1;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      for (std::size_t j = i + 1; j < tuple.size(); ++j)
        if (tuple[i] > tuple[j]) sign = -sign;
    return Canon::of(ChainKey{g, std::move(sorted)}, sign);
  }

  Canon canon_ordered(int g, std::vector<int> tuple, int degree) const {
    if (degree % 2 == 1 &&
        std::all_of(tuple.begin(), tuple.end(), [&](int v) { return v == tuple[0]; }))
      return Canon::zero_class();
    return Canon::of(ChainKey{g, std::move(tuple)}, 1);
  }

  // Rotation orbit of a tuple under (v_0..v_k) -> (g v_k, v_0..v_{k-1}),
  // restricted to rotations whose image is still carried by the component.
  // The orbit is a simple cycle or a path; a cycle whose total sign is -1
  // annihilates the class.
  struct RotationOrbit {
    bool zero = false;
    std::vector<std::pair<std::vector<int>, int>> members;  // (tuple, sign rel input)
  };

  RotationOrbit rotation_orbit(int g, const std::vector<int>& start) const {
    const SimplicialComplex& base = cx_ ? *cx_ : tw_->base();
    int k = static_cast<int>(start.size()) - 1;
    int step_sign = (k % 2 == 0) ? 1 : -1;
    bool twist = g >= 0;
    int fwd_g = g, bwd_g = -1;
    if (twist) bwd_g = base.group().inverse(g);

    auto fwd = [&](const std::vector<int>& t) {
      std::vector<int> r(t.size());
      r[0] = twist ? base.act(fwd_g, t.back()) : t.back();
      std::copy(t.begin(), t.end() - 1, r.begin() + 1);
      return r;
    };
    auto bwd = [&](const std::vector<int>& t) {
      std::vector<int> r(t.size());
      std::copy(t.begin() + 1, t.end(), r.begin());
      r.back() = twist ? base.act(bwd_g, t[0]) : t[0];
      return r;
    };
    int lookup_g = cx_ ? -1 : g;

    RotationOrbit orbit;
    orbit.members.emplace_back(start, 1);
    int max_steps = static_cast<int>(start.size()) *
                    (twist ? base.group().element_order(g) : 1) + 1;
    // forward walk
    std::vector<int> cur = start;
    int sign = 1;
    bool closed = false;
    for (int step = 0; step < max_steps; ++step) {
      std::vector<int> next = fwd(cur);
      if (!supported(lookup_g, next)) break;
      sign *= step_sign;
      if (next == start) {
        if (sign == -1) orbit.zero = true;
        closed = true;
        break;
      }
      orbit.members.emplace_back(next, sign);
      cur = std::move(next);
    }
    if (!closed) {
      cur = start;
      sign = 1;
      for (int step = 0; step < max_steps; ++step) {
        std::vector<int> next = bwd(cur);
        if (!supported(lookup_g, next)) break;
        sign *= step_sign;
        if (next == start) break;  // unreachable when the forward walk is open
        orbit.members.emplace_back(next, sign);
        cur = std::move(next);
      }
    }
    return orbit;
  }

  Canon canon_rotation(int g, std::vector<int> tuple) const {
    RotationOrbit orbit = rotation_orbit(g, tuple);
    if (orbit.zero) return Canon::zero_class();
    const std::pair<std::vector<int>, int>* best = &orbit.members.front();
    for (const auto& m : orbit.members)
      if (m.first < best->first) best = &m;
    int key_g = cx_ ? -1 : g;
    // symbol(input) = best.sign * symbol(best): signs are relative to the
    // input, and +-1 is self-inverse
    return Canon::of(ChainKey{key_g, best->first}, best->second);
  }

  // Quotient classes: connected components of the graph whose edges join a
  // g-cyclic class to every class reachable by a per-coordinate translation
  // with powers of g (with the translated tuple still carried). Sign conflicts
  // along the closure annihilate the class. One search settles the whole
  // component; results are memoized per tuple.
  Canon canon_quotient(int g, std::vector<int> tuple) const {
    auto cached = quotient_cache_.find({g, tuple});
    if (cached != quotient_cache_.end()) return cached->second;

    const SimplicialComplex& base = tw_->base();
    const FiniteGroup& grp = base.group();
    int ng = grp.element_order(g);
    int len = static_cast<int>(tuple.size());
    std::vector<int> powers(ng);
    for (int e = 0; e < ng; ++e) powers[e] = grp.power(g, e);

    Canon c0 = canon_rotation(g, tuple);
    if (c0.zero) {
      quotient_cache_[{g, std::move(tuple)}] = Canon::zero_class();
      return Canon::zero_class();
    }

    // label[rep] = sign s with qsymbol(rep) = s * qsymbol(c0.key)
    std::map<std::vector<int>, int> label;
    std::map<std::vector<int>, RotationOrbit> orbits;
    label[c0.key.verts] = 1;
    std::vector<std::vector<int>> frontier{c0.key.verts};
    bool zero = false;

    std::vector<int> exps(len, 0);
    while (!frontier.empty() && !zero) {
      std::vector<int> rep = std::move(frontier.back());
      frontier.pop_back();
      int rep_label = label.at(rep);
      RotationOrbit orbit = rotation_orbit(g, rep);
      if (orbit.zero) {
        zero = true;
        orbits.emplace(rep, std::move(orbit));
        break;
      }
      for (const auto& [member, member_sign] : orbit.members) {
        // enumerate all translate vectors
        std::fill(exps.begin(), exps.end(), 0);
        while (true) {
          std::vector<int> translated(len);
          for (int i = 0; i < len; ++i) translated[i] = base.act(powers[exps[i]], member[i]);
          if (supported(g, translated)) {
            Canon c = canon_rotation(g, translated);
            if (c.zero) {
              zero = true;
              break;
            }
            // qsymbol(translated) = qsymbol(member) and
            // symbol(member) = member_sign * symbol(rep)
            int new_label = rep_label * member_sign * c.sign;
            auto it = label.find(c.key.verts);
            if (it == label.end()) {
              label[c.key.verts] = new_label;
              frontier.push_back(c.key.verts);
            } else if (it->second != new_label) {
              zero = true;
              break;
            }
          }
          int pos = 0;
          while (pos < len && ++exps[pos] == ng) exps[pos++] = 0;
          if (pos == len) break;
        }
        if (zero) break;
      }
      orbits.emplace(std::move(rep), std::move(orbit));
    }

    if (zero) {
      // a single sign conflict annihilates every class in the component
      for (const auto& [rep, orbit] : orbits)
        for (const auto& [member, member_sign] : orbit.members)
          quotient_cache_[{g, member}] = Canon::zero_class();
      quotient_cache_[{g, std::move(tuple)}] = Canon::zero_class();
      return Canon::zero_class();
    }

    const auto& best = *label.begin();  // std::map: least vertex list first
    for (const auto& [rep, rep_label] : label) {
      // qsymbol(rep) = rep_label * best_label * qsymbol(best)
      int rel = rep_label * best.second;
      for (const auto& [member, member_sign] : orbits.at(rep).members)
        quotient_cache_[{g, member}] = Canon::of(ChainKey{g, best.first}, member_sign * rel);
    }
    return quotient_cache_.at({g, tuple});
  }

  std::set<ChainKey> enumerate_plain(int degree) const {
    if (degree > kGlobalDimCap + 1)
      throw std::invalid_argument("degree exceeds the dimension cap");
    std::set<ChainKey> keys;
    if (degree < 0) return keys;
    auto add_tuples_of = [&](int g, const SimplicialComplex& comp) {
      int top = std::min(degree, comp.dim());
      for (int s = 0; s <= top; ++s) {
        for (const auto& simplex : comp.simplices(s)) {
          detail::foreach_surjective_tuple(simplex, degree + 1, [&](const std::vector<int>& t) {
            Canon c = canonicalize(g, t, degree);
            if (!c.zero) keys.insert(c.key);
          });
        }
      }
    };
    switch (theory_.base) {
      case BaseTheory::simplicial:
        if (cx_) {
          for (const auto& s : cx_->simplices(degree)) keys.insert(ChainKey{-1, s});
        } else {
          for (const auto& comp : tw_->components())
            for (const auto& s : comp.subcomplex.simplices(degree))
              keys.insert(ChainKey{comp.g, s});
        }
        break;
      case BaseTheory::ordered:
      case BaseTheory::cyclic:
        add_tuples_of(-1, *cx_);
        break;
      case BaseTheory::g_cyclic:
      case BaseTheory::g_cyclic_quotient:
        for (const auto& comp : tw_->components()) add_tuples_of(comp.g, comp.subcomplex);
        break;
    }
    return keys;
  }

  Basis build_basis(int degree) const {
    Basis b;
    std::set<ChainKey> plain = enumerate_plain(degree);
    if (!theory_.invariant) {
      for (const auto& key : plain) {
        b.index_of[key] = static_cast<int>(b.entries.size());
        b.elem_rep[key] = {static_cast<int>(b.entries.size()), 1};
        b.entries.push_back({key, {{key, 1}}});
      }
      return b;
    }
    const FiniteGroup* grp = group();
    std::set<ChainKey> visited;
    for (const auto& rep : plain) {
      if (visited.count(rep)) continue;
      // one pass over the group covers the whole orbit
      std::map<ChainKey, int> orbit;
      bool forced_zero = false;
      for (int gamma = 0; gamma < grp->order(); ++gamma) {
        Canon c = act(gamma, rep);
        if (c.zero) throw std::logic_error("group action sent a nonzero class to zero");
        auto it = orbit.find(c.key);
        if (it == orbit.end()) {
          orbit[c.key] = c.sign;
        } else if (it->second != c.sign) {
          forced_zero = true;
        }
      }
      for (const auto& [key, sign] : orbit) visited.insert(key);
      if (forced_zero) {
        for (const auto& [key, sign] : orbit) b.forced_zero.insert(key);
        continue;
      }
      int idx = static_cast<int>(b.entries.size());
      BasisEntry entry;
      entry.rep = rep;
      for (const auto& [key, sign] : orbit) entry.expansion.emplace_back(key, sign);
      for (const auto& [key, sign] : orbit) b.elem_rep[key] = {idx, sign};
      b.index_of[rep] = idx;
      b.entries.push_back(std::move(entry));
    }
    return b;
  }

  Chain plain_twin_boundary(const Chain& chain) const {
    Chain out{chain.theory, chain.degree - 1, {}};
    if (chain.degree <= 0) return out;
    for (const auto& [key, coeff] : chain.terms) {
      std::vector<int> face;
      face.reserve(key.verts.size() - 1);
      for (std::size_t drop = 0; drop < key.verts.size(); ++drop) {
        face.clear();
        for (std::size_t i = 0; i < key.verts.size(); ++i)
          if (i != drop) face.push_back(key.verts[i]);
        Canon c = face_canon(key.g, face, chain.degree - 1);
        if (!c.zero) out.add(c.key, coeff * QI((drop % 2 == 0 ? 1 : -1) * c.sign));
      }
    }
    return out;
  }

  Canon face_canon(int g, const std::vector<int>& tuple, int degree) const {
    switch (theory_.base) {
      case BaseTheory::simplicial: {
        // faces of a sorted simplex are sorted and canonical already
        return Canon::of(ChainKey{g, tuple}, 1);
      }
      case BaseTheory::ordered:
        return canon_ordered(g, tuple, degree);
      case BaseTheory::cyclic:
        return canon_rotation(-1, tuple);
      case BaseTheory::g_cyclic:
        return canon_rotation(g, tuple);
      case BaseTheory::g_cyclic_quotient:
        return canon_quotient(g, tuple);
    }
    return Canon::zero_class();
  }

  const SimplicialComplex* cx_ = nullptr;
  const TwistedSpace* tw_ = nullptr;
  Theory theory_;
  mutable std::map<int, Basis> basis_cache_;
  mutable std::map<std::pair<int, std::vector<int>>, Canon> quotient_cache_;
};

}  // namespace chernlab
