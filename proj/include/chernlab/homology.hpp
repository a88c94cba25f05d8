#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chernlab/chains.hpp"
#include "chernlab/rational.hpp"

namespace chernlab {

/// Assembled boundary matrices larger than this many nonzeros abort instead of
/// degrading; override with CHERNLAB_MATRIX_CAP.
inline constexpr int kDefaultMatrixCap = 20000;

inline int matrix_cap() {
  if (const char* env = std::getenv("CHERNLAB_MATRIX_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return kDefaultMatrixCap;
}

struct MatrixCapExceeded : std::runtime_error {
  explicit MatrixCapExceeded(int nnz, int cap)
      : std::runtime_error("boundary matrix has " + std::to_string(nnz) +
                           " nonzeros, exceeding the cap of " + std::to_string(cap) +
                           " (set CHERNLAB_MATRIX_CAP to raise)") {}
};

/// Sparse vector: (index, value) pairs sorted by index, no zeros.
struct SparseVec {
  std::vector<std::pair<int, QI>> e;

  bool is_zero() const { return e.empty(); }
  int lead() const { return e.front().first; }
  const QI& lead_value() const { return e.front().second; }

  void add(int idx, const QI& v) {
    if (v.is_zero()) return;
    auto it = std::lower_bound(e.begin(), e.end(), idx,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != e.end() && it->first == idx) {
      it->second += v;
      if (it->second.is_zero()) e.erase(it);
    } else {
      e.insert(it, {idx, v});
    }
  }

  /// this += factor * other
  void axpy(const QI& factor, const SparseVec& other) {
    if (factor.is_zero() || other.e.empty()) return;
    std::vector<std::pair<int, QI>> out;
    out.reserve(e.size() + other.e.size());
    std::size_t i = 0, j = 0;
    while (i < e.size() || j < other.e.size()) {
      if (j == other.e.size() || (i < e.size() && e[i].first < other.e[j].first)) {
        out.push_back(e[i++]);
      } else if (i == e.size() || other.e[j].first < e[i].first) {
        QI v = factor * other.e[j].second;
        if (!v.is_zero()) out.emplace_back(other.e[j].first, std::move(v));
        ++j;
      } else {
        QI v = e[i].second + factor * other.e[j].second;
        if (!v.is_zero()) out.emplace_back(e[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    e = std::move(out);
  }
};

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> col;

  int nnz() const {
    int n = 0;
    for (const auto& c : col) n += static_cast<int>(c.e.size());
    return n;
  }

  SparseVec apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [j, x] : v.e) out.axpy(x, col.at(j));
    return out;
  }
};

/// product a*b (as composition: (a*b) x = a (b x))
inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix dimension mismatch");
  SparseMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.col.resize(b.cols);
  for (int j = 0; j < b.cols; ++j) out.col[j] = a.apply(b.col[j]);
  return out;
}

inline bool is_zero(const SparseMatrix& m) {
  for (const auto& c : m.col)
    if (!c.is_zero()) return false;
  return true;
}

/// Column-echelon accumulator over Q(i): stored columns have pairwise distinct
/// leading indices. Deterministic: columns are folded in caller order.
class Echelon {
 public:
  /// Reduces v in place against the stored columns; returns true if v reduced
  /// to zero. `combo`, when given, accumulates the coefficients of the stored
  /// columns' own combos used during reduction (for solving).
  bool reduce(SparseVec& v, SparseVec* combo = nullptr) const {
    while (!v.is_zero()) {
      auto it = by_lead_.find(v.lead());
      if (it == by_lead_.end()) return false;
      const StoredCol& sc = cols_[it->second];
      QI factor = QI(0) - v.lead_value() / sc.vec.lead_value();
      v.axpy(factor, sc.vec);
      if (combo) combo->axpy(factor, sc.combo);
    }
    return true;
  }

  /// Folds v into the echelon. Returns nullopt if v was absorbed (dependent),
  /// in which case `dependency` (if non-null) receives the combo expressing v
  /// over previously inserted columns.
  std::optional<int> insert(SparseVec v, SparseVec self_combo = {},
                            SparseVec* dependency = nullptr) {
    SparseVec combo = std::move(self_combo);
    while (!v.is_zero()) {
      auto it = by_lead_.find(v.lead());
      if (it == by_lead_.end()) {
        int idx = static_cast<int>(cols_.size());
        by_lead_[v.lead()] = idx;
        cols_.push_back({std::move(v), std::move(combo)});
        return idx;
      }
      const StoredCol& sc = cols_[it->second];
      QI factor = QI(0) - v.lead_value() / sc.vec.lead_value();
      v.axpy(factor, sc.vec);
      combo.axpy(factor, sc.combo);
    }
    if (dependency) *dependency = std::move(combo);
    return std::nullopt;
  }

  int rank() const { return static_cast<int>(cols_.size()); }

 private:
  struct StoredCol {
    SparseVec vec;
    SparseVec combo;
  };
  std::vector<StoredCol> cols_;
  std::map<int, int> by_lead_;
};

inline int rank(const SparseMatrix& m) {
  Echelon ech;
  for (const auto& c : m.col) ech.insert(c);
  return ech.rank();
}

/// Basis of Ker m, deterministic (combination coordinates over the original
/// columns, in column order).
inline std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  Echelon ech;
  std::vector<SparseVec> kernel;
  for (int j = 0; j < m.cols; ++j) {
    SparseVec self;
    self.add(j, QI(1));
    SparseVec dep;
    if (!ech.insert(m.col[j], std::move(self), &dep).has_value()) {
      // the accumulated combo c satisfies M c = 0 with c_j = 1
      kernel.push_back(std::move(dep));
    }
  }
  return kernel;
}

inline bool in_image(const SparseMatrix& m, SparseVec v) {
  Echelon ech;
  for (const auto& c : m.col) ech.insert(c);
  return ech.reduce(v);
}

/// Solves m x = b exactly; returns coefficients over the columns of m, or
/// nullopt if b is outside the column space.
inline std::optional<SparseVec> solve(const SparseMatrix& m, SparseVec b) {
  Echelon ech;
  for (int j = 0; j < m.cols; ++j) {
    SparseVec self;
    self.add(j, QI(1));
    ech.insert(m.col[j], std::move(self));
  }
  SparseVec combo;
  if (!ech.reduce(b, &combo)) return std::nullopt;
  // b + sum combo_i col_i = 0  =>  b = sum (-combo_i) col_i
  SparseVec x;
  for (auto& [i, v] : combo.e) x.e.emplace_back(i, QI(0) - v);
  return x;
}

/// Boundary matrix of one theory at one degree: columns indexed by the basis
/// at `degree`, rows by the basis one below.
struct BoundaryMatrix {
  Theory theory;
  int degree = 0;
  SparseMatrix mat;
};

inline SparseVec vectorize(const ChainContext& ctx, const Chain& chain) {
  const auto& b = ctx.basis(chain.degree);
  SparseVec v;
  for (const auto& [key, coeff] : chain.terms) {
    auto it = b.index_of.find(key);
    if (it == b.index_of.end())
      throw std::invalid_argument("chain key is not a basis representative");
    v.add(it->second, coeff);
  }
  return v;
}

inline Chain chain_from_vector(const ChainContext& ctx, const SparseVec& v, int degree) {
  const auto& b = ctx.basis(degree);
  Chain c = ctx.zero(degree);
  for (const auto& [idx, coeff] : v.e) c.add(b.entries.at(idx).rep, coeff);
  return c;
}

inline BoundaryMatrix assemble_boundary(const ChainContext& ctx, int degree) {
  const auto& cols = ctx.basis(degree);
  const auto& rows = ctx.basis(degree - 1);
  BoundaryMatrix bm{ctx.theory(), degree, {}};
  bm.mat.rows = rows.size();
  bm.mat.cols = cols.size();
  bm.mat.col.resize(cols.size());
  int nnz = 0;
  int cap = matrix_cap();
  for (int j = 0; j < cols.size(); ++j) {
    Chain unit = ctx.unit(cols.entries[j].rep, degree);
    Chain img = ctx.boundary(unit);
    bm.mat.col[j] = vectorize(ctx, img);
    nnz += static_cast<int>(bm.mat.col[j].e.size());
    if (nnz > cap) throw MatrixCapExceeded(nnz, cap);
  }
  return bm;
}

struct HomologyResult {
  Theory theory;
  int degree = 0;
  int betti = 0;
  std::vector<Chain> cycle_basis;  // independent modulo the image one above
};

inline HomologyResult homology(const ChainContext& ctx, int degree) {
  BoundaryMatrix at = assemble_boundary(ctx, degree);
  BoundaryMatrix above = assemble_boundary(ctx, degree + 1);
  std::vector<SparseVec> cycles = kernel_basis(at.mat);

  Echelon image;
  for (const auto& c : above.mat.col) image.insert(c);
  int image_rank = image.rank();

  HomologyResult res{ctx.theory(), degree, 0, {}};
  res.betti = static_cast<int>(cycles.size()) - image_rank;

  // peel off cycles independent modulo the image
  Echelon mod_image = image;
  for (const auto& z : cycles) {
    SparseVec copy = z;
    if (mod_image.insert(std::move(copy)).has_value())
      res.cycle_basis.push_back(chain_from_vector(ctx, z, degree));
  }
  if (static_cast<int>(res.cycle_basis.size()) != res.betti)
    throw std::logic_error("homology basis extraction is inconsistent");
  return res;
}

/// True iff z1 - z2 is a boundary. Both inputs must be cycles.
inline bool class_equal(const ChainContext& ctx, const Chain& z1, const Chain& z2,
                        const BoundaryMatrix& at, const BoundaryMatrix& above) {
  if (!(z1.theory == z2.theory) || z1.degree != z2.degree)
    throw std::invalid_argument("chain theory/degree mismatch");
  if (at.degree != z1.degree || above.degree != z1.degree + 1)
    throw std::invalid_argument("boundary matrices do not match the degree");
  SparseVec v1 = vectorize(ctx, z1);
  SparseVec v2 = vectorize(ctx, z2);
  if (!at.mat.apply(v1).is_zero() || !at.mat.apply(v2).is_zero())
    throw std::invalid_argument("class comparison requires cycles");
  v1.axpy(QI(-1), v2);
  return in_image(above.mat, v1);
}

inline bool class_equal(const ChainContext& ctx, const Chain& z1, const Chain& z2) {
  BoundaryMatrix at = assemble_boundary(ctx, z1.degree);
  BoundaryMatrix above = assemble_boundary(ctx, z1.degree + 1);
  return class_equal(ctx, z1, z2, at, above);
}

}  // namespace chernlab
