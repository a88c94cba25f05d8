#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chernlab/group.hpp"
#include "chernlab/rational.hpp"

namespace chernlab {

using Mat = std::vector<std::vector<QI>>;

inline Mat zero_matrix(int m) { return Mat(m, std::vector<QI>(m, QI(0))); }

inline Mat identity_matrix(int m) {
  Mat out = zero_matrix(m);
  for (int i = 0; i < m; ++i) out[i][i] = QI(1);
  return out;
}

inline bool mat_is_zero(const Mat& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

inline Mat mat_add(const Mat& a, const Mat& b) {
  Mat out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
  return out;
}

inline Mat mat_scale(const Mat& a, const QI& s) {
  Mat out = a;
  for (auto& row : out)
    for (auto& v : row) v *= s;
  return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  int m = static_cast<int>(a.size());
  Mat out = zero_matrix(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline QI mat_trace(const Mat& a) {
  QI t(0);
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

/// Gauss-Jordan inverse; throws on singular input.
inline Mat mat_inverse(const Mat& a) {
  int m = static_cast<int>(a.size());
  Mat w = a;
  Mat inv = identity_matrix(m);
  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    for (int r = col; r < m; ++r) {
      if (!w[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::invalid_argument("matrix is singular");
    std::swap(w[pivot], w[col]);
    std::swap(inv[pivot], inv[col]);
    QI lead = w[col][col];
    for (int j = 0; j < m; ++j) {
      w[col][j] = w[col][j] / lead;
      inv[col][j] = inv[col][j] / lead;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col || w[r][col].is_zero()) continue;
      QI f = w[r][col];
      for (int j = 0; j < m; ++j) {
        w[r][j] -= f * w[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline Mat block_diag(const Mat& a, const Mat& b) {
  int ma = static_cast<int>(a.size()), mb = static_cast<int>(b.size());
  Mat out = zero_matrix(ma + mb);
  for (int i = 0; i < ma; ++i)
    for (int j = 0; j < ma; ++j) out[i][j] = a[i][j];
  for (int i = 0; i < mb; ++i)
    for (int j = 0; j < mb; ++j) out[ma + i][ma + j] = b[i][j];
  return out;
}

/// Group-invariant kernel k(x, y) = s_{x^-1 y} with values in m x m matrices
/// over Q(i) and finite support. Invariance k(gx, gy) = k(x, y) is structural.
class MatrixKernel {
 public:
  MatrixKernel(std::shared_ptr<const FiniteGroup> group, int m)
      : group_(std::move(group)), m_(m) {
    if (!group_) throw std::invalid_argument("null group");
    if (m_ <= 0) throw std::invalid_argument("matrix size must be positive");
  }

  static MatrixKernel delta(std::shared_ptr<const FiniteGroup> group, int g, Mat value) {
    MatrixKernel k(std::move(group), static_cast<int>(value.size()));
    k.set(g, std::move(value));
    return k;
  }

  friend bool same_group(const MatrixKernel& a, const MatrixKernel& b) {
    return a.group_ == b.group_ || (a.group_->order() == b.group_->order() &&
                                    a.group_->mult_table() == b.group_->mult_table());
  }

  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  int m() const { return m_; }
  const std::map<int, Mat>& terms() const { return terms_; }

  void set(int g, Mat value) {
    if (g < 0 || g >= group_->order()) throw std::out_of_range("group element out of range");
    if (static_cast<int>(value.size()) != m_) throw std::invalid_argument("matrix size mismatch");
    for (const auto& row : value)
      if (static_cast<int>(row.size()) != m_) throw std::invalid_argument("matrix size mismatch");
    if (mat_is_zero(value)) {
      terms_.erase(g);
    } else {
      terms_[g] = std::move(value);
    }
  }

  /// s_g (zero matrix when unset)
  Mat value(int g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? zero_matrix(m_) : it->second;
  }

  bool has(int g) const { return terms_.count(g) > 0; }

  /// k(x, y) = s_{x^-1 y}
  Mat eval(int x, int y) const { return value(group_->multiply(group_->inverse(x), y)); }

  bool is_zero() const { return terms_.empty(); }

  /// Convolution (s * t)_g = sum_h s_h t_{h^-1 g}.
  friend MatrixKernel convolve(const MatrixKernel& a, const MatrixKernel& b) {
    if (!same_group(a, b)) throw std::invalid_argument("kernel group mismatch");
    if (a.m_ != b.m_) throw std::invalid_argument("kernel matrix size mismatch");
    MatrixKernel out(a.group_, a.m_);
    for (const auto& [h, sh] : a.terms_) {
      for (const auto& [u, tu] : b.terms_) {
        int g = a.group_->multiply(h, u);
        Mat prod = mat_mul(sh, tu);
        auto it = out.terms_.find(g);
        if (it == out.terms_.end()) {
          out.terms_[g] = std::move(prod);
        } else {
          it->second = mat_add(it->second, prod);
        }
      }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
      if (mat_is_zero(it->second)) {
        it = out.terms_.erase(it);
      } else {
        ++it;
      }
    }
    return out;
  }

  friend MatrixKernel operator+(const MatrixKernel& a, const MatrixKernel& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("kernel matrix size mismatch");
    MatrixKernel out = a;
    for (const auto& [g, v] : b.terms_) {
      auto it = out.terms_.find(g);
      if (it == out.terms_.end()) {
        out.terms_[g] = v;
      } else {
        it->second = mat_add(it->second, v);
        if (mat_is_zero(it->second)) out.terms_.erase(it);
      }
    }
    return out;
  }

  friend MatrixKernel operator-(const MatrixKernel& a, const MatrixKernel& b) {
    return a + b.scaled(QI(-1));
  }

  MatrixKernel scaled(const QI& s) const {
    MatrixKernel out(group_, m_);
    if (s.is_zero()) return out;
    for (const auto& [g, v] : terms_) out.terms_[g] = mat_scale(v, s);
    return out;
  }

  /// Left/right multiplication by a constant matrix (a kernel supported at the
  /// identity).
  MatrixKernel left_mul(const Mat& c) const {
    MatrixKernel out(group_, m_);
    for (const auto& [g, v] : terms_) {
      Mat prod = mat_mul(c, v);
      if (!mat_is_zero(prod)) out.terms_[g] = std::move(prod);
    }
    return out;
  }

  MatrixKernel right_mul(const Mat& c) const {
    MatrixKernel out(group_, m_);
    for (const auto& [g, v] : terms_) {
      Mat prod = mat_mul(v, c);
      if (!mat_is_zero(prod)) out.terms_[g] = std::move(prod);
    }
    return out;
  }

  /// Largest word length over the support; 0 for the zero kernel.
  Rational propagation(const WordMetric& metric) const {
    int best = 0;
    for (const auto& [g, v] : terms_) best = std::max(best, metric.length(g));
    return Rational(best);
  }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  int m_;
  std::map<int, Mat> terms_;
};

inline MatrixKernel unit_kernel(std::shared_ptr<const FiniteGroup> group, int m) {
  MatrixKernel k(group, m);
  k.set(group->identity(), identity_matrix(m));
  return k;
}

/// The pair (q, q0) representing the K-theory class [q + q0] - [q0]: q0 is a
/// constant idempotent and q + q0 is idempotent under convolution, i.e.
/// q^2 = q - q0 q - q q0.
struct IdempotentPair {
  MatrixKernel q;
  Mat q0;

  int m() const { return q.m(); }
};

inline bool is_idempotent_pair(const IdempotentPair& p) {
  if (static_cast<int>(p.q0.size()) != p.q.m()) return false;
  if (!mat_is_zero(mat_add(mat_mul(p.q0, p.q0), mat_scale(p.q0, QI(-1))))) return false;
  MatrixKernel lhs = convolve(p.q, p.q);
  MatrixKernel rhs = p.q - p.q.left_mul(p.q0) - p.q.right_mul(p.q0);
  return (lhs - rhs).is_zero();
}

inline IdempotentPair block_sum(const IdempotentPair& a, const IdempotentPair& b) {
  if (!same_group(a.q, b.q)) throw std::invalid_argument("idempotent group mismatch");
  MatrixKernel q(a.q.group_ptr(), a.m() + b.m());
  for (int g = 0; g < a.q.group().order(); ++g) {
    if (!a.q.has(g) && !b.q.has(g)) continue;
    q.set(g, block_diag(a.q.value(g), b.q.value(g)));
  }
  return IdempotentPair{std::move(q), block_diag(a.q0, b.q0)};
}

/// Conjugate by a constant invertible matrix: q -> u q u^-1, q0 -> u q0 u^-1.
inline IdempotentPair conjugate(const IdempotentPair& p, const Mat& u) {
  Mat u_inv = mat_inverse(u);
  MatrixKernel q(p.q.group_ptr(), p.m());
  for (const auto& [g, v] : p.q.terms()) q.set(g, mat_mul(u, mat_mul(v, u_inv)));
  return IdempotentPair{std::move(q), mat_mul(u, mat_mul(p.q0, u_inv))};
}

}  // namespace chernlab
