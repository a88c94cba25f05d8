#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chernlab {

/// Exhaustive associativity checking is cubic in the order; above this cap the
/// table is trusted (constructors below always produce associative tables).
inline constexpr int kAssociativityCheckCap = 64;

/// Finite group given extensionally by its multiplication table.
/// Immutable after construction.
class FiniteGroup {
 public:
  FiniteGroup(int order, std::vector<std::vector<int>> mult_table, int identity,
              std::vector<std::string> labels = {})
      : order_(order),
        table_(std::move(mult_table)),
        identity_(identity),
        labels_(std::move(labels)) {
    validate();
    if (labels_.empty()) {
      for (int g = 0; g < order_; ++g) labels_.push_back(std::to_string(g));
    } else if (static_cast<int>(labels_.size()) != order_) {
      throw std::invalid_argument("label count does not match group order");
    }
    inverse_.assign(order_, -1);
    for (int g = 0; g < order_; ++g) {
      for (int h = 0; h < order_; ++h) {
        if (table_[g][h] == identity_) {
          inverse_[g] = h;
          break;
        }
      }
    }
  }

  static FiniteGroup cyclic(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(n, std::move(t), 0);
  }

  /// Symmetric group on {0..n-1}; elements enumerated in lexicographic order of
  /// one-line notation, so index 0 is the identity. Capped at n = 6.
  static FiniteGroup symmetric(int n) {
    if (n <= 0 || n > 6) throw std::invalid_argument("symmetric group supported for 1 <= n <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
    int order = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<std::string> labels(order);
    for (int a = 0; a < order; ++a) {
      std::string lbl;
      for (int x : perms[a]) lbl += std::to_string(x);
      labels[a] = lbl;
      for (int b = 0; b < order; ++b) {
        std::vector<int> comp(n);
        for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
        t[a][b] = index.at(comp);
      }
    }
    return FiniteGroup(order, std::move(t), 0, std::move(labels));
  }

  /// Direct product; element (a, b) has index a * |B| + b.
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
    int order = a.order() * b.order();
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<std::string> labels(order);
    for (int x = 0; x < order; ++x) {
      int xa = x / b.order(), xb = x % b.order();
      labels[x] = "(" + a.label(xa) + "," + b.label(xb) + ")";
      for (int y = 0; y < order; ++y) {
        int ya = y / b.order(), yb = y % b.order();
        t[x][y] = a.multiply(xa, ya) * b.order() + b.multiply(xb, yb);
      }
    }
    return FiniteGroup(order, std::move(t), a.identity() * b.order() + b.identity(),
                       std::move(labels));
  }

  int order() const { return order_; }
  int identity() const { return identity_; }
  const std::string& label(int g) const {
    check_index(g);
    return labels_[g];
  }
  const std::vector<std::vector<int>>& mult_table() const { return table_; }

  int multiply(int g, int h) const {
    check_index(g);
    check_index(h);
    return table_[g][h];
  }

  int inverse(int g) const {
    check_index(g);
    return inverse_[g];
  }

  int conjugate(int gamma, int x) const {
    return multiply(multiply(gamma, x), inverse(gamma));
  }

  /// Least n >= 1 with g^n = e.
  int element_order(int g) const {
    check_index(g);
    int n = 1;
    int acc = g;
    while (acc != identity_) {
      acc = table_[acc][g];
      ++n;
    }
    return n;
  }

  int power(int g, int e) const {
    check_index(g);
    int n = element_order(g);
    e %= n;
    if (e < 0) e += n;
    int acc = identity_;
    for (int i = 0; i < e; ++i) acc = table_[acc][g];
    return acc;
  }

  /// Full orbit of g under conjugation, sorted.
  std::vector<int> conjugacy_orbit(int g) const {
    check_index(g);
    std::set<int> orbit;
    for (int gamma = 0; gamma < order_; ++gamma) orbit.insert(conjugate(gamma, g));
    return std::vector<int>(orbit.begin(), orbit.end());
  }

 private:
  void check_index(int g) const {
    if (g < 0 || g >= order_) throw std::out_of_range("group element index out of range");
  }

  void validate() const {
    if (order_ <= 0) throw std::invalid_argument("group order must be positive");
    if (static_cast<int>(table_.size()) != order_)
      throw std::invalid_argument("multiplication table has wrong row count");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != order_)
        throw std::invalid_argument("multiplication table has wrong column count");
      for (int v : row)
        if (v < 0 || v >= order_)
          throw std::invalid_argument("multiplication table entry out of range");
    }
    if (identity_ < 0 || identity_ >= order_)
      throw std::invalid_argument("identity index out of range");
    for (int g = 0; g < order_; ++g) {
      if (table_[identity_][g] != g || table_[g][identity_] != g)
        throw std::invalid_argument("identity row/column is not the identity permutation");
    }
    // Latin square
    for (int g = 0; g < order_; ++g) {
      std::vector<bool> seen_row(order_, false), seen_col(order_, false);
      for (int h = 0; h < order_; ++h) {
        if (seen_row[table_[g][h]]) throw std::invalid_argument("row is not a permutation");
        seen_row[table_[g][h]] = true;
        if (seen_col[table_[h][g]]) throw std::invalid_argument("column is not a permutation");
        seen_col[table_[h][g]] = true;
      }
    }
    if (order_ <= kAssociativityCheckCap) {
      for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
          for (int c = 0; c < order_; ++c)
            if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
              throw std::invalid_argument("multiplication table is not associative");
    }
  }

  int order_;
  std::vector<std::vector<int>> table_;
  int identity_;
  std::vector<std::string> labels_;
  std::vector<int> inverse_;
};

/// Generating set, symmetrized on construction so word lengths define a metric.
class GeneratingSet {
 public:
  GeneratingSet(const FiniteGroup& group, std::vector<int> generators) : group_(&group) {
    std::set<int> gens;
    for (int g : generators) {
      if (g < 0 || g >= group.order()) throw std::out_of_range("generator index out of range");
      if (g == group.identity()) continue;
      gens.insert(g);
      gens.insert(group.inverse(g));
    }
    generators_.assign(gens.begin(), gens.end());
    if (!generates_all()) throw std::invalid_argument("set does not generate the group");
  }

  const FiniteGroup& group() const { return *group_; }
  const std::vector<int>& generators() const { return generators_; }

 private:
  bool generates_all() const {
    std::vector<bool> seen(group_->order(), false);
    std::queue<int> q;
    seen[group_->identity()] = true;
    q.push(group_->identity());
    int count = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int s : generators_) {
        int y = group_->multiply(x, s);
        if (!seen[y]) {
          seen[y] = true;
          ++count;
          q.push(y);
        }
      }
    }
    return count == group_->order();
  }

  const FiniteGroup* group_;
  std::vector<int> generators_;
};

/// Left-invariant word metric d(x, y) = |x^-1 y| for a symmetric generating
/// set. Left invariance is structural: only the length function is stored.
class WordMetric {
 public:
  explicit WordMetric(const GeneratingSet& gen) : group_(&gen.group()) {
    length_.assign(group_->order(), -1);
    std::queue<int> q;
    length_[group_->identity()] = 0;
    q.push(group_->identity());
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int s : gen.generators()) {
        int y = group_->multiply(x, s);
        if (length_[y] < 0) {
          length_[y] = length_[x] + 1;
          q.push(y);
        }
      }
    }
  }

  const FiniteGroup& group() const { return *group_; }

  int length(int g) const { return length_.at(g); }

  int distance(int x, int y) const {
    return length_[group_->multiply(group_->inverse(x), y)];
  }

  int diameter() const { return *std::max_element(length_.begin(), length_.end()); }

 private:
  const FiniteGroup* group_;
  std::vector<int> length_;
};

}  // namespace chernlab
