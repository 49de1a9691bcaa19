#pragma once

#include <numeric>
#include <vector>

#include "catq/errors.hpp"

namespace catq {

/// Disjoint-set forest with path compression and union by rank.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
    if (n < 0) throw MalformedInput("union-find size must be non-negative");
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    check(x);
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }

  /// Merges the classes of a and b; returns true when they were distinct.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)])
      ++rank_[static_cast<std::size_t>(a)];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  int size() const { return static_cast<int>(parent_.size()); }

  /// Number of distinct classes.
  int classes() {
    int n = 0;
    for (int i = 0; i < size(); ++i)
      if (find(i) == i) ++n;
    return n;
  }

 private:
  void check(int x) const {
    if (x < 0 || x >= size()) throw MalformedInput("union-find index out of range");
  }
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace catq
