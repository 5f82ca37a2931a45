#ifndef FRAMEFORGE_UNION_FIND_HPP
#define FRAMEFORGE_UNION_FIND_HPP

#include <numeric>
#include <vector>

namespace frameforge {

class UnionFind {
 public:
  explicit UnionFind(int size) : parent_(size), rank_(size, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

  /// Dense labels 0..k-1, numbered by first occurrence.
  std::vector<int> labels() {
    const int n = static_cast<int>(parent_.size());
    std::vector<int> root_label(n, -1);
    std::vector<int> out(n);
    int next = 0;
    for (int i = 0; i < n; ++i) {
      const int r = find(i);
      if (root_label[r] < 0) root_label[r] = next++;
      out[i] = root_label[r];
    }
    return out;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace frameforge

#endif  // FRAMEFORGE_UNION_FIND_HPP
