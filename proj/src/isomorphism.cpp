#include "frameforge/isomorphism.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace frameforge {

namespace {

std::vector<int> panel_sizes(const ChamberComplex& cx, int s) {
  std::vector<int> sizes;
  for (const auto& p : cx.panels(s)) sizes.push_back(static_cast<int>(p.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

class Search {
 public:
  Search(const ChamberComplex& a, const ChamberComplex& b, std::vector<int> type_map, long& budget)
      : a_(a), b_(b), tau_(std::move(type_map)), budget_(budget) {
    const int n = a.rank();
    forward_.resize(n);
    backward_.resize(n);
    for (int s = 0; s < n; ++s) {
      forward_[s].assign(a.panel_count(s), -1);
      backward_[s].assign(b.panel_count(tau_[s]), -1);
    }
    map_.assign(a.chamber_count(), -1);
    used_.assign(b.chamber_count(), false);
    order_chambers();
  }

  std::optional<Isomorphism> run() {
    if (a_.chamber_count() == 0) return Isomorphism{tau_, {}};
    for (int target = 0; target < b_.chamber_count(); ++target) {
      if (assign(order_[0], target)) {
        if (descend(1)) return Isomorphism{tau_, map_};
        unassign(order_[0]);
      }
    }
    return std::nullopt;
  }

 private:
  // Breadth-first order; parent_ records an earlier neighbour and its type.
  void order_chambers() {
    const int nc = a_.chamber_count();
    std::vector<bool> seen(nc, false);
    parent_.assign(nc, {-1, -1});
    for (int root = 0; root < nc; ++root) {
      if (seen[root]) continue;
      std::deque<int> queue{root};
      seen[root] = true;
      while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        order_.push_back(c);
        for (int s = 0; s < a_.rank(); ++s) {
          for (int d : a_.panel(s, a_.panel_of(s, c))) {
            if (!seen[d]) {
              seen[d] = true;
              parent_[d] = {c, s};
              queue.push_back(d);
            }
          }
        }
      }
    }
  }

  bool assign(int c, int target) {
    if (used_[target]) return false;
    const int n = a_.rank();
    for (int s = 0; s < n; ++s) {
      const int pa = a_.panel_of(s, c);
      const int pb = b_.panel_of(tau_[s], target);
      if (a_.panel(s, pa).size() != b_.panel(tau_[s], pb).size()) return false;
      if (forward_[s][pa] != -1 && forward_[s][pa] != pb) return false;
      if (backward_[s][pb] != -1 && backward_[s][pb] != pa) return false;
    }
    std::vector<std::pair<int, int>> undo;
    for (int s = 0; s < n; ++s) {
      const int pa = a_.panel_of(s, c);
      const int pb = b_.panel_of(tau_[s], target);
      if (forward_[s][pa] == -1) {
        forward_[s][pa] = pb;
        backward_[s][pb] = pa;
        undo.emplace_back(s, pa);
      }
    }
    undo_stack_.push_back(std::move(undo));
    map_[c] = target;
    used_[target] = true;
    return true;
  }

  void unassign(int c) {
    for (const auto& [s, pa] : undo_stack_.back()) {
      backward_[s][forward_[s][pa]] = -1;
      forward_[s][pa] = -1;
    }
    undo_stack_.pop_back();
    used_[map_[c]] = false;
    map_[c] = -1;
  }

  bool descend(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (--budget_ < 0) throw Error(ErrorCode::SearchBudgetExceeded, "isomorphism search budget exhausted");
    const int c = order_[depth];
    const auto [p, s] = parent_[c];
    std::vector<int> candidates;
    if (p >= 0) {
      candidates = b_.panel(tau_[s], b_.panel_of(tau_[s], map_[p]));
    } else {
      candidates.resize(b_.chamber_count());
      std::iota(candidates.begin(), candidates.end(), 0);
    }
    for (int t : candidates) {
      if (!assign(c, t)) continue;
      if (descend(depth + 1)) return true;
      unassign(c);
    }
    return false;
  }

  const ChamberComplex& a_;
  const ChamberComplex& b_;
  std::vector<int> tau_;
  long& budget_;
  std::vector<std::vector<int>> forward_;
  std::vector<std::vector<int>> backward_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> order_;
  std::vector<std::pair<int, int>> parent_;
  std::vector<std::vector<std::pair<int, int>>> undo_stack_;
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const ChamberComplex& a, const ChamberComplex& b, long node_budget) {
  const int n = a.rank();
  if (n != b.rank() || a.chamber_count() != b.chamber_count()) return std::nullopt;
  std::vector<int> tau(n);
  std::iota(tau.begin(), tau.end(), 0);
  long budget = node_budget;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) ok = a.system().matrix()(i, j) == b.system().matrix()(tau[i], tau[j]);
      if (ok) ok = panel_sizes(a, i) == panel_sizes(b, tau[i]);
    }
    if (!ok) continue;
    Search search(a, b, tau, budget);
    if (auto iso = search.run()) return iso;
  } while (std::next_permutation(tau.begin(), tau.end()));
  return std::nullopt;
}

bool is_isomorphism(const ChamberComplex& a, const ChamberComplex& b, const Isomorphism& iso) {
  if (a.rank() != b.rank() || a.chamber_count() != b.chamber_count()) return false;
  if (static_cast<int>(iso.chamber_map.size()) != a.chamber_count()) return false;
  std::vector<int> sorted = iso.chamber_map;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i) return false;
  }
  for (int s = 0; s < a.rank(); ++s) {
    if (a.panel_count(s) != b.panel_count(iso.type_map[s])) return false;
    for (const auto& p : a.panels(s)) {
      const int target = b.panel_of(iso.type_map[s], iso.chamber_map[p.front()]);
      for (int c : p) {
        if (b.panel_of(iso.type_map[s], iso.chamber_map[c]) != target) return false;
      }
    }
  }
  return true;
}

}  // namespace frameforge
