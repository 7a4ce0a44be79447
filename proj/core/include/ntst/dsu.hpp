#pragma once
#include <numeric>
#include <vector>

namespace ntst {

/// Union-find with union by size. `Dsu` uses path compression; `RollbackDsu`
/// skips compression so unions can be undone in LIFO order (used by the
/// spanning-tree enumerator).
struct Dsu {
  std::vector<int> parent, size;
  explicit Dsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  /// Returns false when u,v were already joined.
  bool unite(int u, int v) {
    u = find(u); v = find(v);
    if (u == v) return false;
    if (size[u] < size[v]) std::swap(u, v);
    parent[v] = u; size[u] += size[v];
    return true;
  }
  bool same(int u, int v) { return find(u) == find(v); }
};

struct RollbackDsu {
  std::vector<int> parent, size;
  std::vector<int> undo_;  // roots that were attached, in order
  explicit RollbackDsu(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) const {
    while (parent[v] != v) v = parent[v];
    return v;
  }
  bool unite(int u, int v) {
    u = find(u); v = find(v);
    if (u == v) return false;
    if (size[u] < size[v]) std::swap(u, v);
    parent[v] = u; size[u] += size[v];
    undo_.push_back(v);
    return true;
  }
  int checkpoint() const { return (int)undo_.size(); }
  void rollback(int mark) {
    while ((int)undo_.size() > mark) {
      int v = undo_.back(); undo_.pop_back();
      size[parent[v]] -= size[v];
      parent[v] = v;
    }
  }
  bool same(int u, int v) const { return find(u) == find(v); }
};

}  // namespace ntst
