#include "ntst/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "ntst/errors.hpp"

namespace ntst {

MaxFlow::MaxFlow(int n) : head_(n, -1) {
  require(n >= 0, "flow network needs a non-negative vertex count");
}

int MaxFlow::addEdge(int from, int to, std::int64_t capacity) {
  require(!ran_, "cannot add edges after running max flow");
  require(from >= 0 && from < numVertices() && to >= 0 && to < numVertices(),
          "flow edge endpoint out of range");
  require(capacity >= 0, "flow capacities must be non-negative");
  int id = static_cast<int>(originalCap_.size());
  arcs_.push_back({to, capacity, head_[from]});
  head_[from] = 2 * id;
  arcs_.push_back({from, 0, head_[to]});
  head_[to] = 2 * id + 1;
  originalCap_.push_back(capacity);
  return id;
}

bool MaxFlow::buildLevels(int s, int t) {
  level_.assign(numVertices(), -1);
  std::queue<int> queue;
  level_[s] = 0;
  queue.push(s);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int a = head_[v]; a != -1; a = arcs_[a].next) {
      if (arcs_[a].cap > 0 && level_[arcs_[a].to] == -1) {
        level_[arcs_[a].to] = level_[v] + 1;
        queue.push(arcs_[a].to);
      }
    }
  }
  return level_[t] != -1;
}

std::int64_t MaxFlow::augment(int v, int t, std::int64_t limit) {
  if (v == t) return limit;
  for (int& a = iter_[v]; a != -1; a = arcs_[a].next) {
    Arc& arc = arcs_[a];
    if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
    std::int64_t pushed = augment(arc.to, t, std::min(limit, arc.cap));
    if (pushed > 0) {
      arc.cap -= pushed;
      arcs_[a ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
  require(!ran_, "max flow may be run only once");
  require(s >= 0 && s < numVertices() && t >= 0 && t < numVertices() && s != t,
          "invalid max flow terminals");
  ran_ = true;
  std::int64_t total = 0;
  while (buildLevels(s, t)) {
    iter_ = head_;
    while (std::int64_t pushed =
               augment(s, t, std::numeric_limits<std::int64_t>::max())) {
      total += pushed;
    }
  }
  return total;
}

std::int64_t MaxFlow::flowOn(int edgeId) const {
  require(ran_, "query the flow only after running it");
  require(edgeId >= 0 && edgeId < static_cast<int>(originalCap_.size()),
          "flow edge id out of range");
  return originalCap_[edgeId] - arcs_[2 * edgeId].cap;
}

std::vector<char> MaxFlow::minCutSourceSide(int s) const {
  require(ran_, "query the cut only after running the flow");
  std::vector<char> seen(numVertices(), 0);
  std::queue<int> queue;
  seen[s] = 1;
  queue.push(s);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int a = head_[v]; a != -1; a = arcs_[a].next) {
      if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
        seen[arcs_[a].to] = 1;
        queue.push(arcs_[a].to);
      }
    }
  }
  return seen;
}

bool boundedCirculationFeasible(int n, const std::vector<BoundedEdge>& edges,
                                std::vector<std::int64_t>* flowOut) {
  require(n >= 0, "circulation network needs a non-negative vertex count");
  for (const BoundedEdge& e : edges) {
    require(e.from >= 0 && e.from < n && e.to >= 0 && e.to < n,
            "circulation edge endpoint out of range");
    require(0 <= e.lower && e.lower <= e.upper,
            "circulation edge bounds must satisfy 0 <= lower <= upper");
  }

  // excess[v] = sum of lower bounds into v minus sum of lower bounds out of v.
  std::vector<std::int64_t> excess(n, 0);
  for (const BoundedEdge& e : edges) {
    excess[e.from] -= e.lower;
    excess[e.to] += e.lower;
  }

  int source = n;
  int sink = n + 1;
  MaxFlow flow(n + 2);
  std::vector<int> edgeIds(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edgeIds[i] = flow.addEdge(edges[i].from, edges[i].to,
                              edges[i].upper - edges[i].lower);
  }
  std::int64_t needed = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      flow.addEdge(source, v, excess[v]);
      needed += excess[v];
    } else if (excess[v] < 0) {
      flow.addEdge(v, sink, -excess[v]);
    }
  }
  bool feasible = flow.run(source, sink) == needed;
  if (feasible && flowOut != nullptr) {
    flowOut->assign(edges.size(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      (*flowOut)[i] = edges[i].lower + flow.flowOn(edgeIds[i]);
    }
  }
  return feasible;
}

}  // namespace ntst
