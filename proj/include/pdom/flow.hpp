#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"

namespace pdom {

/// Four-layer transport network: source -> left nodes -> right nodes -> sink.
///
/// Node ids: 0 is the source, 1..L the left nodes, L+1..L+R the right nodes,
/// L+R+1 the sink. Edges are restricted to that shape.
class FlowNetwork {
 public:
  using Node = std::size_t;

  struct Edge {
    Node from;
    Node to;
    Dyadic capacity;
  };

  FlowNetwork(std::size_t left_count, std::size_t right_count)
      : left_count_(left_count), right_count_(right_count), labels_(left_count + right_count + 2) {
    labels_[source()] = "source";
    labels_[sink()] = "sink";
    for (std::size_t i = 0; i < left_count; ++i) labels_[left(i)] = "L" + std::to_string(i);
    for (std::size_t j = 0; j < right_count; ++j) labels_[right(j)] = "R" + std::to_string(j);
  }

  [[nodiscard]] Node source() const noexcept { return 0; }
  [[nodiscard]] Node sink() const noexcept { return left_count_ + right_count_ + 1; }
  [[nodiscard]] Node left(std::size_t i) const {
    if (i >= left_count_) fail(Errc::unknown_element, "left node " + std::to_string(i));
    return 1 + i;
  }
  [[nodiscard]] Node right(std::size_t j) const {
    if (j >= right_count_) fail(Errc::unknown_element, "right node " + std::to_string(j));
    return 1 + left_count_ + j;
  }
  [[nodiscard]] std::size_t node_count() const noexcept { return left_count_ + right_count_ + 2; }
  [[nodiscard]] std::size_t left_count() const noexcept { return left_count_; }
  [[nodiscard]] std::size_t right_count() const noexcept { return right_count_; }

  std::size_t add_supply(std::size_t i, Dyadic capacity) { return add_edge(source(), left(i), std::move(capacity)); }
  std::size_t add_link(std::size_t i, std::size_t j, Dyadic capacity) {
    return add_edge(left(i), right(j), std::move(capacity));
  }
  std::size_t add_demand(std::size_t j, Dyadic capacity) { return add_edge(right(j), sink(), std::move(capacity)); }

  void set_label(Node n, std::string label) { labels_.at(n) = std::move(label); }
  [[nodiscard]] const std::string& label(Node n) const { return labels_.at(n); }

  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Largest capacity exponent; all capacities are integers after scaling by 2^p.
  [[nodiscard]] std::uint32_t common_exponent() const {
    std::uint32_t p = 0;
    for (const auto& e : edges_) p = std::max(p, e.capacity.exponent());
    return p;
  }

 private:
  std::size_t add_edge(Node from, Node to, Dyadic capacity) {
    edges_.push_back({from, to, std::move(capacity)});
    return edges_.size() - 1;
  }

  std::size_t left_count_;
  std::size_t right_count_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

struct Flow {
  Dyadic value;
  std::vector<Dyadic> edge_flows;  // parallel to FlowNetwork::edges()
};

struct Cut {
  Dyadic value;
  std::vector<bool> source_side;  // indexed by node id
};

struct FlowSolution {
  Flow flow;
  Cut cut;
};

/// Edmonds-Karp over the network scaled to integers by its common
/// denominator. Breadth-first search visits arcs in (head node, edge
/// declaration) order, so results are reproducible.
inline FlowSolution solve_flow(const FlowNetwork& net) {
  const std::uint32_t p = net.common_exponent();
  const auto& edges = net.edges();
  const std::size_t n = net.node_count();

  struct Arc {
    FlowNetwork::Node head;
    BigInt residual;
  };
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * 2);
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    arcs.push_back({edges[e].to, edges[e].capacity.rescale(p)});
    arcs.push_back({edges[e].from, 0});
    adjacency[edges[e].from].push_back(2 * e);
    adjacency[edges[e].to].push_back(2 * e + 1);
  }
  for (auto& list : adjacency) {
    std::stable_sort(list.begin(), list.end(),
                     [&](std::size_t a, std::size_t b) { return arcs[a].head < arcs[b].head; });
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(n);
  auto bfs = [&]() {
    std::fill(parent.begin(), parent.end(), kNone);
    std::vector<bool> seen(n, false);
    std::deque<FlowNetwork::Node> queue{net.source()};
    seen[net.source()] = true;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (std::size_t a : adjacency[u]) {
        const auto v = arcs[a].head;
        if (seen[v] || arcs[a].residual == 0) continue;
        seen[v] = true;
        parent[v] = a;
        queue.push_back(v);
      }
    }
    return seen;
  };

  BigInt total = 0;
  std::vector<bool> reachable;
  while (true) {
    reachable = bfs();
    if (!reachable[net.sink()]) break;
    BigInt bottleneck = -1;
    for (auto v = net.sink(); v != net.source(); v = arcs[parent[v] ^ 1].head) {
      const auto& r = arcs[parent[v]].residual;
      if (bottleneck < 0 || r < bottleneck) bottleneck = r;
    }
    for (auto v = net.sink(); v != net.source(); v = arcs[parent[v] ^ 1].head) {
      arcs[parent[v]].residual -= bottleneck;
      arcs[parent[v] ^ 1].residual += bottleneck;
    }
    total += bottleneck;
  }

  FlowSolution out;
  out.flow.value = Dyadic::from_parts(total, p);
  out.flow.edge_flows.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out.flow.edge_flows.push_back(Dyadic::from_parts(arcs[2 * e + 1].residual, p));
  }
  out.cut.source_side = reachable;
  for (const auto& e : edges) {
    if (reachable[e.from] && !reachable[e.to]) out.cut.value += e.capacity;
  }
  return out;
}

inline Flow max_flow(const FlowNetwork& net) { return solve_flow(net).flow; }
inline Cut min_cut(const FlowNetwork& net) { return solve_flow(net).cut; }

/// Hasse-style DOT rendering; edges carry "flow/capacity" when a flow is given.
inline std::string network_to_dot(const FlowNetwork& net, const Flow* flow = nullptr) {
  std::ostringstream os;
  os << "digraph flow {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < net.node_count(); ++v) os << "  n" << v << " [label=\"" << net.label(v) << "\"];\n";
  const auto& edges = net.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    os << "  n" << edges[e].from << " -> n" << edges[e].to << " [label=\"";
    if (flow != nullptr) os << flow->edge_flows.at(e) << "/";
    os << edges[e].capacity << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pdom
