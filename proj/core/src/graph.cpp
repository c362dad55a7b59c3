#include "graft/graph.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "graft/errors.hpp"

namespace graft::graph {

ComponentId DependencyGraph::add_component(std::optional<SourceRef> backlink,
                                           std::optional<std::string> label) {
  components_.push_back(Component{{}, {}, std::move(backlink), std::move(label)});
  return static_cast<ComponentId>(components_.size()) - 1;
}

void DependencyGraph::add_dependency(ComponentId from, ComponentId to) {
  check_id(from);
  check_id(to);
  components_[from].successors.push_back(to);
  components_[to].predecessors.push_back(from);
}

void DependencyGraph::reserve_components(int count) {
  components_.reserve(components_.size() + static_cast<std::size_t>(count));
}

void DependencyGraph::reserve_adjacency(const std::vector<int>& out_degrees,
                                        const std::vector<int>& in_degrees) {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i < out_degrees.size()) components_[i].successors.reserve(out_degrees[i]);
    if (i < in_degrees.size()) components_[i].predecessors.reserve(in_degrees[i]);
  }
}

const Component& DependencyGraph::component(ComponentId id) const {
  check_id(id);
  return components_[id];
}

long long DependencyGraph::edge_count() const {
  long long n = 0;
  for (const Component& c : components_) n += static_cast<long long>(c.successors.size());
  return n;
}

bool DependencyGraph::has_self_edge(ComponentId id) const {
  check_id(id);
  const auto& succ = components_[id].successors;
  return std::find(succ.begin(), succ.end(), id) != succ.end();
}

std::string DependencyGraph::display_name(ComponentId id) const {
  const Component& c = component(id);
  if (c.label) return *c.label;
  if (c.backlink) return c.backlink->key;
  return "n" + std::to_string(id);
}

void DependencyGraph::check_id(ComponentId id) const {
  if (id < 0 || id >= size()) {
    throw StructuralError("unknown component id " + std::to_string(id));
  }
}

namespace {

void canonicalize(std::vector<std::vector<ComponentId>>& groups) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

SccPartition scc(const DependencyGraph& graph) {
  const int n = graph.size();

  // Pass 1: post-order DFS over successors; vertices in finish order.
  std::vector<ComponentId> finish_order;
  finish_order.reserve(n);
  std::vector<unsigned char> visited(n, 0);
  std::vector<std::pair<ComponentId, std::size_t>> stack;
  for (ComponentId v = 0; v < n; ++v) {
    if (visited[v]) continue;
    visited[v] = 1;
    stack.emplace_back(v, 0);
    while (!stack.empty()) {
      auto& [node, next_index] = stack.back();
      const auto& succ = graph.components()[node].successors;
      if (next_index < succ.size()) {
        const ComponentId next = succ[next_index++];
        if (!visited[next]) {
          visited[next] = 1;
          stack.emplace_back(next, 0);
        }
      } else {
        finish_order.push_back(node);
        stack.pop_back();
      }
    }
  }

  // Pass 2: walk the list in reverse finish order, assigning each still-free
  // vertex cluster over the stored predecessor lists.
  std::vector<int> group_of(n, -1);
  std::vector<std::vector<ComponentId>> groups;
  std::vector<ComponentId> work;
  for (auto it = finish_order.rbegin(); it != finish_order.rend(); ++it) {
    if (group_of[*it] != -1) continue;
    const int gid = static_cast<int>(groups.size());
    groups.emplace_back();
    group_of[*it] = gid;
    work.push_back(*it);
    while (!work.empty()) {
      const ComponentId node = work.back();
      work.pop_back();
      groups[gid].push_back(node);
      for (const ComponentId pred : graph.components()[node].predecessors) {
        if (group_of[pred] == -1) {
          group_of[pred] = gid;
          work.push_back(pred);
        }
      }
    }
  }

  canonicalize(groups);
  return SccPartition{std::move(groups)};
}

std::vector<std::vector<ComponentId>> nontrivial_sccs(const SccPartition& partition,
                                                      const DependencyGraph& graph) {
  std::vector<std::vector<ComponentId>> result;
  for (const auto& group : partition.groups) {
    if (group.size() > 1 || graph.has_self_edge(group.front())) {
      result.push_back(group);
    }
  }
  return result;
}

namespace {

std::string escape_dot(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string render_dot(const DependencyGraph& graph, const SccPartition* partition) {
  std::ostringstream out;
  out << "digraph {\n";

  std::vector<unsigned char> clustered(graph.size(), 0);
  if (partition != nullptr) {
    const auto clusters = nontrivial_sccs(*partition, graph);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      out << "  subgraph cluster_" << i << " {\n";
      for (const ComponentId id : clusters[i]) {
        clustered[id] = 1;
        out << "    c" << id << " [label=\"" << escape_dot(graph.display_name(id))
            << "\"];\n";
      }
      out << "  }\n";
    }
  }
  for (ComponentId id = 0; id < graph.size(); ++id) {
    if (clustered[id]) continue;
    out << "  c" << id << " [label=\"" << escape_dot(graph.display_name(id)) << "\"];\n";
  }

  std::vector<std::pair<ComponentId, ComponentId>> edges;
  edges.reserve(static_cast<std::size_t>(graph.edge_count()));
  for (ComponentId id = 0; id < graph.size(); ++id) {
    for (const ComponentId to : graph.components()[id].successors) {
      edges.emplace_back(id, to);
    }
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [from, to] : edges) {
    out << "  c" << from << " -> c" << to << ";\n";
  }

  out << "}\n";
  return out.str();
}

std::vector<CycleFinding> cycle_findings(const DependencyGraph& graph,
                                         const SccPartition& partition) {
  std::vector<CycleFinding> findings;
  for (const auto& group : nontrivial_sccs(partition, graph)) {
    CycleFinding finding;
    finding.members.reserve(group.size());
    for (const ComponentId id : group) {
      finding.members.push_back(
          CycleMember{graph.display_name(id), graph.components()[id].backlink});
    }
    findings.push_back(std::move(finding));
  }
  return findings;
}

}  // namespace graft::graph
