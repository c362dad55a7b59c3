#ifndef GRAFT_GRAPH_HPP
#define GRAFT_GRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "graft/source_ref.hpp"

namespace graft::graph {

using ComponentId = int;

/// Vertex of a dependency graph. Both edge directions are stored so the
/// second pass of the component search never materializes an inverted graph.
struct Component {
  std::vector<ComponentId> successors;
  std::vector<ComponentId> predecessors;
  std::optional<SourceRef> backlink;
  std::optional<std::string> label;
};

/// Domain-independent directed graph. Frontends derive one from their AST and
/// attach back-links; the analysis below never looks at those links.
/// Construction is single-writer; a finished graph is safe to analyze
/// read-only from multiple threads.
class DependencyGraph {
 public:
  /// Appends a fresh component with empty adjacency and returns its id.
  /// Ids are dense integers in insertion order.
  ComponentId add_component(std::optional<SourceRef> backlink = std::nullopt,
                            std::optional<std::string> label = std::nullopt);

  /// Records the edge in both adjacency directions. Parallel edges are kept.
  /// Throws StructuralError if either id is unknown.
  void add_dependency(ComponentId from, ComponentId to);

  /// Bulk-construction hints; semantics are unchanged.
  void reserve_components(int count);
  void reserve_adjacency(const std::vector<int>& out_degrees,
                         const std::vector<int>& in_degrees);

  const Component& component(ComponentId id) const;
  int size() const { return static_cast<int>(components_.size()); }
  long long edge_count() const;
  bool has_self_edge(ComponentId id) const;

  const std::vector<Component>& components() const { return components_; }

  void set_backlink(SourceRef ref) { backlink_ = std::move(ref); }
  const std::optional<SourceRef>& backlink() const { return backlink_; }

  /// Display name for reports and DOT output: label, else back-link key,
  /// else a generated placeholder.
  std::string display_name(ComponentId id) const;

 private:
  void check_id(ComponentId id) const;

  std::vector<Component> components_;
  std::optional<SourceRef> backlink_;
};

/// Partition of all component ids into strongly connected components,
/// canonicalized: members ascending, groups ordered by smallest member.
struct SccPartition {
  std::vector<std::vector<ComponentId>> groups;

  bool operator==(const SccPartition&) const = default;
};

/// Kosaraju-style component search: a post-order depth-first pass over the
/// successor lists builds the visit list, a second pass over the predecessor
/// lists assigns components. Iterative; safe for corpus-scale graphs.
SccPartition scc(const DependencyGraph& graph);

/// Groups that contain a cycle: size > 1, or a singleton whose component has
/// a self-edge. Parallel self-edges count once.
std::vector<std::vector<ComponentId>> nontrivial_sccs(const SccPartition& partition,
                                                      const DependencyGraph& graph);

/// Deterministic DOT rendering. With a partition, every nontrivial group
/// becomes a cluster subgraph.
std::string render_dot(const DependencyGraph& graph,
                       const SccPartition* partition = nullptr);

/// Cycle reported in frontend terms, one member per participating component.
struct CycleMember {
  std::string name;
  std::optional<SourceRef> ref;

  bool operator==(const CycleMember&) const = default;
};

struct CycleFinding {
  std::vector<CycleMember> members;

  bool operator==(const CycleFinding&) const = default;
};

/// One finding per nontrivial group, members in component-id order.
std::vector<CycleFinding> cycle_findings(const DependencyGraph& graph,
                                         const SccPartition& partition);

}  // namespace graft::graph

#endif
