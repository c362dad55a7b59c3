#ifndef GRAFT_STATEMACHINE_HPP
#define GRAFT_STATEMACHINE_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graft/source_ref.hpp"

namespace graft::graph {
class DependencyGraph;
struct CycleFinding;
}  // namespace graft::graph

namespace graft::sm {

/// Transition between two states, resolved to state indices.
struct Transition {
  std::string event;
  int from = -1;
  int to = -1;
  Span span;
};

/// State with both transition directions resolved: `outgoing` and `incoming`
/// hold indices into the machine's transition list.
struct State {
  std::string label;
  bool is_final = false;
  std::vector<int> outgoing;
  std::vector<int> incoming;
  Span span;
};

/// Parsed state machine. Immutable after parsing; the dependency-graph
/// overlay is derived on demand and cached, so repeated analyses reuse one
/// overlay per machine. Derive the overlay before sharing a machine across
/// threads.
class StateMachine {
 public:
  StateMachine();
  StateMachine(StateMachine&&) noexcept;
  StateMachine& operator=(StateMachine&&) noexcept;
  ~StateMachine();

  const std::vector<State>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  int initial() const { return initial_; }
  const std::vector<int>& finals() const { return finals_; }  // ascending
  const std::string& file() const { return file_; }

  /// Index of the state with this label, or -1. Resolves overlay back-links.
  int state_index(std::string_view label) const;

  /// Memoized overlay: one component per state (back-linked), one edge per
  /// transition. Transitions themselves are not back-linked; their labelling
  /// plays no role in dependency analysis.
  const graph::DependencyGraph& dependency_graph() const;
  int dependency_graph_build_count() const { return overlay_builds_; }
  void reset_overlay_cache() const;

 private:
  friend StateMachine parse_state_machine(std::string_view, std::string);

  std::vector<State> states_;
  std::vector<Transition> transitions_;
  int initial_ = -1;
  std::vector<int> finals_;
  std::string file_;

  mutable std::unique_ptr<graph::DependencyGraph> overlay_;
  mutable int overlay_builds_ = 0;
};

/// Parses the concrete syntax: `[final] state ID`, transitions `A->B:ev`, and
/// one `initial ID` clause, in any order; `//` comments run to end of line.
/// Throws ParseError with a 1-based position on malformed input, unresolved
/// or duplicate state ids, and missing or repeated `initial`.
StateMachine parse_state_machine(std::string_view text, std::string file = "<input>");

/// Canonical text: all states, then all transitions, then the initial clause.
std::string print_state_machine(const StateMachine& machine);

/// Equality up to source positions.
bool structurally_equal(const StateMachine& a, const StateMachine& b);

/// Cycle detection woven directly into the state/transition relations:
/// forward over outgoing transitions, backward over incoming ones. Returns
/// the canonical partition of state indices.
std::vector<std::vector<int>> direct_scc(const StateMachine& machine);

/// Nontrivial cycles in frontend terms, via the overlay and its back-links.
std::vector<graph::CycleFinding> cycle_report(const StateMachine& machine);

}  // namespace graft::sm

#endif
