#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "graft/bench.hpp"
#include "graft/errors.hpp"
#include "graft/graph.hpp"
#include "graft/rng.hpp"
#include "graft/statemachine.hpp"

using namespace graft;
using sm::StateMachine;

namespace {

const char* kSevenStateText =
    "state A      state B      state C      state D // States\n"
    "state G      final state E  final state F\n"
    "A->F:1 A->B:0 B->C:1 B->D:0 C->E:1 C->E:0 // Transitions\n"
    "E->B:1 E->D:0 F->G:1 F->A:0 G->G:1 G->G:0\n"
    "initial A // Initial state\n";

std::set<std::set<std::string>> label_partition(const StateMachine& machine,
                                                const std::vector<std::vector<int>>& groups) {
  std::set<std::set<std::string>> out;
  for (const auto& group : groups) {
    std::set<std::string> labels;
    for (const int s : group) labels.insert(machine.states()[s].label);
    out.insert(std::move(labels));
  }
  return out;
}

/// Overlay partition mapped back to state labels through component backlinks.
std::set<std::set<std::string>> overlay_partition(const StateMachine& machine) {
  const graph::DependencyGraph& g = machine.dependency_graph();
  const graph::SccPartition partition = graph::scc(g);
  std::set<std::set<std::string>> out;
  for (const auto& group : partition.groups) {
    std::set<std::string> labels;
    for (const int id : group) {
      REQUIRE(g.components()[id].backlink.has_value());
      const int state = machine.state_index(g.components()[id].backlink->key);
      REQUIRE(state >= 0);
      labels.insert(machine.states()[state].label);
    }
    out.insert(std::move(labels));
  }
  return out;
}

}  // namespace

TEST_CASE("parses the seven-state machine") {
  const StateMachine machine = sm::parse_state_machine(kSevenStateText, "m.sm");
  CHECK(machine.states().size() == 7);
  CHECK(machine.transitions().size() == 12);
  CHECK(machine.states()[machine.initial()].label == "A");

  std::set<std::string> final_labels;
  for (const int s : machine.finals()) final_labels.insert(machine.states()[s].label);
  CHECK(final_labels == std::set<std::string>{"E", "F"});

  // Bidirectional transition relations.
  for (std::size_t t = 0; t < machine.transitions().size(); ++t) {
    const sm::Transition& tr = machine.transitions()[t];
    const auto& out = machine.states()[tr.from].outgoing;
    const auto& in = machine.states()[tr.to].incoming;
    CHECK(std::count(out.begin(), out.end(), static_cast<int>(t)) == 1);
    CHECK(std::count(in.begin(), in.end(), static_cast<int>(t)) == 1);
  }
}

TEST_CASE("parses the minimal machine") {
  const StateMachine machine = sm::parse_state_machine("state A initial A");
  CHECK(machine.states().size() == 1);
  CHECK(machine.transitions().empty());
  CHECK(machine.finals().empty());
}

TEST_CASE("final on the initial state is permitted") {
  const StateMachine machine = sm::parse_state_machine("final state A initial A");
  CHECK(machine.states()[machine.initial()].is_final);
}

TEST_CASE("parse errors carry positions and name the problem") {
  CHECK_THROWS_WITH_AS(sm::parse_state_machine("A->B:0 initial A", "t.sm"),
                       doctest::Contains("unresolved state id 'A'"), ParseError);
  CHECK_THROWS_WITH_AS(sm::parse_state_machine("state A state A initial A"),
                       doctest::Contains("duplicate state label 'A'"), ParseError);
  CHECK_THROWS_WITH_AS(sm::parse_state_machine("state A"),
                       doctest::Contains("missing 'initial' clause"), ParseError);
  CHECK_THROWS_WITH_AS(sm::parse_state_machine("state A initial A initial A"),
                       doctest::Contains("duplicate 'initial' clause"), ParseError);
  CHECK_THROWS_AS(sm::parse_state_machine("state A A-B:0 initial A"), ParseError);

  try {
    sm::parse_state_machine("state A\nA->?:0\ninitial A", "pos.sm");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.file() == "pos.sm");
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
  }
}

TEST_CASE("interleaved declarations parse; printer emits canonical order") {
  const StateMachine machine =
      sm::parse_state_machine("state A A->B:x state B initial A");
  CHECK(machine.transitions().size() == 1);
  const std::string printed = sm::print_state_machine(machine);
  CHECK(printed == "state A\nstate B\nA->B:x\ninitial A\n");
}

TEST_CASE("print/parse round-trip preserves structure") {
  const StateMachine machine = sm::parse_state_machine(kSevenStateText, "m.sm");
  const StateMachine reparsed =
      sm::parse_state_machine(sm::print_state_machine(machine), "r.sm");
  CHECK(sm::structurally_equal(machine, reparsed));

  Rng rng(9001);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string text =
        bench::generate_state_machine_text(1 + rng.below(60), 0.08, rng.next());
    const StateMachine m = sm::parse_state_machine(text, "gen.sm");
    CHECK(sm::structurally_equal(m, sm::parse_state_machine(sm::print_state_machine(m))));
  }
}

TEST_CASE("dependency graph overlay mirrors states and transitions") {
  const StateMachine machine = sm::parse_state_machine(kSevenStateText, "m.sm");
  const graph::DependencyGraph& g = machine.dependency_graph();
  CHECK(g.size() == 7);
  CHECK(g.edge_count() == 12);
  REQUIRE(g.backlink().has_value());
  CHECK(g.backlink()->key == "m.sm");

  // Every component carries exactly one state backlink that resolves.
  for (int id = 0; id < g.size(); ++id) {
    REQUIRE(g.components()[id].backlink.has_value());
    const SourceRef& ref = *g.components()[id].backlink;
    CHECK(ref.frontend == FrontendKind::StateMachine);
    CHECK(machine.state_index(ref.key) == id);
    CHECK(ref.span.file == "m.sm");
  }
}

TEST_CASE("overlay construction is memoized") {
  const StateMachine machine = sm::parse_state_machine(kSevenStateText, "m.sm");
  CHECK(machine.dependency_graph_build_count() == 0);
  const graph::DependencyGraph* first = &machine.dependency_graph();
  for (int i = 0; i < 100; ++i) {
    CHECK(&machine.dependency_graph() == first);
  }
  CHECK(machine.dependency_graph_build_count() == 1);
  machine.reset_overlay_cache();
  (void)machine.dependency_graph();
  CHECK(machine.dependency_graph_build_count() == 2);
}

TEST_CASE("direct_scc reproduces the four expected groups") {
  const StateMachine machine = sm::parse_state_machine(kSevenStateText, "m.sm");
  const auto partition = sm::direct_scc(machine);
  const std::set<std::set<std::string>> expected = {
      {"A", "F"}, {"B", "C", "E"}, {"D"}, {"G"}};
  CHECK(label_partition(machine, partition) == expected);
  CHECK(overlay_partition(machine) == expected);
}

TEST_CASE("single isolated state forms one singleton") {
  const StateMachine machine = sm::parse_state_machine("state A initial A");
  CHECK(sm::direct_scc(machine) == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("direct and overlay paths agree on random machines") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int states = 1 + rng.below(100);
    const std::string text = bench::generate_state_machine_text(
        states, rng.unit() * std::min(1.0, 8.0 / states), rng.next());
    const StateMachine machine = sm::parse_state_machine(text, "gen.sm");
    CHECK(label_partition(machine, sm::direct_scc(machine)) == overlay_partition(machine));
  }
}

TEST_CASE("cycle_report lists the three cycles in order") {
  const StateMachine machine = sm::parse_state_machine(kSevenStateText, "m.sm");
  const auto findings = sm::cycle_report(machine);
  REQUIRE(findings.size() == 3);
  CHECK(findings[0].members[0].name == "A");
  CHECK(findings[0].members[1].name == "F");
  CHECK(findings[1].members.size() == 3);
  CHECK(findings[2].members[0].name == "G");
  for (const auto& finding : findings) {
    for (const auto& member : finding.members) {
      REQUIRE(member.ref.has_value());
      CHECK(machine.state_index(member.ref->key) >= 0);
    }
  }
}

TEST_CASE("cycle_report is empty for an acyclic machine") {
  const StateMachine machine =
      sm::parse_state_machine("state A state B A->B:go initial A");
  CHECK(sm::cycle_report(machine).empty());
}

TEST_CASE("a lone self-loop is reported as one cycle") {
  const StateMachine machine = sm::parse_state_machine("state G G->G:1 initial G");
  const auto findings = sm::cycle_report(machine);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].members.size() == 1);
  CHECK(findings[0].members[0].name == "G");
}
