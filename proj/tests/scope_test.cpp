#include <doctest.h>

#include <string>

#include "graft/errors.hpp"
#include "graft/rng.hpp"
#include "graft/scope.hpp"
#include "oracles.hpp"

using namespace graft;
using scope::DeclId;
using scope::ScopeId;
using scope::ScopeTree;

namespace {

SourceRef ref(const std::string& name, int line) {
  return SourceRef{FrontendKind::MiniJava, name, Span{"t.java", line, 1, line, 1}};
}

/// Scope tree shaped like the two-class shadowing example: class A with a
/// field, a constructor parameter, and a method local, class B extending A
/// with a field and a nested class C with a field, every declaration named x.
struct TwoClassTree {
  ScopeTree tree;
  DeclId x1, x2, x3, x4, x5;

  TwoClassTree() {
    const ScopeId class_a = tree.add_scope(tree.root(), "class");
    x1 = tree.add_declaration(class_a, "x", ref("x1", 2));
    const ScopeId ctor = tree.add_scope(class_a, "method");
    x2 = tree.add_declaration(ctor, "x", ref("x2", 3));
    const ScopeId method_m = tree.add_scope(class_a, "method");
    x3 = tree.add_declaration(method_m, "x", ref("x3", 7));
    const ScopeId class_b = tree.add_scope(tree.root(), "class");
    x4 = tree.add_declaration(class_b, "x", ref("x4", 11));
    const ScopeId class_c = tree.add_scope(class_b, "class");
    x5 = tree.add_declaration(class_c, "x", ref("x5", 13));
    tree.link_inherited(class_b, class_a);
  }
};

}  // namespace

TEST_CASE("link_inherited appends and rejects cycles") {
  ScopeTree tree;
  const ScopeId a = tree.add_scope(tree.root(), "class");
  const ScopeId b = tree.add_scope(tree.root(), "class");

  SUBCASE("simple extends link") {
    tree.link_inherited(b, a);
    CHECK(tree.scope(b).inherited == std::vector<ScopeId>{a});
    CHECK(tree.scope(a).inherited.empty());
  }

  SUBCASE("two-scope inheritance cycle is rejected and rolled back") {
    tree.link_inherited(b, a);
    CHECK_THROWS_AS(tree.link_inherited(a, b), StructuralError);
    CHECK(tree.scope(a).inherited.empty());
  }

  SUBCASE("self-inheritance is rejected") {
    CHECK_THROWS_AS(tree.link_inherited(a, a), StructuralError);
  }

  SUBCASE("cycle error names the participants") {
    const ScopeId c = tree.add_scope(tree.root(), "class");
    tree.link_inherited(b, a);
    tree.link_inherited(c, b);
    CHECK_THROWS_WITH_AS(tree.link_inherited(a, c),
                         doctest::Contains("inheritance cycle"), StructuralError);
  }
}

TEST_CASE("declarations require non-empty names") {
  ScopeTree tree;
  CHECK_THROWS_AS(tree.add_declaration(tree.root(), "", ref("", 1)), StructuralError);
}

TEST_CASE("shadowed follows siblings, inherited scopes, then enclosing chain") {
  TwoClassTree fixture;
  const ScopeTree& tree = fixture.tree;

  CHECK(tree.shadowed(fixture.x2) == fixture.x1);  // enclosing class scope
  CHECK(tree.shadowed(fixture.x3) == fixture.x1);
  CHECK(tree.shadowed(fixture.x4) == fixture.x1);  // via the inherited scope
  CHECK(tree.shadowed(fixture.x5) == fixture.x4);  // via the enclosing chain
  CHECK(tree.shadowed(fixture.x1) == std::nullopt);
}

TEST_CASE("shadowed returns absent for a unique name") {
  ScopeTree tree;
  const ScopeId s = tree.add_scope(tree.root(), "class");
  const DeclId only = tree.add_declaration(s, "unique", ref("unique", 1));
  CHECK(tree.shadowed(only) == std::nullopt);
}

TEST_CASE("shadowed rejects detached declaration ids") {
  ScopeTree tree;
  CHECK_THROWS_AS(tree.shadowed(0), StructuralError);
  CHECK_THROWS_AS(tree.shadowed(-3), StructuralError);
}

TEST_CASE("lookup in an inherited scope escalates through its own enclosing chain") {
  // outer { y; base {} }  sub extends base { y; }
  // The lookup for y in sub finds outer's y through base's enclosing chain,
  // although outer does not enclose sub.
  ScopeTree tree;
  const ScopeId outer = tree.add_scope(tree.root(), "class");
  const DeclId y_outer = tree.add_declaration(outer, "y", ref("y_outer", 1));
  const ScopeId base = tree.add_scope(outer, "class");
  const ScopeId sub = tree.add_scope(tree.root(), "class");
  const DeclId y_sub = tree.add_declaration(sub, "y", ref("y_sub", 5));
  tree.link_inherited(sub, base);

  CHECK(tree.shadowed(y_sub) == y_outer);
  CHECK(testing::oracle_shadowed(tree, y_sub) == y_outer);
}

TEST_CASE("diamond inheritance terminates and revisits no scope") {
  ScopeTree tree;
  const ScopeId top = tree.add_scope(tree.root(), "class");
  const DeclId v_top = tree.add_declaration(top, "v", ref("v_top", 1));
  const ScopeId left = tree.add_scope(tree.root(), "class");
  const ScopeId right = tree.add_scope(tree.root(), "class");
  const ScopeId bottom = tree.add_scope(tree.root(), "class");
  tree.link_inherited(left, top);
  tree.link_inherited(right, top);
  tree.link_inherited(bottom, left);
  tree.link_inherited(bottom, right);
  const DeclId v_bottom = tree.add_declaration(bottom, "v", ref("v_bottom", 9));

  CHECK(tree.shadowed(v_bottom) == v_top);
  CHECK(testing::oracle_shadowed(tree, v_bottom) == v_top);
}

TEST_CASE("variable_shadowings reports the four expected pairs in span order") {
  TwoClassTree fixture;
  const auto& findings = fixture.tree.variable_shadowings();
  REQUIRE(findings.size() == 4);
  CHECK(findings[0] == scope::ShadowFinding{fixture.x2, fixture.x1, false});
  CHECK(findings[1] == scope::ShadowFinding{fixture.x3, fixture.x1, false});
  CHECK(findings[2] == scope::ShadowFinding{fixture.x4, fixture.x1, false});
  CHECK(findings[3] == scope::ShadowFinding{fixture.x5, fixture.x4, false});
}

TEST_CASE("variable_shadowings is empty for all-distinct names") {
  ScopeTree tree;
  const ScopeId s = tree.add_scope(tree.root(), "class");
  tree.add_declaration(s, "a", ref("a", 1));
  tree.add_declaration(s, "b", ref("b", 2));
  CHECK(tree.variable_shadowings().empty());
}

TEST_CASE("same-scope duplicates surface as findings tagged same_scope") {
  ScopeTree tree;
  const ScopeId s = tree.add_scope(tree.root(), "class");
  const DeclId first = tree.add_declaration(s, "dup", ref("dup1", 1));
  const DeclId second = tree.add_declaration(s, "dup", ref("dup2", 2));
  const auto& findings = tree.variable_shadowings();
  REQUIRE(findings.size() == 2);
  CHECK(findings[0] == scope::ShadowFinding{first, second, true});
  CHECK(findings[1] == scope::ShadowFinding{second, first, true});
}

TEST_CASE("variable_shadowings is memoized until the tree changes") {
  TwoClassTree fixture;
  const auto* first = &fixture.tree.variable_shadowings();
  for (int i = 0; i < 100; ++i) {
    CHECK(&fixture.tree.variable_shadowings() == first);
  }
  CHECK(fixture.tree.shadowing_eval_count() == 1);

  // A mutation invalidates the cache.
  fixture.tree.add_declaration(fixture.tree.root(), "x", ref("x6", 20));
  (void)fixture.tree.variable_shadowings();
  CHECK(fixture.tree.shadowing_eval_count() == 2);
}

TEST_CASE("every finding pairs equal names and distinct declarations") {
  Rng rng(500);
  for (int trial = 0; trial < 100; ++trial) {
    const ScopeTree tree = testing::random_scope_tree(rng, 30, 5, 3);
    for (const scope::ShadowFinding& f : tree.variable_shadowings()) {
      CHECK(f.shadower != f.shadowed);
      CHECK(tree.declaration(f.shadower).name == tree.declaration(f.shadowed).name);
      CHECK((f.same_scope ==
             (tree.declaration(f.shadower).owner == tree.declaration(f.shadowed).owner)));
    }
  }
}

TEST_CASE("variable_shadowings matches the lookup-order oracle on random trees") {
  Rng rng(501);
  for (int trial = 0; trial < 300; ++trial) {
    const ScopeTree tree = testing::random_scope_tree(rng, 30, 5, 3);
    CHECK(tree.variable_shadowings() == testing::oracle_shadowings(tree));
  }
}

TEST_CASE("build trace records scope creation and inheritance order") {
  ScopeTree tree;
  const ScopeId a = tree.add_scope(tree.root(), "class");
  const ScopeId b = tree.add_scope(tree.root(), "class");
  tree.link_inherited(b, a);
  const auto& trace = tree.build_trace();
  REQUIRE(trace.size() == 4);  // root, a, b, link
  CHECK(trace[0].kind == scope::BuildEvent::Kind::ScopeAdded);
  CHECK(trace[3].kind == scope::BuildEvent::Kind::InheritanceLinked);
  CHECK(trace[3].id == b);
}
