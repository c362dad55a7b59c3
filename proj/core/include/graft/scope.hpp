#ifndef GRAFT_SCOPE_HPP
#define GRAFT_SCOPE_HPP

#include <optional>
#include <string>
#include <vector>

#include "graft/source_ref.hpp"

namespace graft::scope {

using ScopeId = int;
using DeclId = int;

/// Element of a scope: either a declaration or a nested scope, in document
/// order.
struct ScopeElement {
  enum class Kind { Declaration, Scope };
  Kind kind;
  int id;  // DeclId or ScopeId depending on kind
};

struct Scope {
  std::string kind;  // free-form tag: "root", "class", "method", ...
  ScopeId parent = -1;
  std::vector<ScopeElement> elements;
  std::vector<ScopeId> inherited;
  std::optional<SourceRef> backlink;
};

struct Declaration {
  std::string name;
  ScopeId owner = -1;
  SourceRef backlink;
};

struct ShadowFinding {
  DeclId shadower;
  DeclId shadowed;
  bool same_scope = false;  // shadowed sits in the shadower's own scope

  bool operator==(const ShadowFinding&) const = default;
};

/// Order of construction events, recorded so frontends can demonstrate
/// two-phase building (all scopes before any inheritance link).
struct BuildEvent {
  enum class Kind { ScopeAdded, DeclarationAdded, InheritanceLinked };
  Kind kind;
  int id;
};

/// Domain-independent nested-scope structure with inheritance links. Built by
/// a single writer, then analyzed read-only; the shadowing result is memoized
/// on the tree.
class ScopeTree {
 public:
  ScopeTree();  // creates the root scope

  ScopeId root() const { return 0; }
  ScopeId add_scope(ScopeId parent, std::string kind,
                    std::optional<SourceRef> backlink = std::nullopt);
  DeclId add_declaration(ScopeId parent, std::string name, SourceRef backlink);

  /// Appends `super` to scope's inherited list. Throws StructuralError when
  /// the link would make a scope reachable from itself over inheritance
  /// edges; the offending link is rolled back.
  void link_inherited(ScopeId scope, ScopeId super);

  const Scope& scope(ScopeId id) const;
  const Declaration& declaration(DeclId id) const;
  int scope_count() const { return static_cast<int>(scopes_.size()); }
  int declaration_count() const { return static_cast<int>(decls_.size()); }

  /// Nearest declaration hidden by `decl`: same-named siblings first, then
  /// the inherited scopes recursively, then the enclosing chain. A scope is
  /// searched at most once per query, so diamond inheritance terminates.
  std::optional<DeclId> shadowed(DeclId decl) const;

  /// All shadowing pairs, ordered by the shadower's (file, span). Memoized;
  /// repeated calls return the same cached result.
  const std::vector<ShadowFinding>& variable_shadowings() const;

  int shadowing_eval_count() const { return shadowing_evals_; }
  void reset_analysis_cache() const;

  const std::vector<BuildEvent>& build_trace() const { return trace_; }

 private:
  void check_scope(ScopeId id) const;
  void check_decl(DeclId id) const;
  std::optional<DeclId> shadowed_locally(ScopeId scope, DeclId shadower,
                                         std::vector<unsigned char>& visited) const;

  std::vector<Scope> scopes_;
  std::vector<Declaration> decls_;
  std::vector<BuildEvent> trace_;

  mutable std::optional<std::vector<ShadowFinding>> findings_;
  mutable int shadowing_evals_ = 0;
};

}  // namespace graft::scope

#endif
