#include "graft/scope.hpp"

#include <algorithm>
#include <tuple>

#include "graft/errors.hpp"

namespace graft::scope {

ScopeTree::ScopeTree() {
  scopes_.push_back(Scope{"root", -1, {}, {}, std::nullopt});
  trace_.push_back(BuildEvent{BuildEvent::Kind::ScopeAdded, 0});
}

ScopeId ScopeTree::add_scope(ScopeId parent, std::string kind,
                             std::optional<SourceRef> backlink) {
  check_scope(parent);
  const ScopeId id = static_cast<ScopeId>(scopes_.size());
  scopes_.push_back(Scope{std::move(kind), parent, {}, {}, std::move(backlink)});
  scopes_[parent].elements.push_back(ScopeElement{ScopeElement::Kind::Scope, id});
  trace_.push_back(BuildEvent{BuildEvent::Kind::ScopeAdded, id});
  findings_.reset();
  return id;
}

DeclId ScopeTree::add_declaration(ScopeId parent, std::string name, SourceRef backlink) {
  check_scope(parent);
  if (name.empty()) throw StructuralError("declaration name must be non-empty");
  const DeclId id = static_cast<DeclId>(decls_.size());
  decls_.push_back(Declaration{std::move(name), parent, std::move(backlink)});
  scopes_[parent].elements.push_back(ScopeElement{ScopeElement::Kind::Declaration, id});
  trace_.push_back(BuildEvent{BuildEvent::Kind::DeclarationAdded, id});
  findings_.reset();
  return id;
}

void ScopeTree::link_inherited(ScopeId scope, ScopeId super) {
  check_scope(scope);
  check_scope(super);
  scopes_[scope].inherited.push_back(super);

  // Cycle check over inheritance edges only.
  std::vector<unsigned char> seen(scopes_.size(), 0);
  std::vector<ScopeId> stack{scope};
  std::vector<ScopeId> reached;
  bool cyclic = false;
  while (!stack.empty() && !cyclic) {
    const ScopeId at = stack.back();
    stack.pop_back();
    for (const ScopeId next : scopes_[at].inherited) {
      if (next == scope) {
        cyclic = true;
        break;
      }
      if (!seen[next]) {
        seen[next] = 1;
        reached.push_back(next);
        stack.push_back(next);
      }
    }
  }
  if (cyclic) {
    scopes_[scope].inherited.pop_back();
    std::string members = "scope " + std::to_string(scope);
    for (const ScopeId s : reached) members += ", scope " + std::to_string(s);
    throw StructuralError("inheritance cycle involving " + members);
  }
  trace_.push_back(BuildEvent{BuildEvent::Kind::InheritanceLinked, scope});
  findings_.reset();
}

const Scope& ScopeTree::scope(ScopeId id) const {
  check_scope(id);
  return scopes_[id];
}

const Declaration& ScopeTree::declaration(DeclId id) const {
  check_decl(id);
  return decls_[id];
}

std::optional<DeclId> ScopeTree::shadowed(DeclId decl) const {
  check_decl(decl);
  std::vector<unsigned char> visited(scopes_.size(), 0);
  return shadowed_locally(decls_[decl].owner, decl, visited);
}

std::optional<DeclId> ScopeTree::shadowed_locally(
    ScopeId scope, DeclId shadower, std::vector<unsigned char>& visited) const {
  if (visited[scope]) return std::nullopt;
  visited[scope] = 1;

  const std::string& name = decls_[shadower].name;

  // Current scope first; any other same-named declaration counts.
  for (const ScopeElement& elem : scopes_[scope].elements) {
    if (elem.kind != ScopeElement::Kind::Declaration) continue;
    if (elem.id != shadower && decls_[elem.id].name == name) return elem.id;
  }

  // Then the inherited scopes, in declaration order. A failed lookup inside
  // an inherited scope escalates through that scope's own enclosing chain.
  for (const ScopeId sup : scopes_[scope].inherited) {
    if (auto hit = shadowed_locally(sup, shadower, visited)) return hit;
  }

  if (scope == root()) return std::nullopt;
  return shadowed_locally(scopes_[scope].parent, shadower, visited);
}

const std::vector<ShadowFinding>& ScopeTree::variable_shadowings() const {
  if (findings_) return *findings_;
  ++shadowing_evals_;

  std::vector<ShadowFinding> result;
  for (DeclId d = 0; d < declaration_count(); ++d) {
    if (auto hit = shadowed(d)) {
      result.push_back(ShadowFinding{d, *hit, decls_[d].owner == decls_[*hit].owner});
    }
  }
  std::sort(result.begin(), result.end(),
            [this](const ShadowFinding& a, const ShadowFinding& b) {
              const Span& sa = decls_[a.shadower].backlink.span;
              const Span& sb = decls_[b.shadower].backlink.span;
              return std::tie(sa.file, sa.line_start, sa.col_start, a.shadower) <
                     std::tie(sb.file, sb.line_start, sb.col_start, b.shadower);
            });

  findings_ = std::move(result);
  return *findings_;
}

void ScopeTree::reset_analysis_cache() const { findings_.reset(); }

void ScopeTree::check_scope(ScopeId id) const {
  if (id < 0 || id >= scope_count()) {
    throw StructuralError("unknown scope id " + std::to_string(id));
  }
}

void ScopeTree::check_decl(DeclId id) const {
  if (id < 0 || id >= declaration_count()) {
    throw StructuralError("detached declaration id " + std::to_string(id));
  }
}

}  // namespace graft::scope
