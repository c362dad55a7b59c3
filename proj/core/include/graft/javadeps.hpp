#ifndef GRAFT_JAVADEPS_HPP
#define GRAFT_JAVADEPS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graft/source_ref.hpp"

namespace graft::graph {
class DependencyGraph;
}

namespace graft::javadeps {

struct ImportDecl {
  std::string name;      // dotted path, without the trailing ".*"
  bool on_demand = false;
};

/// One declared class/interface/enum, including nested ones.
struct TypeDeclFacts {
  std::string simple_name;
  std::string qualified_name;  // package + nesting path + simple name
  bool top_level = true;
  Span span;
  /// Dotted identifier chains referenced in this type's declaring region
  /// (innermost type wins), document order, deduplicated. Only chains with at
  /// least one capitalized segment are kept.
  std::vector<std::string> referenced;
};

/// Shallow per-file facts. The scanner does not parse Java; it tracks braces,
/// skips comments and literals, and records declarations plus candidate
/// type-use identifier chains.
struct CompilationUnitFacts {
  std::string file;
  std::string package;  // empty for the default package
  std::vector<ImportDecl> imports;
  std::vector<TypeDeclFacts> types;
  std::vector<std::string> loose_referenced;  // chains outside any type body

  /// Union of all referenced chains in this unit, sorted and deduplicated.
  std::vector<std::string> referenced_identifiers() const;
};

/// Throws ParseError on unbalanced braces, or input truncated inside a
/// comment or literal.
CompilationUnitFacts scan_java_file(std::string_view text, std::string path);

/// Indexed set of compilation units. Type- and package-level dependency
/// overlays are derived on demand and cached per corpus; derive them before
/// sharing a corpus across threads.
class Corpus {
 public:
  /// Indexes the units. Throws StructuralError on duplicate qualified names.
  explicit Corpus(std::vector<CompilationUnitFacts> units);
  Corpus(Corpus&&) noexcept;
  Corpus& operator=(Corpus&&) noexcept;
  ~Corpus();

  const std::vector<CompilationUnitFacts>& units() const { return units_; }
  int type_count() const;
  std::vector<std::string> packages() const;  // sorted, distinct

  /// Resolution of a referenced chain against corpus-declared types only:
  /// explicit single-type import, then same-package simple name, then
  /// on-demand imports in order, then a globally unique top-level simple
  /// name. Multi-segment chains additionally try exact and package-relative
  /// qualified forms, longest prefix first. Unresolvable chains are dropped
  /// by the callers; this is a deliberately shallow stand-in for a full
  /// resolver.
  std::optional<std::string> resolve(const std::string& chain,
                                     const CompilationUnitFacts& unit) const;

  /// Memoized overlay: one back-linked component per declared type; an edge
  /// per referenced corpus type, self-references dropped, duplicates merged.
  const graph::DependencyGraph& type_dependency_graph() const;

  /// Memoized overlay: one component per distinct package, labelled with the
  /// package name and carrying no back-link. Edges come from cross-package
  /// type references and resolvable imports; duplicates and self-edges are
  /// dropped.
  const graph::DependencyGraph& package_dependency_graph() const;

  int type_graph_build_count() const { return type_graph_builds_; }
  int package_graph_build_count() const { return package_graph_builds_; }
  void reset_overlay_caches() const;

  /// Baselines woven directly over the facts: adjacency built inline, the
  /// inverse graph materialized explicitly, no overlay involved. Partitions
  /// are canonical over names (members sorted, groups by first member).
  std::vector<std::vector<std::string>> direct_type_scc() const;
  std::vector<std::vector<std::string>> direct_package_scc() const;

 private:
  struct Index;

  void for_each_type_edge(
      const std::function<void(int from_type, int to_type)>& fn) const;

  std::vector<CompilationUnitFacts> units_;
  std::unique_ptr<Index> index_;

  mutable std::unique_ptr<graph::DependencyGraph> type_graph_;
  mutable std::unique_ptr<graph::DependencyGraph> package_graph_;
  mutable int type_graph_builds_ = 0;
  mutable int package_graph_builds_ = 0;
};

/// Scans `.java` files from files and directory trees (recursive, sorted
/// walk) into an indexed corpus.
Corpus load_corpus(const std::vector<std::string>& paths);

}  // namespace graft::javadeps

#endif
