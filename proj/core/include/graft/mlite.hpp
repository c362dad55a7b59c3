#ifndef GRAFT_MLITE_HPP
#define GRAFT_MLITE_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graft/source_ref.hpp"

namespace graft::scope {
class ScopeTree;
}

namespace graft::mlite {

/// Component declaration: `[constant] Type name [= expr];`. The declared name
/// is the variable, not the type; initializer text is kept opaque.
struct MlComponent {
  bool constant = false;
  std::string type_name;
  std::string var_name;
  std::string init_text;  // raw, may be empty
  Span span;
};

struct MlClass;

struct MlMember {
  enum class Kind { Component, NestedClass };
  Kind kind;
  MlComponent component;            // valid for Component
  std::unique_ptr<MlClass> nested;  // valid for NestedClass
};

struct MlExtends {
  std::string name;
  Span span;
};

struct MlClass {
  std::string name;
  Span span;
  std::vector<MlExtends> extends;
  std::vector<MlMember> members;
};

/// Parses one `model Name ... end Name;` with nested models, component
/// declarations, and `extends` clauses. Throws ParseError on syntax errors
/// and on a mismatched `end` name.
MlClass parse_mlite(std::string_view text, std::string file = "<input>");

/// Parse result owning the memoized scope-tree overlay. The overlay is built
/// in two phases: every scope and declaration first, inheritance links after.
class MlProgram {
 public:
  explicit MlProgram(MlClass root);
  MlProgram(MlProgram&&) noexcept;
  MlProgram& operator=(MlProgram&&) noexcept;
  ~MlProgram();

  const MlClass& root() const { return root_; }

  /// Throws StructuralError on unresolved extends targets; inheritance
  /// cycles surface from the kernel. Extends names resolve lexically:
  /// classes nested in the declaring class first, then outward.
  const scope::ScopeTree& scope_tree() const;
  int scope_tree_build_count() const { return tree_builds_; }
  void reset_overlay_cache() const;

 private:
  MlClass root_;
  mutable std::unique_ptr<scope::ScopeTree> tree_;
  mutable int tree_builds_ = 0;
};

MlProgram load_mlite_file(const std::string& path);

}  // namespace graft::mlite

#endif
