#ifndef GRAFT_MINIJAVA_HPP
#define GRAFT_MINIJAVA_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graft/source_ref.hpp"

namespace graft::scope {
class ScopeTree;
}

namespace graft::minijava {

struct MjField {
  std::string type;
  std::string name;
  Span span;
};

struct MjParam {
  std::string type;
  std::string name;
  Span span;
};

struct MjLocal {
  std::string type;
  std::string name;
  Span span;
};

/// Method or constructor. Constructors are methods named `<init>`. Locals
/// from nested blocks are flattened into the method.
struct MjMethod {
  std::string name;
  bool is_ctor = false;
  std::vector<MjParam> params;
  std::vector<MjLocal> locals;
  Span span;
};

struct MjClass;

/// Class member in document order.
struct MjMember {
  enum class Kind { Field, Method, NestedClass };
  Kind kind;
  MjField field;                    // valid for Field
  MjMethod method;                  // valid for Method
  std::unique_ptr<MjClass> nested;  // valid for NestedClass
};

struct MjClass {
  std::string name;
  std::optional<std::string> superclass;
  Span span;
  std::vector<MjMember> members;
};

/// Parses the Java subset: classes with optional `extends`, fields with
/// optional initializers, methods and constructors with parameter lists, and
/// local variable declarations. Other statements are skipped structurally.
/// Throws ParseError with location on input outside the subset.
std::vector<MjClass> parse_minijava(std::string_view text, std::string file = "<input>");

/// One parse result — possibly merged from several files so cross-file
/// `extends` resolves — owning the memoized scope-tree overlay.
class MjProgram {
 public:
  explicit MjProgram(std::vector<MjClass> classes);
  MjProgram(MjProgram&&) noexcept;
  MjProgram& operator=(MjProgram&&) noexcept;
  ~MjProgram();

  const std::vector<MjClass>& classes() const { return classes_; }

  /// Memoized overlay: class scopes with inherited-scope links for
  /// `extends`, method scopes holding parameter and local declarations,
  /// every node back-linked to its source span. Throws StructuralError on
  /// unresolved superclasses; inheritance cycles surface from the kernel.
  const scope::ScopeTree& scope_tree() const;
  int scope_tree_build_count() const { return tree_builds_; }
  void reset_overlay_cache() const;

 private:
  std::vector<MjClass> classes_;
  mutable std::unique_ptr<scope::ScopeTree> tree_;
  mutable int tree_builds_ = 0;
};

}  // namespace graft::minijava

#endif
