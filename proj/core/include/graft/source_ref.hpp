#ifndef GRAFT_SOURCE_REF_HPP
#define GRAFT_SOURCE_REF_HPP

#include <string>
#include <string_view>

namespace graft {

/// Frontends that can own the base AST node behind a back-link.
enum class FrontendKind {
  StateMachine,
  JavaTypes,
  JavaPackages,
  MiniJava,
  Mlite,
};

std::string_view to_string(FrontendKind kind);

/// Source span, 1-based lines and columns, end inclusive.
struct Span {
  std::string file;
  int line_start = 0;
  int col_start = 0;
  int line_end = 0;
  int col_end = 0;

  bool operator==(const Span&) const = default;
};

/// Back-link from an overlay node into the frontend AST node it was derived
/// from. The relation is strictly overlay -> base; base trees reach their
/// overlay only through the memoized constructor on the tree root.
struct SourceRef {
  FrontendKind frontend = FrontendKind::StateMachine;
  std::string key;  // stable node key: state label, qualified type name, ...
  Span span;

  bool operator==(const SourceRef&) const = default;
};

}  // namespace graft

#endif
