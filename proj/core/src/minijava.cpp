#include "graft/minijava.hpp"

#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "graft/errors.hpp"
#include "graft/scope.hpp"
#include "token_stream.hpp"

namespace graft::minijava {

namespace {

using detail::Token;
using detail::TokenStream;

bool is_modifier(const Token& tok) {
  static const std::unordered_set<std::string> modifiers = {
      "public", "private",      "protected", "static",    "final",
      "abstract", "native",     "synchronized", "transient", "volatile",
      "strictfp",
  };
  return tok.kind == Token::Kind::Ident && modifiers.count(tok.text) != 0;
}

bool is_primitive(const Token& tok) {
  static const std::unordered_set<std::string> primitives = {
      "int", "long", "short", "byte", "char", "boolean", "float", "double",
  };
  return tok.kind == Token::Kind::Ident && primitives.count(tok.text) != 0;
}

bool is_reserved(const std::string& word) {
  static const std::unordered_set<std::string> reserved = {
      "class",  "extends", "implements", "interface", "enum",   "if",
      "else",   "while",   "for",        "do",        "switch", "case",
      "default", "break",  "continue",   "return",    "throw",  "throws",
      "try",    "catch",   "finally",    "new",       "this",   "super",
      "void",   "assert",  "instanceof", "true",      "false",  "null",
      "package", "import", "synchronized",
  };
  return reserved.count(word) != 0;
}

class Parser {
 public:
  Parser(std::string_view text, std::string file)
      : ts_(text, std::move(file)), file_(ts_.file()) {}

  std::vector<MjClass> parse_program() {
    std::vector<MjClass> classes;
    while (true) {
      skip_modifiers();
      Token tok = ts_.next();
      if (tok.kind == Token::Kind::End) break;
      if (!tok.is_ident("class")) {
        fail(tok, "expected 'class'");
      }
      classes.push_back(parse_class());
    }
    return classes;
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& message) {
    throw ParseError(file_, at.line, at.col,
                     at.kind == Token::Kind::End
                         ? message + ", got end of input"
                         : message + ", got '" + at.text + "'");
  }

  Token expect_ident(const std::string& what) {
    Token tok = ts_.next();
    if (tok.kind != Token::Kind::Ident || is_reserved(tok.text)) {
      fail(tok, "expected " + what);
    }
    return tok;
  }

  void expect_punct(char c, const std::string& context) {
    Token tok = ts_.next();
    if (!tok.is_punct(c)) {
      fail(tok, std::string("expected '") + c + "' " + context);
    }
  }

  void skip_modifiers() {
    while (is_modifier(ts_.peek())) ts_.next();
  }

  // `class` keyword already consumed.
  MjClass parse_class() {
    MjClass cls;
    Token name = expect_ident("class name");
    cls.name = name.text;
    cls.span = detail::token_span(file_, name);
    if (ts_.peek().is_ident("extends")) {
      ts_.next();
      Token super = expect_ident("superclass name");
      cls.superclass = super.text;
    }
    expect_punct('{', "to open class body");

    std::unordered_set<std::string> nested_names;
    while (true) {
      if (ts_.peek().is_punct('}')) {
        ts_.next();
        break;
      }
      if (ts_.peek().kind == Token::Kind::End) {
        fail(ts_.peek(), "expected class member or '}'");
      }
      if (ts_.peek().is_punct(';')) {
        ts_.next();
        continue;
      }
      skip_modifiers();
      if (ts_.peek().is_ident("class")) {
        ts_.next();
        MjClass nested = parse_class();
        if (!nested_names.insert(nested.name).second) {
          throw ParseError(file_, nested.span.line_start, nested.span.col_start,
                           "duplicate nested class '" + nested.name + "'");
        }
        MjMember member;
        member.kind = MjMember::Kind::NestedClass;
        member.nested = std::make_unique<MjClass>(std::move(nested));
        cls.members.push_back(std::move(member));
        continue;
      }
      parse_field_or_method(cls);
    }
    return cls;
  }

  void parse_field_or_method(MjClass& cls) {
    Token first = ts_.next();
    if (first.kind != Token::Kind::Ident) {
      fail(first, "expected class member");
    }

    // Constructor: the class name directly followed by a parameter list.
    if (first.text == cls.name && ts_.peek().is_punct('(')) {
      MjMethod ctor;
      ctor.name = "<init>";
      ctor.is_ctor = true;
      ctor.span = detail::token_span(file_, first);
      parse_params(ctor);
      skip_throws();
      expect_punct('{', "to open constructor body");
      parse_body(ctor);
      MjMember member;
      member.kind = MjMember::Kind::Method;
      member.method = std::move(ctor);
      cls.members.push_back(std::move(member));
      return;
    }

    if (is_reserved(first.text) && !is_primitive(first) && first.text != "void") {
      fail(first, "expected member type");
    }
    consume_type_suffix();  // dotted segments and array brackets of the type

    Token name = expect_ident("member name");

    if (ts_.peek().is_punct('(')) {
      MjMethod method;
      method.name = name.text;
      method.span = detail::token_span(file_, name);
      parse_params(method);
      skip_throws();
      Token body = ts_.next();
      if (body.is_punct('{')) {
        parse_body(method);
      } else if (!body.is_punct(';')) {
        fail(body, "expected method body or ';'");
      }
      MjMember member;
      member.kind = MjMember::Kind::Method;
      member.method = std::move(method);
      cls.members.push_back(std::move(member));
      return;
    }

    // Field declarator list.
    while (true) {
      MjMember member;
      member.kind = MjMember::Kind::Field;
      member.field = MjField{first.text, name.text, detail::token_span(file_, name)};
      cls.members.push_back(std::move(member));

      skip_array_suffix();
      if (ts_.peek().is_punct('=')) {
        ts_.next();
        skip_initializer();
      }
      Token sep = ts_.next();
      if (sep.is_punct(';')) break;
      if (!sep.is_punct(',')) {
        fail(sep, "expected ',' or ';' after field declarator");
      }
      name = expect_ident("field name");
    }
  }

  void parse_params(MjMethod& method) {
    expect_punct('(', "to open parameter list");
    if (ts_.peek().is_punct(')')) {
      ts_.next();
      return;
    }
    std::unordered_set<std::string> names;
    while (true) {
      skip_modifiers();
      Token type = ts_.next();
      if (type.kind != Token::Kind::Ident || (is_reserved(type.text) && !is_primitive(type))) {
        fail(type, "expected parameter type");
      }
      consume_type_suffix();
      Token name = expect_ident("parameter name");
      skip_array_suffix();
      if (!names.insert(name.text).second) {
        throw ParseError(file_, name.line, name.col,
                         "duplicate parameter '" + name.text + "'");
      }
      method.params.push_back(MjParam{type.text, name.text, detail::token_span(file_, name)});
      Token sep = ts_.next();
      if (sep.is_punct(')')) break;
      if (!sep.is_punct(',')) {
        fail(sep, "expected ',' or ')' in parameter list");
      }
    }
  }

  void skip_throws() {
    if (!ts_.peek().is_ident("throws")) return;
    ts_.next();
    while (true) {
      expect_ident("exception type");
      consume_type_suffix();
      if (ts_.peek().is_punct(',')) {
        ts_.next();
        continue;
      }
      break;
    }
  }

  // Dotted type segments and array brackets: `.Seg`* `[]`*
  void consume_type_suffix() {
    while (ts_.peek().is_punct('.')) {
      ts_.next();
      expect_ident("type segment");
    }
    skip_array_suffix();
  }

  void skip_array_suffix() {
    while (ts_.peek().is_punct('[')) {
      ts_.next();
      expect_punct(']', "to close array brackets");
    }
  }

  /// Skips a field or local initializer up to an unnested ',' or ';', which
  /// is left in the stream.
  void skip_initializer() {
    int parens = 0, brackets = 0, braces = 0;
    while (true) {
      const Token& look = ts_.peek();
      if (look.kind == Token::Kind::End) {
        fail(look, "expected end of initializer");
      }
      if (parens == 0 && brackets == 0 && braces == 0 &&
          (look.is_punct(',') || look.is_punct(';'))) {
        return;
      }
      if (braces == 0 && look.is_punct('}')) {
        return;  // malformed; let the caller report it
      }
      Token tok = ts_.next();
      if (tok.is_punct('(')) ++parens;
      if (tok.is_punct(')')) --parens;
      if (tok.is_punct('[')) ++brackets;
      if (tok.is_punct(']')) --brackets;
      if (tok.is_punct('{')) ++braces;
      if (tok.is_punct('}')) --braces;
    }
  }

  /// Consumes a statement without interpreting it: ends after an unnested
  /// ';', after a brace pair returning to the statement level, or before an
  /// unnested '}'.
  void skip_statement() {
    int parens = 0, brackets = 0, braces = 0;
    while (true) {
      const Token& look = ts_.peek();
      if (look.kind == Token::Kind::End) {
        fail(look, "unexpected end of input in method body");
      }
      if (braces == 0 && look.is_punct('}')) return;
      Token tok = ts_.next();
      if (tok.is_punct('(')) ++parens;
      if (tok.is_punct(')')) --parens;
      if (tok.is_punct('[')) ++brackets;
      if (tok.is_punct(']')) --brackets;
      if (tok.is_punct('{')) ++braces;
      if (tok.is_punct('}')) {
        --braces;
        if (parens == 0 && brackets == 0 && braces == 0) return;
      }
      if (tok.is_punct(';') && parens == 0 && brackets == 0 && braces == 0) return;
    }
  }

  void skip_parens() {
    if (!ts_.peek().is_punct('(')) return;
    int depth = 0;
    while (true) {
      Token tok = ts_.next();
      if (tok.kind == Token::Kind::End) {
        fail(tok, "unterminated parenthesis");
      }
      if (tok.is_punct('(')) ++depth;
      if (tok.is_punct(')')) {
        --depth;
        if (depth == 0) return;
      }
    }
  }

  /// Scans a method body, collecting local declarations; nested blocks are
  /// flattened into the method scope. The opening '{' is already consumed.
  void parse_body(MjMethod& method) {
    int depth = 1;
    while (true) {
      Token tok = ts_.next();
      if (tok.kind == Token::Kind::End) {
        fail(tok, "unexpected end of input in method body");
      }
      if (tok.is_punct('}')) {
        if (--depth == 0) return;
        continue;
      }
      if (tok.is_punct('{')) {
        ++depth;
        continue;
      }
      if (tok.is_punct(';')) continue;

      if (tok.kind == Token::Kind::Ident) {
        const std::string& word = tok.text;
        if (word == "if" || word == "while" || word == "for" || word == "switch" ||
            word == "catch" || word == "synchronized") {
          skip_parens();
          continue;
        }
        if (word == "do" || word == "else" || word == "try" || word == "finally") {
          continue;
        }
        if (word == "final") continue;  // local modifier
        if (!is_reserved(word) || is_primitive(tok)) {
          if (try_parse_local(method, tok)) continue;
        }
        ts_.unget(std::move(tok));
        skip_statement();
        continue;
      }

      ts_.unget(std::move(tok));
      skip_statement();
    }
  }

  /// Attempts `Type name [= init] (, name [= init])* ;` with `first` already
  /// consumed as the would-be type. Restores the stream on mismatch.
  bool try_parse_local(MjMethod& method, const Token& first) {
    std::vector<Token> consumed;
    auto take = [&]() {
      Token tok = ts_.next();
      consumed.push_back(tok);
      return tok;
    };
    auto restore = [&]() {
      for (auto it = consumed.rbegin(); it != consumed.rend(); ++it) {
        ts_.unget(std::move(*it));
      }
    };

    // Dotted type segments.
    while (ts_.peek().is_punct('.')) {
      take();
      Token seg = take();
      if (seg.kind != Token::Kind::Ident) {
        restore();
        return false;
      }
    }
    // Array brackets.
    while (ts_.peek().is_punct('[')) {
      Token open = take();
      if (!ts_.peek().is_punct(']')) {
        restore();
        return false;
      }
      take();
    }
    if (ts_.peek().kind != Token::Kind::Ident || is_reserved(ts_.peek().text)) {
      restore();
      return false;
    }

    Token name = ts_.next();
    while (true) {
      method.locals.push_back(
          MjLocal{first.text, name.text, detail::token_span(file_, name)});
      if (ts_.peek().is_punct('=')) {
        ts_.next();
        skip_initializer();
      }
      Token sep = ts_.next();
      if (sep.is_punct(';')) return true;
      if (!sep.is_punct(',')) {
        fail(sep, "expected ',' or ';' after local declarator");
      }
      name = expect_ident("local variable name");
    }
  }

  TokenStream ts_;
  std::string file_;
};

}  // namespace

std::vector<MjClass> parse_minijava(std::string_view text, std::string file) {
  Parser parser(text, std::move(file));
  return parser.parse_program();
}

// ---------------------------------------------------------------------------
// Scope-tree mapping
// ---------------------------------------------------------------------------

namespace {

struct ClassEntry {
  const MjClass* cls;
  int parent;  // index into the registry, -1 for top level
  scope::ScopeId scope;
};

void build_class(scope::ScopeTree& tree, const MjClass& cls, scope::ScopeId parent_scope,
                 int parent_entry, const std::string& path_prefix,
                 std::vector<ClassEntry>& registry) {
  const std::string path = path_prefix.empty() ? cls.name : path_prefix + "." + cls.name;
  const scope::ScopeId class_scope = tree.add_scope(
      parent_scope, "class", SourceRef{FrontendKind::MiniJava, path, cls.span});
  const int entry = static_cast<int>(registry.size());
  registry.push_back(ClassEntry{&cls, parent_entry, class_scope});

  int member_ordinal = 0;
  for (const MjMember& member : cls.members) {
    switch (member.kind) {
      case MjMember::Kind::Field: {
        tree.add_declaration(class_scope, member.field.name,
                             SourceRef{FrontendKind::MiniJava,
                                       path + "." + member.field.name + "#" +
                                           std::to_string(member_ordinal),
                                       member.field.span});
        break;
      }
      case MjMember::Kind::Method: {
        const std::string method_key =
            path + "." + member.method.name + "#" + std::to_string(member_ordinal);
        const scope::ScopeId method_scope = tree.add_scope(
            class_scope, "method",
            SourceRef{FrontendKind::MiniJava, method_key, member.method.span});
        int var_ordinal = 0;
        for (const MjParam& p : member.method.params) {
          tree.add_declaration(method_scope, p.name,
                               SourceRef{FrontendKind::MiniJava,
                                         method_key + "." + p.name + "#" +
                                             std::to_string(var_ordinal++),
                                         p.span});
        }
        for (const MjLocal& l : member.method.locals) {
          tree.add_declaration(method_scope, l.name,
                               SourceRef{FrontendKind::MiniJava,
                                         method_key + "." + l.name + "#" +
                                             std::to_string(var_ordinal++),
                                         l.span});
        }
        break;
      }
      case MjMember::Kind::NestedClass: {
        build_class(tree, *member.nested, class_scope, entry, path, registry);
        break;
      }
    }
    ++member_ordinal;
  }
}

/// Lexical superclass resolution: same-container classes first, then each
/// enclosing container outward, ending at the top level. First match wins.
int resolve_superclass(const std::vector<ClassEntry>& registry, int from,
                       const std::string& name) {
  int level = registry[from].parent;
  while (true) {
    for (std::size_t i = 0; i < registry.size(); ++i) {
      if (registry[i].parent == level && registry[i].cls->name == name) {
        return static_cast<int>(i);
      }
    }
    if (level == -1) return -1;
    level = registry[level].parent;
  }
}

}  // namespace

MjProgram::MjProgram(std::vector<MjClass> classes) : classes_(std::move(classes)) {}
MjProgram::MjProgram(MjProgram&&) noexcept = default;
MjProgram& MjProgram::operator=(MjProgram&&) noexcept = default;
MjProgram::~MjProgram() = default;

const scope::ScopeTree& MjProgram::scope_tree() const {
  if (!tree_) {
    ++tree_builds_;
    auto tree = std::make_unique<scope::ScopeTree>();
    std::vector<ClassEntry> registry;

    // Phase 1: all scopes and declarations.
    for (const MjClass& cls : classes_) {
      build_class(*tree, cls, tree->root(), -1, "", registry);
    }

    // Phase 2: inheritance links.
    for (std::size_t i = 0; i < registry.size(); ++i) {
      const MjClass& cls = *registry[i].cls;
      if (!cls.superclass) continue;
      const int target = resolve_superclass(registry, static_cast<int>(i), *cls.superclass);
      if (target < 0) {
        throw StructuralError("unresolved superclass '" + *cls.superclass +
                              "' for class '" + cls.name + "'");
      }
      tree->link_inherited(registry[i].scope, registry[target].scope);
    }
    tree_ = std::move(tree);
  }
  return *tree_;
}

void MjProgram::reset_overlay_cache() const { tree_.reset(); }

}  // namespace graft::minijava
