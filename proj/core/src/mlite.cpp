#include "graft/mlite.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "graft/errors.hpp"
#include "graft/scope.hpp"
#include "token_stream.hpp"

namespace graft::mlite {

namespace {

using detail::Token;
using detail::TokenStream;

class Parser {
 public:
  Parser(std::string_view text, std::string file)
      : ts_(text, std::move(file)), file_(ts_.file()) {}

  MlClass parse_file() {
    Token kw = ts_.next();
    if (!kw.is_ident("model")) {
      fail(kw, "expected 'model'");
    }
    MlClass root = parse_model();
    Token trailing = ts_.next();
    if (trailing.kind != Token::Kind::End) {
      fail(trailing, "expected end of input after top-level model");
    }
    return root;
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
    if (tok.kind != Token::Kind::Ident) {
      fail(tok, "expected " + what);
    }
    return tok;
  }

  void expect_semicolon(const std::string& context) {
    Token tok = ts_.next();
    if (!tok.is_punct(';')) {
      fail(tok, "expected ';' " + context);
    }
  }

  // `model` keyword already consumed.
  MlClass parse_model() {
    MlClass cls;
    Token name = expect_ident("model name");
    cls.name = name.text;
    cls.span = detail::token_span(file_, name);

    while (true) {
      Token tok = ts_.next();
      if (tok.kind == Token::Kind::End) {
        fail(tok, "expected 'end " + cls.name + ";'");
      }
      if (tok.is_ident("end")) {
        Token end_name = expect_ident("model name after 'end'");
        if (end_name.text != cls.name) {
          throw ParseError(file_, end_name.line, end_name.col,
                           "mismatched end: expected 'end " + cls.name + ";', got 'end " +
                               end_name.text + ";'");
        }
        expect_semicolon("after 'end " + cls.name + "'");
        return cls;
      }
      if (tok.is_ident("model")) {
        MlMember member;
        member.kind = MlMember::Kind::NestedClass;
        member.nested = std::make_unique<MlClass>(parse_model());
        cls.members.push_back(std::move(member));
        continue;
      }
      if (tok.is_ident("extends")) {
        Token target = expect_ident("extends target");
        cls.extends.push_back(MlExtends{target.text, detail::token_span(file_, target)});
        expect_semicolon("after extends clause");
        continue;
      }

      // Component declaration.
      MlComponent component;
      if (tok.is_ident("constant")) {
        component.constant = true;
        tok = ts_.next();
      }
      if (tok.kind != Token::Kind::Ident) {
        fail(tok, "expected component type");
      }
      component.type_name = tok.text;
      Token var = expect_ident("component name");
      component.var_name = var.text;
      component.span = detail::token_span(file_, var);

      Token sep = ts_.next();
      if (sep.is_punct('=')) {
        component.init_text = read_initializer();
        sep = ts_.next();
      }
      if (!sep.is_punct(';')) {
        fail(sep, "expected ';' after component declaration");
      }
      cls.members.push_back(MlMember{MlMember::Kind::Component, std::move(component), nullptr});
    }
  }

  /// Raw initializer text up to an unnested ';', which is left in the stream.
  std::string read_initializer() {
    std::string text;
    int parens = 0;
    while (true) {
      const Token& look = ts_.peek();
      if (look.kind == Token::Kind::End) {
        fail(look, "expected ';' after initializer");
      }
      if (parens == 0 && look.is_punct(';')) return text;
      Token tok = ts_.next();
      if (tok.is_punct('(')) ++parens;
      if (tok.is_punct(')')) --parens;
      if (!text.empty()) text += " ";
      text += tok.text;
    }
  }

  TokenStream ts_;
  std::string file_;
};

}  // namespace

MlClass parse_mlite(std::string_view text, std::string file) {
  Parser parser(text, std::move(file));
  return parser.parse_file();
}

// ---------------------------------------------------------------------------
// Scope-tree mapping
// ---------------------------------------------------------------------------

namespace {

struct ClassEntry {
  const MlClass* cls;
  int parent;  // registry index, -1 above the root model
  scope::ScopeId scope;
};

void build_class(scope::ScopeTree& tree, const MlClass& cls, scope::ScopeId parent_scope,
                 int parent_entry, const std::string& path_prefix,
                 std::vector<ClassEntry>& registry) {
  const std::string path = path_prefix.empty() ? cls.name : path_prefix + "." + cls.name;
  const scope::ScopeId class_scope =
      tree.add_scope(parent_scope, "class", SourceRef{FrontendKind::Mlite, path, cls.span});
  const int entry = static_cast<int>(registry.size());
  registry.push_back(ClassEntry{&cls, parent_entry, class_scope});

  int ordinal = 0;
  for (const MlMember& member : cls.members) {
    if (member.kind == MlMember::Kind::Component) {
      tree.add_declaration(class_scope, member.component.var_name,
                           SourceRef{FrontendKind::Mlite,
                                     path + "." + member.component.var_name + "#" +
                                         std::to_string(ordinal),
                                     member.component.span});
    } else {
      build_class(tree, *member.nested, class_scope, entry, path, registry);
    }
    ++ordinal;
  }
}

/// Lexical extends resolution: classes nested in the declaring class first,
/// then each enclosing level outward, ending with the top-level model.
int resolve_extends(const std::vector<ClassEntry>& registry, int from,
                    const std::string& name) {
  int level = from;
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

MlProgram::MlProgram(MlClass root) : root_(std::move(root)) {}
MlProgram::MlProgram(MlProgram&&) noexcept = default;
MlProgram& MlProgram::operator=(MlProgram&&) noexcept = default;
MlProgram::~MlProgram() = default;

const scope::ScopeTree& MlProgram::scope_tree() const {
  if (!tree_) {
    ++tree_builds_;
    auto tree = std::make_unique<scope::ScopeTree>();
    std::vector<ClassEntry> registry;

    // Phase 1: populate scopes and declarations.
    build_class(*tree, root_, tree->root(), -1, "", registry);

    // Phase 2: add inheritance links.
    for (std::size_t i = 0; i < registry.size(); ++i) {
      for (const MlExtends& ext : registry[i].cls->extends) {
        const int target = resolve_extends(registry, static_cast<int>(i), ext.name);
        if (target < 0) {
          throw StructuralError("unresolved extends target '" + ext.name +
                                "' in model '" + registry[i].cls->name + "'");
        }
        tree->link_inherited(registry[i].scope, registry[target].scope);
      }
    }
    tree_ = std::move(tree);
  }
  return *tree_;
}

void MlProgram::reset_overlay_cache() const { tree_.reset(); }

MlProgram load_mlite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return MlProgram(parse_mlite(buffer.str(), path));
}

}  // namespace graft::mlite
