#include "graft/javadeps.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "graft/errors.hpp"
#include "graft/graph.hpp"
#include "token_stream.hpp"

namespace graft::javadeps {

namespace {

bool is_java_keyword(const std::string& word) {
  static const std::unordered_set<std::string> keywords = {
      "abstract", "assert",   "boolean",    "break",      "byte",    "case",
      "catch",    "char",     "class",      "const",      "continue", "default",
      "do",       "double",   "else",       "enum",       "extends", "final",
      "finally",  "float",    "for",        "goto",       "if",      "implements",
      "import",   "instanceof", "int",      "interface",  "long",    "native",
      "new",      "package",  "private",    "protected",  "public",  "return",
      "short",    "static",   "strictfp",   "super",      "switch",
      "synchronized", "this", "throw",      "throws",     "transient", "try",
      "void",     "volatile", "while",      "true",       "false",   "null",
  };
  return keywords.count(word) != 0;
}

bool starts_upper(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front()));
}

bool chain_has_capitalized_segment(const std::string& chain) {
  std::size_t start = 0;
  while (start <= chain.size()) {
    const std::size_t dot = chain.find('.', start);
    const std::size_t end = dot == std::string::npos ? chain.size() : dot;
    if (start < end && std::isupper(static_cast<unsigned char>(chain[start]))) return true;
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return false;
}

std::vector<std::string> split_chain(const std::string& chain) {
  std::vector<std::string> segs;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = chain.find('.', start);
    if (dot == std::string::npos) {
      segs.push_back(chain.substr(start));
      break;
    }
    segs.push_back(chain.substr(start, dot - start));
    start = dot + 1;
  }
  return segs;
}

using detail::Token;
using detail::TokenStream;

/// Reads `ident (. ident)*` starting from an already-consumed first segment.
/// Stops before a dot that is not followed by a plain identifier, so
/// `Foo.class` keeps the trailing `.class` in the stream.
std::string read_dotted_chain(TokenStream& ts, const Token& first) {
  std::string chain = first.text;
  while (true) {
    Token dot = ts.next();
    if (!dot.is_punct('.')) {
      ts.unget(std::move(dot));
      break;
    }
    Token seg = ts.next();
    if (seg.kind == Token::Kind::Ident && !is_java_keyword(seg.text)) {
      chain += "." + seg.text;
    } else {
      ts.unget(std::move(seg));
      ts.unget(std::move(dot));
      break;
    }
  }
  return chain;
}

}  // namespace

std::vector<std::string> CompilationUnitFacts::referenced_identifiers() const {
  std::set<std::string> all(loose_referenced.begin(), loose_referenced.end());
  for (const TypeDeclFacts& t : types) all.insert(t.referenced.begin(), t.referenced.end());
  return {all.begin(), all.end()};
}

CompilationUnitFacts scan_java_file(std::string_view text, std::string path) {
  CompilationUnitFacts facts;
  facts.file = path;

  TokenStream ts(text, path);

  struct OpenType {
    int type_index;
    int body_depth;
  };
  std::vector<OpenType> type_stack;
  std::vector<std::string> nesting_names;
  int depth = 0;

  // Pending type declaration: seen `class Name`, body brace not yet open.
  // References between the name and the brace (extends/implements clauses)
  // belong to the new type.
  bool have_pending = false;
  int pending_type_index = -1;

  std::unordered_map<int, std::unordered_set<std::string>> seen_refs;  // by type index
  std::unordered_set<std::string> seen_loose;

  auto record_ref = [&](std::string chain) {
    if (!chain_has_capitalized_segment(chain)) return;
    int target = -1;
    if (have_pending) {
      target = pending_type_index;
    } else if (!type_stack.empty()) {
      target = type_stack.back().type_index;
    }
    if (target >= 0) {
      if (seen_refs[target].insert(chain).second) {
        facts.types[target].referenced.push_back(std::move(chain));
      }
    } else {
      if (seen_loose.insert(chain).second) {
        facts.loose_referenced.push_back(std::move(chain));
      }
    }
  };

  Token prev;  // previous significant token, for `.class` / `a.b` handling
  bool after_annotation = false;

  while (true) {
    Token tok = ts.next();
    if (tok.kind == Token::Kind::End) break;

    if (tok.kind == Token::Kind::Punct) {
      const char c = tok.text[0];
      if (c == '{') {
        ++depth;
        if (have_pending) {
          type_stack.push_back(OpenType{pending_type_index, depth});
          have_pending = false;
        }
      } else if (c == '}') {
        if (have_pending) {  // `class A }` — drop the dangling declaration slot
          nesting_names.pop_back();
          have_pending = false;
        }
        --depth;
        if (depth < 0) {
          throw ParseError(path, tok.line, tok.col, "unbalanced '}'");
        }
        while (!type_stack.empty() && type_stack.back().body_depth > depth) {
          nesting_names.pop_back();
          type_stack.pop_back();
        }
      } else if (c == '@') {
        after_annotation = true;
      }
      prev = std::move(tok);
      continue;
    }

    if (tok.kind == Token::Kind::Number) {
      prev = std::move(tok);
      continue;
    }

    // Identifier directly after a dot is a member access, never a type use.
    if (prev.is_punct('.')) {
      prev = std::move(tok);
      continue;
    }

    if (is_java_keyword(tok.text)) {
      const std::string word = tok.text;
      if (word == "class" || word == "interface" || word == "enum") {
        Token name = ts.next();
        if (name.kind == Token::Kind::Ident && !is_java_keyword(name.text)) {
          if (have_pending) {
            nesting_names.pop_back();
            have_pending = false;
          }
          std::string qualified = facts.package;
          for (const std::string& outer : nesting_names) {
            qualified += qualified.empty() ? outer : "." + outer;
          }
          qualified += qualified.empty() ? name.text : "." + name.text;
          TypeDeclFacts decl;
          decl.simple_name = name.text;
          decl.qualified_name = std::move(qualified);
          decl.top_level = nesting_names.empty();
          decl.span = detail::token_span(path, name);
          pending_type_index = static_cast<int>(facts.types.size());
          facts.types.push_back(std::move(decl));
          nesting_names.push_back(name.text);
          have_pending = true;
          prev = std::move(name);
          continue;
        }
        ts.unget(std::move(name));
        prev = std::move(tok);
        continue;
      }
      if (word == "package") {
        Token first = ts.next();
        if (first.kind != Token::Kind::Ident) {
          throw ParseError(path, first.line, first.col, "expected package name");
        }
        facts.package = read_dotted_chain(ts, first);
        prev = std::move(first);
        continue;
      }
      if (word == "import") {
        Token first = ts.next();
        bool is_static = false;
        if (first.is_ident("static")) {
          is_static = true;
          first = ts.next();
        }
        if (first.kind != Token::Kind::Ident) {
          throw ParseError(path, first.line, first.col, "expected import name");
        }
        std::string chain = read_dotted_chain(ts, first);
        bool on_demand = false;
        if (ts.peek().is_punct('.')) {
          Token dot = ts.next();
          if (ts.peek().is_punct('*')) {
            ts.next();
            on_demand = true;
          } else {
            ts.unget(std::move(dot));
          }
        }
        if (!is_static) {
          facts.imports.push_back(ImportDecl{std::move(chain), on_demand});
        }
        prev = std::move(first);
        continue;
      }
      prev = std::move(tok);
      continue;
    }

    // Plain identifier chain: a candidate type use.
    std::string chain = read_dotted_chain(ts, tok);
    if (after_annotation) {
      after_annotation = false;
    } else {
      record_ref(std::move(chain));
    }
    prev = std::move(tok);
    continue;
  }

  if (depth != 0) {
    throw ParseError(path, ts.line(), ts.col(),
                     std::to_string(depth) + " unclosed brace(s) at end of input");
  }
  return facts;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

struct Corpus::Index {
  struct TypeLocation {
    int unit;
    int type;
  };
  // qualified name -> declaring (unit, type)
  std::unordered_map<std::string, TypeLocation> by_qualified;
  // package -> simple name -> qualified (top-level types only)
  std::unordered_map<std::string, std::unordered_map<std::string, std::string>> by_package;
  // simple name -> qualified names (top-level types only)
  std::unordered_map<std::string, std::vector<std::string>> by_simple;
  std::set<std::string> packages;
  int type_count = 0;
};

Corpus::Corpus(std::vector<CompilationUnitFacts> units)
    : units_(std::move(units)), index_(std::make_unique<Index>()) {
  for (int u = 0; u < static_cast<int>(units_.size()); ++u) {
    index_->packages.insert(units_[u].package);
    for (int t = 0; t < static_cast<int>(units_[u].types.size()); ++t) {
      const TypeDeclFacts& decl = units_[u].types[t];
      const auto [it, inserted] =
          index_->by_qualified.emplace(decl.qualified_name, Index::TypeLocation{u, t});
      if (!inserted) {
        throw StructuralError("duplicate qualified type name '" + decl.qualified_name +
                              "' declared in " + units_[it->second.unit].file + " and " +
                              units_[u].file);
      }
      ++index_->type_count;
      if (decl.top_level) {
        index_->by_package[units_[u].package].emplace(decl.simple_name, decl.qualified_name);
        index_->by_simple[decl.simple_name].push_back(decl.qualified_name);
      }
    }
  }
}

Corpus::Corpus(Corpus&&) noexcept = default;
Corpus& Corpus::operator=(Corpus&&) noexcept = default;
Corpus::~Corpus() = default;

int Corpus::type_count() const { return index_->type_count; }

std::vector<std::string> Corpus::packages() const {
  return {index_->packages.begin(), index_->packages.end()};
}

std::optional<std::string> Corpus::resolve(const std::string& chain,
                                           const CompilationUnitFacts& unit) const {
  const std::vector<std::string> segs = split_chain(chain);

  auto resolve_simple = [&](const std::string& name) -> std::optional<std::string> {
    if (!starts_upper(name)) return std::nullopt;
    // 1. Explicit single-type import commits the name.
    for (const ImportDecl& imp : unit.imports) {
      if (imp.on_demand) continue;
      const std::size_t dot = imp.name.rfind('.');
      const std::string last = dot == std::string::npos ? imp.name : imp.name.substr(dot + 1);
      if (last == name) {
        if (index_->by_qualified.count(imp.name)) return imp.name;
        return std::nullopt;
      }
    }
    // 2. Same-package top-level declaration.
    if (const auto pkg = index_->by_package.find(unit.package);
        pkg != index_->by_package.end()) {
      if (const auto hit = pkg->second.find(name); hit != pkg->second.end()) {
        return hit->second;
      }
    }
    // 3. On-demand imports, in declaration order.
    for (const ImportDecl& imp : unit.imports) {
      if (!imp.on_demand) continue;
      if (const auto pkg = index_->by_package.find(imp.name);
          pkg != index_->by_package.end()) {
        if (const auto hit = pkg->second.find(name); hit != pkg->second.end()) {
          return hit->second;
        }
      }
      const std::string nested = imp.name + "." + name;
      if (index_->by_qualified.count(nested)) return nested;
    }
    // 4. Globally unique top-level simple name.
    if (const auto hit = index_->by_simple.find(name);
        hit != index_->by_simple.end() && hit->second.size() == 1) {
      return hit->second.front();
    }
    return std::nullopt;
  };

  for (std::size_t k = segs.size(); k >= 2; --k) {
    if (!starts_upper(segs[k - 1])) continue;
    std::string prefix = segs[0];
    for (std::size_t i = 1; i < k; ++i) prefix += "." + segs[i];
    if (index_->by_qualified.count(prefix)) return prefix;
    if (!unit.package.empty()) {
      const std::string relative = unit.package + "." + prefix;
      if (index_->by_qualified.count(relative)) return relative;
    }
    if (const auto head = resolve_simple(segs[0])) {
      std::string suffix;
      for (std::size_t i = 1; i < k; ++i) suffix += "." + segs[i];
      const std::string candidate = *head + suffix;
      if (index_->by_qualified.count(candidate)) return candidate;
    }
  }
  return resolve_simple(segs[0]);
}

void Corpus::for_each_type_edge(
    const std::function<void(int from_type, int to_type)>& fn) const {
  // Dense type ids in (unit, declaration) order, matching the overlay.
  int next_id = 0;
  std::unordered_map<std::string, int> id_of;
  for (const CompilationUnitFacts& unit : units_) {
    for (const TypeDeclFacts& decl : unit.types) id_of[decl.qualified_name] = next_id++;
  }
  int from = 0;
  std::unordered_set<int> seen;
  for (const CompilationUnitFacts& unit : units_) {
    for (const TypeDeclFacts& decl : unit.types) {
      seen.clear();
      for (const std::string& chain : decl.referenced) {
        const auto target = resolve(chain, unit);
        if (!target || *target == decl.qualified_name) continue;  // self-edges dropped
        const int to = id_of.at(*target);
        if (seen.insert(to).second) fn(from, to);
      }
      ++from;
    }
  }
}

const graph::DependencyGraph& Corpus::type_dependency_graph() const {
  if (!type_graph_) {
    ++type_graph_builds_;
    auto g = std::make_unique<graph::DependencyGraph>();

    std::vector<std::pair<int, int>> edges;
    for_each_type_edge([&](int from, int to) { edges.emplace_back(from, to); });

    g->reserve_components(index_->type_count);
    for (const CompilationUnitFacts& unit : units_) {
      for (const TypeDeclFacts& decl : unit.types) {
        g->add_component(SourceRef{FrontendKind::JavaTypes, decl.qualified_name, decl.span});
      }
    }
    std::vector<int> out_degrees(index_->type_count, 0), in_degrees(index_->type_count, 0);
    for (const auto& [from, to] : edges) {
      ++out_degrees[from];
      ++in_degrees[to];
    }
    g->reserve_adjacency(out_degrees, in_degrees);
    for (const auto& [from, to] : edges) g->add_dependency(from, to);
    type_graph_ = std::move(g);
  }
  return *type_graph_;
}

const graph::DependencyGraph& Corpus::package_dependency_graph() const {
  if (!package_graph_) {
    ++package_graph_builds_;
    auto g = std::make_unique<graph::DependencyGraph>();

    std::unordered_map<std::string, int> pid;
    for (const std::string& pkg : index_->packages) {
      pid[pkg] = g->add_component(std::nullopt, pkg);
    }

    // Type ids -> owning package, in overlay order.
    std::vector<int> package_of_type;
    for (const CompilationUnitFacts& unit : units_) {
      for (std::size_t i = 0; i < unit.types.size(); ++i) {
        package_of_type.push_back(pid.at(unit.package));
      }
    }

    std::set<std::pair<int, int>> edges;
    for_each_type_edge([&](int from, int to) {
      const int p = package_of_type[from];
      const int q = package_of_type[to];
      if (p != q) edges.emplace(p, q);
    });
    for (const CompilationUnitFacts& unit : units_) {
      const int p = pid.at(unit.package);
      for (const ImportDecl& imp : unit.imports) {
        int q = -1;
        if (imp.on_demand) {
          if (index_->packages.count(imp.name)) {
            q = pid.at(imp.name);
          } else if (const auto loc = index_->by_qualified.find(imp.name);
                     loc != index_->by_qualified.end()) {
            q = pid.at(units_[loc->second.unit].package);
          }
        } else if (const auto loc = index_->by_qualified.find(imp.name);
                   loc != index_->by_qualified.end()) {
          q = pid.at(units_[loc->second.unit].package);
        }
        if (q >= 0 && q != p) edges.emplace(p, q);
      }
    }
    for (const auto& [p, q] : edges) g->add_dependency(p, q);
    package_graph_ = std::move(g);
  }
  return *package_graph_;
}

void Corpus::reset_overlay_caches() const {
  type_graph_.reset();
  package_graph_.reset();
}

namespace {

/// Kosaraju over plain adjacency vectors with an explicitly materialized
/// inverse graph. Shared by the two direct baselines, which build their
/// adjacency inline from the facts without constructing any overlay.
std::vector<std::vector<int>> kosaraju_with_inverse(
    const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v) {
    for (const int w : succ[v]) pred[w].push_back(v);
  }

  std::vector<int> finish_order;
  finish_order.reserve(n);
  std::vector<unsigned char> visited(n, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int v = 0; v < n; ++v) {
    if (visited[v]) continue;
    visited[v] = 1;
    stack.emplace_back(v, 0);
    while (!stack.empty()) {
      auto& [node, next_index] = stack.back();
      if (next_index < succ[node].size()) {
        const int next = succ[node][next_index++];
        if (!visited[next]) {
          visited[next] = 1;
          stack.emplace_back(next, 0);
        }
      } else {
        finish_order.push_back(node);
        stack.pop_back();
      }
    }
  }

  std::vector<int> group_of(n, -1);
  std::vector<std::vector<int>> groups;
  std::vector<int> work;
  for (auto it = finish_order.rbegin(); it != finish_order.rend(); ++it) {
    if (group_of[*it] != -1) continue;
    const int gid = static_cast<int>(groups.size());
    groups.emplace_back();
    group_of[*it] = gid;
    work.push_back(*it);
    while (!work.empty()) {
      const int node = work.back();
      work.pop_back();
      groups[gid].push_back(node);
      for (const int p : pred[node]) {
        if (group_of[p] == -1) {
          group_of[p] = gid;
          work.push_back(p);
        }
      }
    }
  }
  return groups;
}

std::vector<std::vector<std::string>> name_partition(
    std::vector<std::vector<int>> groups, const std::vector<std::string>& names) {
  std::vector<std::vector<std::string>> out;
  out.reserve(groups.size());
  for (auto& g : groups) {
    std::vector<std::string> members;
    members.reserve(g.size());
    for (const int id : g) members.push_back(names[id]);
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> Corpus::direct_type_scc() const {
  std::vector<std::string> names;
  for (const CompilationUnitFacts& unit : units_) {
    for (const TypeDeclFacts& decl : unit.types) names.push_back(decl.qualified_name);
  }
  std::vector<std::vector<int>> succ(names.size());
  for_each_type_edge([&](int from, int to) { succ[from].push_back(to); });
  return name_partition(kosaraju_with_inverse(succ), names);
}

std::vector<std::vector<std::string>> Corpus::direct_package_scc() const {
  const std::vector<std::string> names = packages();
  std::unordered_map<std::string, int> pid;
  for (std::size_t i = 0; i < names.size(); ++i) pid[names[i]] = static_cast<int>(i);

  std::vector<int> package_of_type;
  for (const CompilationUnitFacts& unit : units_) {
    for (std::size_t i = 0; i < unit.types.size(); ++i) {
      package_of_type.push_back(pid.at(unit.package));
    }
  }

  std::set<std::pair<int, int>> edges;
  for_each_type_edge([&](int from, int to) {
    const int p = package_of_type[from];
    const int q = package_of_type[to];
    if (p != q) edges.emplace(p, q);
  });
  for (const CompilationUnitFacts& unit : units_) {
    const int p = pid.at(unit.package);
    for (const ImportDecl& imp : unit.imports) {
      int q = -1;
      if (imp.on_demand) {
        if (index_->packages.count(imp.name)) {
          q = pid.at(imp.name);
        } else if (const auto loc = index_->by_qualified.find(imp.name);
                   loc != index_->by_qualified.end()) {
          q = pid.at(units_[loc->second.unit].package);
        }
      } else if (const auto loc = index_->by_qualified.find(imp.name);
                 loc != index_->by_qualified.end()) {
        q = pid.at(units_[loc->second.unit].package);
      }
      if (q >= 0 && q != p) edges.emplace(p, q);
    }
  }

  std::vector<std::vector<int>> succ(names.size());
  for (const auto& [p, q] : edges) succ[p].push_back(q);
  return name_partition(kosaraju_with_inverse(succ), names);
}

Corpus load_corpus(const std::vector<std::string>& paths) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const std::string& path : paths) {
    if (fs::is_directory(path)) {
      for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java") {
          files.push_back(entry.path().string());
        }
      }
    } else {
      files.push_back(path);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());

  std::vector<CompilationUnitFacts> units;
  units.reserve(files.size());
  for (const std::string& file : files) {
    std::ifstream in(file);
    if (!in) throw Error("cannot read " + file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    units.push_back(scan_java_file(buffer.str(), file));
  }
  return Corpus(std::move(units));
}

}  // namespace graft::javadeps
