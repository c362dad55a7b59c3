#include "graft/statemachine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "graft/errors.hpp"
#include "graft/graph.hpp"

namespace graft::sm {

namespace {

struct Token {
  enum class Kind { Ident, Number, Arrow, Colon, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file)
      : text_(text), file_(std::move(file)) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) {
      tok.kind = Token::Kind::End;
      return tok;
    }
    const char c = text_[pos_];
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      tok.kind = Token::Kind::Arrow;
      tok.text = "->";
      return tok;
    }
    if (c == ':') {
      advance();
      tok.kind = Token::Kind::Colon;
      tok.text = ":";
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::Number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Token::Kind::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      return tok;
    }
    throw ParseError(file_, line_, col_, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Span token_span(const std::string& file, const Token& tok) {
  const int len = tok.text.empty() ? 1 : static_cast<int>(tok.text.size());
  return Span{file, tok.line, tok.col, tok.line, tok.col + len - 1};
}

}  // namespace

StateMachine::StateMachine() = default;
StateMachine::StateMachine(StateMachine&&) noexcept = default;
StateMachine& StateMachine::operator=(StateMachine&&) noexcept = default;
StateMachine::~StateMachine() = default;

int StateMachine::state_index(std::string_view label) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

const graph::DependencyGraph& StateMachine::dependency_graph() const {
  if (!overlay_) {
    ++overlay_builds_;
    auto g = std::make_unique<graph::DependencyGraph>();
    g->set_backlink(SourceRef{FrontendKind::StateMachine, file_,
                              Span{file_, 1, 1, 1, 1}});
    g->reserve_components(static_cast<int>(states_.size()));
    for (const State& s : states_) {
      g->add_component(SourceRef{FrontendKind::StateMachine, s.label, s.span});
    }
    std::vector<int> out_degrees(states_.size(), 0), in_degrees(states_.size(), 0);
    for (const Transition& t : transitions_) {
      ++out_degrees[t.from];
      ++in_degrees[t.to];
    }
    g->reserve_adjacency(out_degrees, in_degrees);
    for (const Transition& t : transitions_) {
      g->add_dependency(t.from, t.to);
    }
    overlay_ = std::move(g);
  }
  return *overlay_;
}

void StateMachine::reset_overlay_cache() const { overlay_.reset(); }

StateMachine parse_state_machine(std::string_view text, std::string file) {
  Lexer lexer(text, file);

  struct RawTransition {
    std::string from, to, event;
    Token from_tok, to_tok;
  };
  struct RawState {
    std::string label;
    bool is_final;
    Token tok;
  };

  std::vector<RawState> raw_states;
  std::vector<RawTransition> raw_transitions;
  std::string initial_label;
  Token initial_tok;
  bool have_initial = false;

  Token tok = lexer.next();
  while (tok.kind != Token::Kind::End) {
    if (tok.kind != Token::Kind::Ident) {
      throw ParseError(file, tok.line, tok.col, "expected a declaration, got '" + tok.text + "'");
    }
    if (tok.text == "final" || tok.text == "state") {
      bool is_final = false;
      if (tok.text == "final") {
        is_final = true;
        tok = lexer.next();
        if (tok.kind != Token::Kind::Ident || tok.text != "state") {
          throw ParseError(file, tok.line, tok.col, "expected 'state' after 'final'");
        }
      }
      Token name = lexer.next();
      if (name.kind != Token::Kind::Ident) {
        throw ParseError(file, name.line, name.col, "expected state id");
      }
      raw_states.push_back(RawState{name.text, is_final, name});
    } else if (tok.text == "initial") {
      Token name = lexer.next();
      if (name.kind != Token::Kind::Ident) {
        throw ParseError(file, name.line, name.col, "expected state id after 'initial'");
      }
      if (have_initial) {
        throw ParseError(file, name.line, name.col, "duplicate 'initial' clause");
      }
      have_initial = true;
      initial_label = name.text;
      initial_tok = name;
    } else {
      RawTransition t;
      t.from = tok.text;
      t.from_tok = tok;
      Token arrow = lexer.next();
      if (arrow.kind != Token::Kind::Arrow) {
        throw ParseError(file, arrow.line, arrow.col, "expected '->' in transition");
      }
      Token to = lexer.next();
      if (to.kind != Token::Kind::Ident) {
        throw ParseError(file, to.line, to.col, "expected target state id");
      }
      t.to = to.text;
      t.to_tok = to;
      Token colon = lexer.next();
      if (colon.kind != Token::Kind::Colon) {
        throw ParseError(file, colon.line, colon.col, "expected ':' before event label");
      }
      Token event = lexer.next();
      if (event.kind != Token::Kind::Ident && event.kind != Token::Kind::Number) {
        throw ParseError(file, event.line, event.col, "expected event label");
      }
      t.event = event.text;
      raw_transitions.push_back(std::move(t));
    }
    tok = lexer.next();
  }

  if (!have_initial) {
    throw ParseError(file, tok.line, tok.col, "missing 'initial' clause");
  }

  StateMachine machine;
  machine.file_ = file;

  std::map<std::string, int> index;
  for (const RawState& rs : raw_states) {
    if (index.count(rs.label)) {
      throw ParseError(file, rs.tok.line, rs.tok.col,
                       "duplicate state label '" + rs.label + "'");
    }
    const int id = static_cast<int>(machine.states_.size());
    index[rs.label] = id;
    machine.states_.push_back(
        State{rs.label, rs.is_final, {}, {}, token_span(file, rs.tok)});
    if (rs.is_final) machine.finals_.push_back(id);
  }

  auto resolve = [&](const std::string& label, const Token& at) {
    const auto it = index.find(label);
    if (it == index.end()) {
      throw ParseError(file, at.line, at.col, "unresolved state id '" + label + "'");
    }
    return it->second;
  };

  for (const RawTransition& rt : raw_transitions) {
    const int from = resolve(rt.from, rt.from_tok);
    const int to = resolve(rt.to, rt.to_tok);
    const int id = static_cast<int>(machine.transitions_.size());
    machine.transitions_.push_back(
        Transition{rt.event, from, to, token_span(file, rt.from_tok)});
    machine.states_[from].outgoing.push_back(id);
    machine.states_[to].incoming.push_back(id);
  }

  machine.initial_ = resolve(initial_label, initial_tok);
  return machine;
}

std::string print_state_machine(const StateMachine& machine) {
  std::ostringstream out;
  for (const State& s : machine.states()) {
    if (s.is_final) out << "final ";
    out << "state " << s.label << "\n";
  }
  for (const Transition& t : machine.transitions()) {
    out << machine.states()[t.from].label << "->" << machine.states()[t.to].label
        << ":" << t.event << "\n";
  }
  out << "initial " << machine.states()[machine.initial()].label << "\n";
  return out.str();
}

bool structurally_equal(const StateMachine& a, const StateMachine& b) {
  if (a.states().size() != b.states().size()) return false;
  if (a.transitions().size() != b.transitions().size()) return false;
  if (a.initial() != b.initial()) return false;
  if (a.finals() != b.finals()) return false;
  for (std::size_t i = 0; i < a.states().size(); ++i) {
    if (a.states()[i].label != b.states()[i].label) return false;
    if (a.states()[i].is_final != b.states()[i].is_final) return false;
  }
  for (std::size_t i = 0; i < a.transitions().size(); ++i) {
    const Transition& x = a.transitions()[i];
    const Transition& y = b.transitions()[i];
    if (x.event != y.event || x.from != y.from || x.to != y.to) return false;
  }
  return true;
}

std::vector<std::vector<int>> direct_scc(const StateMachine& machine) {
  const int n = static_cast<int>(machine.states().size());
  const auto& states = machine.states();
  const auto& transitions = machine.transitions();

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
      const auto& out = states[node].outgoing;
      if (next_index < out.size()) {
        const int next = transitions[out[next_index++]].to;
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
      for (const int tid : states[node].incoming) {
        const int pred = transitions[tid].from;
        if (group_of[pred] == -1) {
          group_of[pred] = gid;
          work.push_back(pred);
        }
      }
    }
  }

  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

std::vector<graph::CycleFinding> cycle_report(const StateMachine& machine) {
  const graph::DependencyGraph& overlay = machine.dependency_graph();
  return graph::cycle_findings(overlay, graph::scc(overlay));
}

}  // namespace graft::sm
