// Internal tokenizer shared by the text frontends. Not installed.
#ifndef GRAFT_SRC_TOKEN_STREAM_HPP
#define GRAFT_SRC_TOKEN_STREAM_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "graft/errors.hpp"
#include "graft/source_ref.hpp"

namespace graft::detail {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;

  bool is_ident(std::string_view word) const {
    return kind == Kind::Ident && text == word;
  }
  bool is_punct(char c) const { return kind == Kind::Punct && text.size() == 1 && text[0] == c; }
};

/// Identifier / number / single-char punctuation reader that skips `//` and
/// `/* */` comments and string/char literals. Throws ParseError when the
/// input ends inside a comment or literal.
class CodeLexer {
 public:
  CodeLexer(std::string_view text, std::string file)
      : text_(text), file_(std::move(file)) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      tok.kind = Token::Kind::Ident;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '$')) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::Number;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '.')) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      return tok;
    }
    if (c == '"' || c == '\'') {
      skip_literal(c);
      return next();
    }
    tok.kind = Token::Kind::Punct;
    tok.text.push_back(c);
    advance();
    return tok;
  }

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& file() const { return file_; }

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
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        const int at_line = line_, at_col = col_;
        advance();
        advance();
        while (true) {
          if (pos_ + 1 >= text_.size()) {
            throw ParseError(file_, at_line, at_col, "unterminated block comment");
          }
          if (text_[pos_] == '*' && text_[pos_ + 1] == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
      } else {
        break;
      }
    }
  }

  void skip_literal(char quote) {
    const int at_line = line_, at_col = col_;
    advance();
    while (true) {
      if (pos_ >= text_.size()) {
        throw ParseError(file_, at_line, at_col, "unterminated literal");
      }
      const char c = text_[pos_];
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) {
          throw ParseError(file_, at_line, at_col, "unterminated literal");
        }
        advance();
        continue;
      }
      advance();
      if (c == quote) break;
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

/// Token stream with arbitrary pushback.
class TokenStream {
 public:
  TokenStream(std::string_view text, std::string file)
      : lexer_(text, std::move(file)) {}

  Token next() {
    if (!pending_.empty()) {
      Token tok = std::move(pending_.back());
      pending_.pop_back();
      return tok;
    }
    return lexer_.next();
  }

  const Token& peek() {
    if (pending_.empty()) pending_.push_back(lexer_.next());
    return pending_.back();
  }

  void unget(Token tok) { pending_.push_back(std::move(tok)); }

  int line() const { return lexer_.line(); }
  int col() const { return lexer_.col(); }
  const std::string& file() const { return lexer_.file(); }

 private:
  CodeLexer lexer_;
  std::vector<Token> pending_;
};

inline Span token_span(const std::string& file, const Token& tok) {
  const int len = tok.text.empty() ? 1 : static_cast<int>(tok.text.size());
  return Span{file, tok.line, tok.col, tok.line, tok.col + len - 1};
}

}  // namespace graft::detail

#endif
