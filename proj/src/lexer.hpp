#pragma once

// Tokenizer shared by the role, type and term parsers.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lrbac/error.hpp"

namespace lrbac {
class Role;
}

namespace lrbac::detail {

struct Token {
  enum class Kind { Ident, Int, String, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  SourceLocation loc;

  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_ident(std::string_view s) const { return kind == Kind::Ident && text == s; }
};

std::vector<Token> tokenize(std::string_view src);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool accept_symbol(std::string_view s) {
    if (peek().is_symbol(s)) {
      next();
      return true;
    }
    return false;
  }
  bool accept_keyword(std::string_view s) {
    if (peek().is_ident(s)) {
      next();
      return true;
    }
    return false;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_keyword(std::string_view s) {
    if (!accept_keyword(s)) fail("expected '" + std::string(s) + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.loc);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_keyword(std::string_view word);

}  // namespace lrbac::detail

namespace lrbac::detail {

// Parses a role expression starting at the current token, stopping at the
// first token that cannot continue it.
Role parse_role_tokens(TokenStream& ts, const std::map<std::string, Role>& aliases);

}  // namespace lrbac::detail
