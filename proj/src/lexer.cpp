#include "lexer.hpp"

#include <array>
#include <cctype>

namespace lrbac::detail {

namespace {

constexpr std::array<std::string_view, 16> kKeywords = {
    "let", "in", "if", "then", "else", "fix", "check", "up", "dn",
    "as", "true", "false", "def", "role", "amp", "_"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.loc = {line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Token::Kind::Int;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      tok.kind = Token::Kind::String;
      advance(1);
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          closed = true;
          advance(1);
          break;
        }
        if (d == '\n') break;
        if (d == '\\' && i + 1 < src.size()) {
          char e = src[i + 1];
          switch (e) {
            case 'n': tok.text += '\n'; break;
            case 't': tok.text += '\t'; break;
            case '"': tok.text += '"'; break;
            case '\\': tok.text += '\\'; break;
            default:
              throw ParseError(std::string("unknown escape '\\") + e + "'", {line, col});
          }
          advance(2);
          continue;
        }
        tok.text += d;
        advance(1);
      }
      if (!closed) throw ParseError("unterminated string literal", tok.loc);
    } else {
      static constexpr std::array<std::string_view, 5> kTwo = {";;", "==", "->", ">=", "<="};
      std::string_view rest = src.substr(i);
      std::string_view matched;
      for (auto s : kTwo) {
        if (rest.substr(0, 2) == s) {
          matched = s;
          break;
        }
      }
      if (matched.empty()) {
        static constexpr std::string_view kSingle = "\\.:()[]{}=;^!&|";
        if (kSingle.find(c) == std::string_view::npos) {
          std::string shown = (static_cast<unsigned char>(c) < 0x80) ? std::string(1, c) : "non-ASCII character";
          throw ParseError("unexpected character '" + shown + "'", tok.loc);
        }
        matched = rest.substr(0, 1);
      }
      tok.kind = Token::Kind::Symbol;
      tok.text = std::string(matched);
      advance(matched.size());
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace lrbac::detail
