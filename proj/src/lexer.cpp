#include "lexer.hpp"

#include <cctype>
#include <charconv>

namespace ppcomp::detail {

bool Lexer::word_char(char c) const {
  auto u = static_cast<unsigned char>(c);
  if (std::isalnum(u) || c == '_' || c == '\'') return true;
  if (style_ == WordStyle::element) return c == '|' || c == '-' || c == '+';
  return false;
}

char Lexer::get() {
  char c = text_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  return c;
}

void Lexer::advance() {
  for (;;) {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      get();
    if (pos_ < text_.size() && text_[pos_] == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') get();
      continue;
    }
    break;
  }
  current_ = Token{};
  current_.line = line_;
  current_.column = column_;
  if (pos_ >= text_.size()) {
    current_.kind = TokenKind::end;
    return;
  }
  char c = text_[pos_];
  if (c == '"') {
    get();
    current_.kind = TokenKind::string;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\n')
        throw ParseError("unterminated string", current_.line, current_.column);
      current_.text.push_back(get());
    }
    if (pos_ >= text_.size())
      throw ParseError("unterminated string", current_.line, current_.column);
    get();
    return;
  }
  if (word_char(c)) {
    current_.kind = TokenKind::word;
    while (pos_ < text_.size() && word_char(text_[pos_]))
      current_.text.push_back(get());
    return;
  }
  current_.kind = TokenKind::punct;
  if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
    current_.text = ":=";
    get();
    get();
    return;
  }
  current_.text.push_back(get());
}

std::size_t Lexer::natural(std::string_view what) {
  if (current_.kind != TokenKind::word) fail("expected " + std::string(what));
  const std::string& s = current_.text;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail("expected " + std::string(what));
  advance();
  return value;
}

std::string quote_if_needed(const std::string& name, WordStyle style) {
  bool plain = !name.empty();
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    bool ok = std::isalnum(u) || c == '_' || c == '\'' ||
              (style == WordStyle::element && (c == '|' || c == '-' || c == '+'));
    if (!ok) plain = false;
  }
  return plain ? name : "\"" + name + "\"";
}

}  // namespace ppcomp::detail
