#ifndef PPCOMP_SRC_LEXER_HPP
#define PPCOMP_SRC_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "ppcomp/error.hpp"

namespace ppcomp::detail {

enum class TokenKind { word, string, punct, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is(std::string_view punct) const {
    return kind == TokenKind::punct && text == punct;
  }
  bool is_word(std::string_view word) const {
    return kind == TokenKind::word && text == word;
  }
};

/// Which characters make up a word token. Element names in structure-like
/// files may contain '|' (product elements) and may start with a digit;
/// formula identifiers may contain primes.
enum class WordStyle { element, identifier };

/// Hand-rolled tokenizer shared by every text grammar of the library.
/// `#` starts a comment running to the end of the line.
class Lexer {
 public:
  Lexer(std::string_view text, WordStyle style) : text_(text), style_(style) {
    advance();
  }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool at_end() const { return current_.kind == TokenKind::end; }

  bool accept(std::string_view punct) {
    if (current_.is(punct)) {
      advance();
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view word) {
    if (current_.is_word(word)) {
      advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  void expect_word(std::string_view word) {
    if (!accept_word(word)) fail("expected '" + std::string(word) + "'");
  }
  /// A word or a quoted string.
  std::string name(std::string_view what) {
    if (current_.kind != TokenKind::word && current_.kind != TokenKind::string)
      fail("expected " + std::string(what));
    return next().text;
  }
  std::size_t natural(std::string_view what);

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string got = current_.kind == TokenKind::end
                          ? std::string("end of input")
                          : "'" + current_.text + "'";
    throw ParseError(message + ", got " + got, current_.line, current_.column);
  }

 private:
  void advance();
  bool word_char(char c) const;
  char get();

  std::string_view text_;
  WordStyle style_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

std::string quote_if_needed(const std::string& name, WordStyle style);

}  // namespace ppcomp::detail

#endif  // PPCOMP_SRC_LEXER_HPP
