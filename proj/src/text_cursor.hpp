#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cpsaudit/error.hpp"
#include "cpsaudit/term.hpp"

namespace cpsaudit::detail {

inline bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}
// Characters allowed in prefix labels and local names.
inline bool is_name_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' ||
         is_high(c);
}

// Byte cursor shared by the Turtle, rule and control parsers. Every error is
// raised as a ParseError pointing at the current (or a saved) offset.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).starts_with(s);
  }
  std::size_t offset() const { return pos_; }
  void reset(std::size_t offset) { pos_ = offset; }
  void advance(std::size_t n = 1) { pos_ = std::min(pos_ + n, text_.size()); }
  std::string_view text() const { return text_; }

  // Skips whitespace and `#` comments.
  void skip_blank();
  bool try_consume(std::string_view s);
  void expect(std::string_view s, std::string_view what);
  // Keyword followed by a non-name character.
  bool try_keyword(std::string_view word);

  SourceLocation location(std::size_t offset) const;
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const;
  [[noreturn]] void fail_unknown_prefix(std::size_t offset,
                                        const std::string& label) const;

  // `<...>` with the IRI validated as absolute.
  std::string read_iri_ref();
  // Double- or single-quoted short string with escapes decoded.
  std::string read_quoted_string();
  // [+-]?[0-9]+; decimals and doubles are rejected.
  std::string read_integer();
  // Run of name characters (may be empty).
  std::string_view read_name_chars();
  // Local part of a prefixed name; a trailing '.' is left unread.
  std::string read_local_name();

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace cpsaudit::detail
