#include "text_cursor.hpp"

#include <algorithm>

namespace cpsaudit::detail {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void TextCursor::skip_blank() {
  while (!eof()) {
    const char c = peek();
    if (is_space(c)) {
      ++pos_;
    } else if (c == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    } else {
      break;
    }
  }
}

bool TextCursor::try_consume(std::string_view s) {
  if (!starts_with(s)) return false;
  pos_ += s.size();
  return true;
}

void TextCursor::expect(std::string_view s, std::string_view what) {
  if (!try_consume(s)) fail("expected " + std::string(what));
}

bool TextCursor::try_keyword(std::string_view word) {
  if (!starts_with(word)) return false;
  const char next = peek(word.size());
  if (is_name_char(next) || next == ':') return false;
  pos_ += word.size();
  return true;
}

SourceLocation TextCursor::location(std::size_t offset) const {
  offset = std::min(offset, text_.size());
  SourceLocation where;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text_[i] == '\n') {
      ++where.line;
      where.column = 1;
    } else {
      ++where.column;
    }
  }
  return where;
}

void TextCursor::fail(const std::string& message) const {
  fail_at(pos_, message);
}

void TextCursor::fail_at(std::size_t offset, const std::string& message) const {
  offset = std::min(offset, text_.size());
  std::string snippet(text_.substr(offset, 24));
  if (const auto nl = snippet.find('\n'); nl != std::string::npos) {
    snippet.resize(nl);
  }
  throw ParseError(location(offset), message, snippet);
}

void TextCursor::fail_unknown_prefix(std::size_t offset,
                                     const std::string& label) const {
  throw UnknownPrefix(label, location(offset));
}

std::string TextCursor::read_iri_ref() {
  const std::size_t start = pos_;
  expect("<", "'<'");
  std::string iri;
  while (true) {
    if (eof()) fail_at(start, "unterminated IRI");
    const char c = peek();
    if (c == '>') break;
    if (c == '\n') fail_at(start, "unterminated IRI");
    iri.push_back(c);
    ++pos_;
  }
  ++pos_;
  if (!is_valid_iri(iri)) fail_at(start, "invalid or relative IRI");
  return iri;
}

std::string TextCursor::read_quoted_string() {
  const std::size_t start = pos_;
  const char quote = peek();
  if (quote != '"' && quote != '\'') fail("expected string literal");
  if (peek(1) == quote && peek(2) == quote) {
    fail("multi-line strings are not supported");
  }
  ++pos_;
  std::string value;
  while (true) {
    if (eof()) fail_at(start, "unterminated string literal");
    const char c = peek();
    if (c == quote) {
      ++pos_;
      return value;
    }
    if (c == '\n' || c == '\r') fail_at(start, "line break inside string literal");
    if (c != '\\') {
      value.push_back(c);
      ++pos_;
      continue;
    }
    const std::size_t escape_at = pos_;
    ++pos_;
    const char e = peek();
    ++pos_;
    switch (e) {
      case 't': value.push_back('\t'); break;
      case 'b': value.push_back('\b'); break;
      case 'n': value.push_back('\n'); break;
      case 'r': value.push_back('\r'); break;
      case 'f': value.push_back('\f'); break;
      case '"': value.push_back('"'); break;
      case '\'': value.push_back('\''); break;
      case '\\': value.push_back('\\'); break;
      case 'u':
      case 'U': {
        const std::size_t digits = e == 'u' ? 4 : 8;
        std::uint32_t cp = 0;
        for (std::size_t k = 0; k < digits; ++k) {
          const int h = hex_value(peek());
          if (h < 0) fail_at(escape_at, "malformed unicode escape");
          cp = cp * 16 + static_cast<std::uint32_t>(h);
          ++pos_;
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
          fail_at(escape_at, "invalid code point in escape");
        }
        append_utf8(value, cp);
        break;
      }
      default:
        fail_at(escape_at, "unknown escape sequence");
    }
  }
}

std::string TextCursor::read_integer() {
  const std::size_t start = pos_;
  if (peek() == '+' || peek() == '-') ++pos_;
  if (!is_digit(peek())) fail_at(start, "malformed number");
  while (is_digit(peek())) ++pos_;
  if (peek() == '.' && is_digit(peek(1))) {
    fail_at(start, "decimal literals are not supported");
  }
  if (peek() == 'e' || peek() == 'E') {
    fail_at(start, "double literals are not supported");
  }
  return std::string(text_.substr(start, pos_ - start));
}

std::string_view TextCursor::read_name_chars() {
  const std::size_t start = pos_;
  while (!eof() && is_name_char(peek())) ++pos_;
  return text_.substr(start, pos_ - start);
}

std::string TextCursor::read_local_name() {
  const std::size_t start = pos_;
  while (!eof() && (is_name_char(peek()) || peek() == ':')) ++pos_;
  while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
  return std::string(text_.substr(start, pos_ - start));
}

}  // namespace cpsaudit::detail
