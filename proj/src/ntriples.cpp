// Copyright 2026 The ondex-bridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "obridge/ntriples.hpp"

#include "obridge/error.hpp"
#include "obridge/text.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace obridge::rdf {

namespace {

constexpr char kHex[] = "0123456789ABCDEF";

void append_uchar(std::string& out, char32_t cp) {
  if (cp <= 0xFFFF) {
    out += "\\u";
    for (int shift = 12; shift >= 0; shift -= 4) out.push_back(kHex[(cp >> shift) & 0xF]);
  } else {
    out += "\\U";
    for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kHex[(cp >> shift) & 0xF]);
  }
}

bool iri_needs_escape(unsigned char c) {
  if (c <= 0x20 || c == 0x7F) return true;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}':
    case '|': case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

void append_iri(std::string& out, std::string_view iri) {
  out.push_back('<');
  for (char ch : iri) {
    const auto c = static_cast<unsigned char>(ch);
    if (iri_needs_escape(c)) {
      append_uchar(out, c);
    } else {
      out.push_back(ch);
    }
  }
  out.push_back('>');
}

void append_literal_body(std::string& out, std::string_view lexical) {
  out.push_back('"');
  for (char ch : lexical) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default: {
        const auto c = static_cast<unsigned char>(ch);
        if (c < 0x20 || c == 0x7F) {
          append_uchar(out, c);
        } else {
          out.push_back(ch);
        }
      }
    }
  }
  out.push_back('"');
}

void append_term(std::string& out, const Term& term) {
  switch (term.kind) {
    case TermKind::Iri:
      append_iri(out, term.value);
      break;
    case TermKind::Blank:
      out += "_:";
      out += term.value;
      break;
    case TermKind::Literal:
      append_literal_body(out, term.value);
      if (!term.lang.empty()) {
        out.push_back('@');
        out += term.lang;
      } else if (!term.datatype.empty() && term.datatype != kXsdString) {
        out += "^^";
        append_iri(out, term.datatype);
      }
      break;
  }
}

}  // namespace

std::string to_ntriples(const Term& term) {
  std::string out;
  append_term(out, term);
  return out;
}

std::string to_ntriples(const Triple& triple) {
  std::string out;
  append_term(out, triple.subject);
  out.push_back(' ');
  append_term(out, triple.predicate);
  out.push_back(' ');
  append_term(out, triple.object);
  out += " .";
  return out;
}

void canonical_sort(std::vector<Triple>& triples) {
  struct Keyed {
    std::string s, p, o;
    std::size_t index;
  };
  std::vector<Keyed> keys;
  keys.reserve(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    keys.push_back({to_ntriples(triples[i].subject), to_ntriples(triples[i].predicate),
                    to_ntriples(triples[i].object), i});
  }
  std::sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.s, a.p, a.o) < std::tie(b.s, b.p, b.o);
  });
  std::vector<Triple> sorted;
  sorted.reserve(triples.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0 && keys[i].s == keys[i - 1].s && keys[i].p == keys[i - 1].p &&
        keys[i].o == keys[i - 1].o) {
      continue;
    }
    sorted.push_back(std::move(triples[keys[i].index]));
  }
  triples = std::move(sorted);
}

void write_ntriples(std::ostream& out, std::span<const Triple> triples) {
  for (const auto& t : triples) out << to_ntriples(t) << '\n';
}

std::string serialize_ntriples(std::span<const Triple> triples) {
  std::string out;
  for (const auto& t : triples) {
    out += to_ntriples(t);
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool in_ranges(char32_t c, std::initializer_list<std::pair<char32_t, char32_t>> ranges) {
  return std::any_of(ranges.begin(), ranges.end(),
                     [c](const auto& r) { return c >= r.first && c <= r.second; });
}

bool pn_chars_base(char32_t c) {
  return in_ranges(c, {{'A', 'Z'},
                       {'a', 'z'},
                       {0x00C0, 0x00D6},
                       {0x00D8, 0x00F6},
                       {0x00F8, 0x02FF},
                       {0x0370, 0x037D},
                       {0x037F, 0x1FFF},
                       {0x200C, 0x200D},
                       {0x2070, 0x218F},
                       {0x2C00, 0x2FEF},
                       {0x3001, 0xD7FF},
                       {0xF900, 0xFDCF},
                       {0xFDF0, 0xFFFD},
                       {0x10000, 0xEFFFF}});
}

bool pn_chars_u(char32_t c) { return pn_chars_base(c) || c == '_' || c == ':'; }

bool pn_chars(char32_t c) {
  return pn_chars_u(c) || c == '-' || (c >= '0' && c <= '9') || c == 0x00B7 ||
         in_ranges(c, {{0x0300, 0x036F}, {0x203F, 0x2040}});
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool has_scheme(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0 || !is_ascii_alpha(iri[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = iri[i];
    if (!is_ascii_alpha(c) && !is_ascii_digit(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  /// Returns nullopt for blank and comment-only lines.
  std::optional<Triple> parse() {
    skip_ws();
    if (at_end() || peek() == '#') return std::nullopt;
    Triple t;
    t.subject = parse_subject();
    skip_ws();
    if (at_end() || peek() != '<') fail("expected predicate IRI");
    t.predicate = Term::iri(parse_iriref());
    skip_ws();
    t.object = parse_object();
    skip_ws();
    if (at_end() || peek() != '.') fail("expected '.' to end the triple");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected content after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw SyntaxError(line_no_, pos_ + 1, reason);
  }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& reason) const {
    throw SyntaxError(line_no_, pos + 1, reason);
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  char32_t next_code_point() {
    const std::size_t start = pos_;
    auto cp = text::decode_utf8(line_, pos_);
    if (!cp) fail_at(start, "invalid UTF-8");
    return *cp;
  }

  char32_t parse_uchar() {
    // pos_ is on the 'u' or 'U' following a backslash
    const std::size_t start = pos_ - 1;
    const std::size_t width = peek() == 'u' ? 4 : 8;
    ++pos_;
    if (pos_ + width > line_.size()) fail_at(start, "truncated \\u escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const char c = line_[pos_ + i];
      int v = -1;
      if (c >= '0' && c <= '9') v = c - '0';
      if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      if (v < 0) fail_at(pos_ + i, "bad hex digit in escape");
      cp = (cp << 4) | static_cast<char32_t>(v);
    }
    pos_ += width;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail_at(start, "escape is not a scalar value");
    return cp;
  }

  std::string parse_iriref() {
    const std::size_t start = pos_;
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (at_end()) fail_at(start, "unterminated IRI");
      const char c = peek();
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (at_end() || (peek() != 'u' && peek() != 'U')) fail("only \\u and \\U escapes are allowed in IRIs");
        text::append_utf8(out, parse_uchar());
        continue;
      }
      const auto uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`') {
        fail("character not allowed in IRI");
      }
      text::append_utf8(out, next_code_point());
    }
    if (!has_scheme(out)) fail_at(start, "relative IRI");
    return out;
  }

  std::string parse_blank_label() {
    const std::size_t start = pos_;
    pos_ += 2;  // "_:"
    if (at_end()) fail_at(start, "empty blank node label");
    const std::size_t label_start = pos_;
    char32_t first = next_code_point();
    if (!pn_chars_u(first) && !(first >= '0' && first <= '9')) {
      fail_at(label_start, "invalid blank node label");
    }
    std::size_t last_good = pos_;
    while (!at_end()) {
      const std::size_t before = pos_;
      auto cp = text::decode_utf8(line_, pos_);
      if (!cp) fail_at(before, "invalid UTF-8");
      if (*cp == '.') continue;
      if (!pn_chars(*cp)) {
        pos_ = before;
        break;
      }
      last_good = pos_;
    }
    // A label may contain dots but not end with one.
    pos_ = last_good;
    return std::string(line_.substr(label_start, last_good - label_start));
  }

  Term parse_subject() {
    if (peek() == '<') return Term::iri(parse_iriref());
    if (line_.substr(pos_, 2) == "_:") return Term::blank(parse_blank_label());
    fail("expected subject IRI or blank node");
  }

  Term parse_object() {
    if (at_end()) fail("expected object");
    if (peek() == '<') return Term::iri(parse_iriref());
    if (line_.substr(pos_, 2) == "_:") return Term::blank(parse_blank_label());
    if (peek() == '"') return parse_literal();
    fail("expected object IRI, blank node or literal");
  }

  Term parse_literal() {
    const std::size_t start = pos_;
    ++pos_;
    std::string lexical;
    while (true) {
      if (at_end()) fail_at(start, "unterminated literal");
      const char c = peek();
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (at_end()) fail("dangling backslash");
        switch (peek()) {
          case 't': lexical.push_back('\t'); ++pos_; break;
          case 'b': lexical.push_back('\b'); ++pos_; break;
          case 'n': lexical.push_back('\n'); ++pos_; break;
          case 'r': lexical.push_back('\r'); ++pos_; break;
          case 'f': lexical.push_back('\f'); ++pos_; break;
          case '"': lexical.push_back('"'); ++pos_; break;
          case '\'': lexical.push_back('\''); ++pos_; break;
          case '\\': lexical.push_back('\\'); ++pos_; break;
          case 'u':
          case 'U': text::append_utf8(lexical, parse_uchar()); break;
          default: fail("unknown escape sequence");
        }
        continue;
      }
      text::append_utf8(lexical, next_code_point());
    }
    if (line_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (at_end() || peek() != '<') fail("expected datatype IRI");
      return Term::literal(std::move(lexical), parse_iriref());
    }
    if (!at_end() && peek() == '@') {
      ++pos_;
      const std::size_t tag_start = pos_;
      while (!at_end() && is_ascii_alpha(peek())) ++pos_;
      if (pos_ == tag_start) fail("empty language tag");
      while (!at_end() && peek() == '-') {
        const std::size_t sub = ++pos_;
        while (!at_end() && (is_ascii_alpha(peek()) || is_ascii_digit(peek()))) ++pos_;
        if (pos_ == sub) fail("empty language subtag");
      }
      return Term::lang_literal(std::move(lexical),
                                std::string(line_.substr(tag_start, pos_ - tag_start)));
    }
    return Term::literal(std::move(lexical));
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Triple> parse_ntriples(std::string_view bytes) {
  std::vector<Triple> out;
  std::size_t line_no = 1;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto end = bytes.find_first_of("\r\n", pos);
    const auto line = bytes.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (auto t = LineParser(line, line_no).parse()) out.push_back(std::move(*t));
    if (end == std::string_view::npos) break;
    pos = end + 1;
    if (bytes[end] == '\r' && pos < bytes.size() && bytes[pos] == '\n') ++pos;
    ++line_no;
  }
  return out;
}

}  // namespace obridge::rdf
