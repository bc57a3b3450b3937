// Copyright 2026 The dataref Authors
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

// Stand-alone N-Triples checker following the W3C grammar (IRIREF, blank
// nodes, quoted literals with ECHAR/UCHAR escapes, datatypes and language
// tags). Used to validate exporter output without trusting the exporter.

#ifndef DATAREF_TESTS_NTRIPLES_H_
#define DATAREF_TESTS_NTRIPLES_H_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace ntriples {

struct Statement {
  std::string subject, predicate, object;
};

struct Result {
  bool ok = true;
  std::string error;
  std::vector<Statement> statements;
};

class Checker {
 public:
  explicit Checker(std::string_view doc) : doc_(doc) {}

  Result Run() {
    Result result;
    size_t line = 1;
    while (pos_ < doc_.size()) {
      SkipWs();
      if (Peek() == '#') SkipComment();
      if (AtEol()) {
        Eol();
        ++line;
        continue;
      }
      Statement st;
      if (!Subject(st.subject) || !(SkipWs(), Iri(st.predicate)) ||
          !(SkipWs(), Object(st.object)) || !(SkipWs(), Expect('.'))) {
        result.ok = false;
        result.error = "line " + std::to_string(line) + ": " + error_;
        return result;
      }
      SkipWs();
      if (Peek() == '#') SkipComment();
      if (!AtEol() && pos_ < doc_.size()) {
        result.ok = false;
        result.error = "line " + std::to_string(line) + ": trailing characters";
        return result;
      }
      Eol();
      ++line;
      result.statements.push_back(std::move(st));
    }
    return result;
  }

 private:
  char Peek() const { return pos_ < doc_.size() ? doc_[pos_] : '\0'; }
  bool AtEol() const { return pos_ >= doc_.size() || Peek() == '\n' || Peek() == '\r'; }
  void Eol() {
    while (pos_ < doc_.size() && (Peek() == '\n' || Peek() == '\r')) ++pos_;
  }
  void SkipWs() {
    while (Peek() == ' ' || Peek() == '\t') ++pos_;
  }
  void SkipComment() {
    while (!AtEol()) ++pos_;
  }
  bool Fail(const std::string &what) {
    error_ = what + " at byte " + std::to_string(pos_);
    return false;
  }
  bool Expect(char c) {
    if (Peek() != c) return Fail(std::string("expected '") + c + "'");
    ++pos_;
    return true;
  }

  bool Hex(size_t n) {
    for (size_t i = 0; i < n; ++i) {
      if (!std::isxdigit(static_cast<unsigned char>(Peek()))) return Fail("bad hex escape");
      ++pos_;
    }
    return true;
  }

  // Consumes one UTF-8 encoded code point, rejecting malformed sequences.
  bool Utf8() {
    unsigned char c = static_cast<unsigned char>(Peek());
    size_t extra = c < 0x80 ? 0 : (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xE ? 2 : (c >> 3) == 0x1E ? 3 : 9;
    if (extra == 9) return Fail("invalid UTF-8 lead byte");
    ++pos_;
    for (size_t i = 0; i < extra; ++i) {
      if ((static_cast<unsigned char>(Peek()) & 0xC0) != 0x80) return Fail("truncated UTF-8");
      ++pos_;
    }
    return true;
  }

  bool Iri(std::string &out) {
    size_t start = pos_;
    if (!Expect('<')) return false;
    bool scheme = false, colon = false;
    size_t chars = 0;
    while (Peek() != '>') {
      unsigned char c = static_cast<unsigned char>(Peek());
      if (pos_ >= doc_.size() || c <= 0x20 || std::string_view("<\"{}|^`").find(c) != std::string_view::npos) {
        return Fail("character not allowed in IRI");
      }
      if (c == '\\') {
        ++pos_;
        if (Peek() == 'u') {
          ++pos_;
          if (!Hex(4)) return false;
        } else if (Peek() == 'U') {
          ++pos_;
          if (!Hex(8)) return false;
        } else {
          return Fail("bad IRI escape");
        }
        continue;
      }
      if (c == ':' && chars > 0 && !colon) {
        colon = true;
        scheme = true;
      } else if (!colon && !(std::isalnum(c) || c == '+' || c == '-' || c == '.')) {
        colon = true;  // first non-scheme character before any ':'
      }
      ++chars;
      if (!Utf8()) return false;
    }
    ++pos_;
    if (!scheme) return Fail("relative IRI");
    out.assign(doc_.substr(start, pos_ - start));
    return true;
  }

  bool Blank(std::string &out) {
    size_t start = pos_;
    pos_ += 2;
    if (!std::isalnum(static_cast<unsigned char>(Peek())) && Peek() != '_') return Fail("bad blank node");
    while (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '_' || Peek() == '-' || Peek() == '.') ++pos_;
    if (doc_[pos_ - 1] == '.') --pos_;
    out.assign(doc_.substr(start, pos_ - start));
    return true;
  }

  bool Subject(std::string &out) {
    if (Peek() == '<') return Iri(out);
    if (doc_.substr(pos_, 2) == "_:") return Blank(out);
    return Fail("expected subject");
  }

  bool Literal(std::string &out) {
    size_t start = pos_;
    ++pos_;
    while (Peek() != '"') {
      if (pos_ >= doc_.size() || Peek() == '\n' || Peek() == '\r') return Fail("unterminated literal");
      if (Peek() == '\\') {
        ++pos_;
        char e = Peek();
        if (std::string_view("tbnrf\"'\\").find(e) != std::string_view::npos) {
          ++pos_;
        } else if (e == 'u') {
          ++pos_;
          if (!Hex(4)) return false;
        } else if (e == 'U') {
          ++pos_;
          if (!Hex(8)) return false;
        } else {
          return Fail("bad string escape");
        }
        continue;
      }
      if (!Utf8()) return false;
    }
    ++pos_;
    if (doc_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      std::string datatype;
      if (!Iri(datatype)) return false;
    } else if (Peek() == '@') {
      ++pos_;
      if (!std::isalpha(static_cast<unsigned char>(Peek()))) return Fail("bad language tag");
      while (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '-') ++pos_;
    }
    out.assign(doc_.substr(start, pos_ - start));
    return true;
  }

  bool Object(std::string &out) {
    if (Peek() == '<') return Iri(out);
    if (doc_.substr(pos_, 2) == "_:") return Blank(out);
    if (Peek() == '"') return Literal(out);
    return Fail("expected object");
  }

  std::string_view doc_;
  size_t pos_ = 0;
  std::string error_;
};

inline Result Check(std::string_view doc) { return Checker(doc).Run(); }

}  // namespace ntriples

#endif  // DATAREF_TESTS_NTRIPLES_H_
