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

#include "dataref/text.h"

#include <regex>

namespace dataref {

char32_t DecodeUtf8(std::string_view text, size_t &pos) {
  auto byte = [&](size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra;
  char32_t ch;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    ch = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    ch = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    ch = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    if (pos + i >= text.size() || (byte(pos + i) & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    ch = (ch << 6) | (byte(pos + i) & 0x3F);
  }
  pos += extra + 1;
  return ch;
}

void AppendUtf8(std::string &out, char32_t ch) {
  if (ch < 0x80) {
    out.push_back(static_cast<char>(ch));
  } else if (ch < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else if (ch < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  }
}

namespace {

// Latin Extended-A alternates upper/lower case pairs, with the parity
// flipping in U+0139..U+0148 and U+0179..U+017E.
bool ExtendedAUpper(char32_t ch) {
  if (ch == 0x0138 || ch == 0x0149 || ch == 0x017F) return false;
  if (ch == 0x0178) return true;
  if ((ch >= 0x0139 && ch <= 0x0148) || (ch >= 0x0179 && ch <= 0x017E)) {
    return ch % 2 == 1;
  }
  return ch % 2 == 0;
}

bool InPunctuationBlock(char32_t ch) {
  return (ch >= 0x00A0 && ch <= 0x00BF) || ch == 0x00D7 || ch == 0x00F7 ||
         (ch >= 0x2000 && ch <= 0x2BFF) || (ch >= 0x3000 && ch <= 0x303F) ||
         (ch >= 0xFE30 && ch <= 0xFE4F) || (ch >= 0xFF00 && ch <= 0xFF0F) ||
         (ch >= 0xFF1A && ch <= 0xFF20) || ch == 0xFEFF || ch == 0xFFFD;
}

}  // namespace

bool IsUpper(char32_t ch) {
  if (ch < 0x80) return ch >= 'A' && ch <= 'Z';
  if (ch >= 0x00C0 && ch <= 0x00DE) return ch != 0x00D7;
  if (ch >= 0x0100 && ch <= 0x017F) return ExtendedAUpper(ch);
  if (ch >= 0x0391 && ch <= 0x03A9) return ch != 0x03A2;
  if (ch >= 0x0400 && ch <= 0x042F) return true;
  return false;
}

bool IsLower(char32_t ch) {
  if (ch < 0x80) return ch >= 'a' && ch <= 'z';
  if (ch >= 0x00DF && ch <= 0x00FF) return ch != 0x00F7;
  if (ch >= 0x0100 && ch <= 0x017F) return !ExtendedAUpper(ch);
  if (ch >= 0x03B1 && ch <= 0x03C9) return true;
  if (ch >= 0x0430 && ch <= 0x045F) return true;
  return false;
}

bool IsLetter(char32_t ch) {
  if (IsUpper(ch) || IsLower(ch)) return true;
  if (ch < 0x0100) return false;
  return !InPunctuationBlock(ch);
}

bool IsDigit(char32_t ch) { return ch >= '0' && ch <= '9'; }

bool IsAlnum(char32_t ch) { return IsLetter(ch) || IsDigit(ch); }

bool IsSpace(char32_t ch) {
  switch (ch) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return ch >= 0x2000 && ch <= 0x200A;
  }
}

char32_t ToLower(char32_t ch) {
  if (!IsUpper(ch)) return ch;
  if (ch < 0x80 || (ch >= 0x00C0 && ch <= 0x00DE)) return ch + 0x20;
  if (ch == 0x0178) return 0x00FF;
  if (ch >= 0x0100 && ch <= 0x017F) return ch + 1;
  if (ch >= 0x0391 && ch <= 0x03A9) return ch + 0x20;
  if (ch >= 0x0400 && ch <= 0x040F) return ch + 0x50;
  if (ch >= 0x0410 && ch <= 0x042F) return ch + 0x20;
  return ch;
}

std::string FoldCase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    size_t start = pos;
    char32_t ch = DecodeUtf8(text, pos);
    char32_t lower = ToLower(ch);
    std::string encoded;
    AppendUtf8(encoded, lower);
    if (lower != ch && encoded.size() == pos - start) {
      out += encoded;
    } else {
      out.append(text.substr(start, pos - start));
    }
  }
  return out;
}

bool IsAllCaps(std::string_view text) {
  bool cased = false;
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t ch = DecodeUtf8(text, pos);
    if (IsLower(ch)) return false;
    if (IsUpper(ch)) cased = true;
  }
  return cased;
}

bool IsLowercaseAfterFirst(std::string_view text) {
  size_t pos = 0;
  if (!text.empty()) DecodeUtf8(text, pos);
  while (pos < text.size()) {
    if (IsUpper(DecodeUtf8(text, pos))) return false;
  }
  return true;
}

bool HasUppercaseAfterFirst(std::string_view text) {
  return !IsLowercaseAfterFirst(text);
}

bool IsRomanNumeral(std::string_view text) {
  static const std::regex kRoman(
      "M{0,3}(CM|CD|D?C{0,3})(XC|XL|L?X{0,3})(IX|IV|V?I{0,3})");
  return !text.empty() &&
         std::regex_match(text.begin(), text.end(), kRoman);
}

bool IsDigitsAndPunctuation(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    if (IsLetter(DecodeUtf8(text, pos))) return false;
  }
  return true;
}

bool StartsWithDigit(std::string_view text) {
  return !text.empty() && text[0] >= '0' && text[0] <= '9';
}

bool IsAbbreviationPunct(char32_t ch) {
  return ch == '.' || ch == '-' || ch == '/' || ch == '*' || ch == '&';
}

namespace {

bool Strippable(char32_t ch) {
  return !IsAlnum(ch) && !IsAbbreviationPunct(ch);
}

// Returns the byte offset just past the last code point of `text`.
size_t LastCodePointStart(std::string_view text) {
  size_t i = text.size();
  do {
    --i;
  } while (i > 0 && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80);
  return i;
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t start = pos;
    char32_t ch = DecodeUtf8(text, pos);
    if (IsSpace(ch)) continue;
    size_t end = pos;
    while (pos < text.size()) {
      size_t here = pos;
      if (IsSpace(DecodeUtf8(text, pos))) {
        pos = here;
        break;
      }
      end = pos;
    }
    // Strip leading punctuation.
    while (start < end) {
      size_t next = start;
      if (!Strippable(DecodeUtf8(text.substr(0, end), next))) break;
      start = next;
    }
    // Strip trailing punctuation.
    while (start < end) {
      size_t last = start + LastCodePointStart(text.substr(start, end - start));
      size_t probe = last;
      if (!Strippable(DecodeUtf8(text.substr(0, end), probe))) break;
      end = last;
    }
    std::string_view word = text.substr(start, end - start);
    if (word.size() > 1 && word.back() == '.' &&
        word.find('.') == word.size() - 1) {
      word.remove_suffix(1);
    }
    if (!word.empty()) tokens.push_back({word, start});
  }
  return tokens;
}

std::vector<std::string_view> IndexTokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  size_t pos = 0;
  size_t start = 0;
  auto flush = [&](size_t end) {
    if (end > start) tokens.push_back(text.substr(start, end - start));
  };
  while (pos < text.size()) {
    size_t here = pos;
    char32_t ch = DecodeUtf8(text, pos);
    bool delim = IsSpace(ch) || ch == ':' || ch == ',' || ch == ';' ||
                 ch == '(' || ch == ')' || ch == '[' || ch == ']';
    if (delim) {
      flush(here);
      start = pos;
    }
  }
  flush(text.size());
  return tokens;
}

std::vector<int> ExtractYears(std::string_view text) {
  std::vector<int> years;
  auto digit = [&](size_t i) { return text[i] >= '0' && text[i] <= '9'; };
  size_t i = 0;
  while (i < text.size()) {
    if (!digit(i)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && digit(j)) ++j;
    if (j - i == 4) {
      int value = std::stoi(std::string(text.substr(i, 4)));
      if (value >= 1900 && value <= 2099) years.push_back(value);
    }
    i = j;
  }
  return years;
}

std::string_view Trim(std::string_view text) {
  size_t start = 0;
  while (start < text.size()) {
    size_t next = start;
    if (!IsSpace(DecodeUtf8(text, next))) break;
    start = next;
  }
  size_t end = text.size();
  while (end > start) {
    size_t last = start + LastCodePointStart(text.substr(start, end - start));
    size_t probe = last;
    if (!IsSpace(DecodeUtf8(text, probe))) break;
    end = last;
  }
  return text.substr(start, end - start);
}

}  // namespace dataref
