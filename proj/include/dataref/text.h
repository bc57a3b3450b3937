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

// Text primitives shared by every pipeline stage: UTF-8 decoding, a small
// case table covering Latin, Greek and Cyrillic, the deterministic word
// tokenizer used for dictionary building and term weighting, and a few
// token classifiers (Roman numerals, years).

#ifndef DATAREF_TEXT_H_
#define DATAREF_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dataref {

// Decodes the code point starting at `pos` and advances `pos` past it.
// Invalid sequences decode to U+FFFD and consume a single byte.
char32_t DecodeUtf8(std::string_view text, size_t &pos);

// Appends the UTF-8 encoding of `ch`.
void AppendUtf8(std::string &out, char32_t ch);

// Code-point classification. Letters outside the covered scripts count as
// uncased letters.
bool IsUpper(char32_t ch);
bool IsLower(char32_t ch);
bool IsLetter(char32_t ch);
bool IsDigit(char32_t ch);
bool IsAlnum(char32_t ch);
bool IsSpace(char32_t ch);
char32_t ToLower(char32_t ch);

// Lowercases `text`. Only mappings that keep the encoded length are applied,
// so byte offsets into the folded string equal offsets into the original.
std::string FoldCase(std::string_view text);

// True if the text has at least one cased letter and every cased letter is
// uppercase. Digits and punctuation are ignored.
bool IsAllCaps(std::string_view text);

// True if every cased letter after the first code point is lowercase.
bool IsLowercaseAfterFirst(std::string_view text);

// True if at least one uppercase letter occurs after the first code point.
bool HasUppercaseAfterFirst(std::string_view text);

// True for canonical uppercase Roman numerals (I, IV, XIV, MCMXC, ...).
bool IsRomanNumeral(std::string_view text);

// True if the text consists only of digits and punctuation (no letters).
bool IsDigitsAndPunctuation(std::string_view text);

bool StartsWithDigit(std::string_view text);

// Punctuation that may appear inside an abbreviation.
bool IsAbbreviationPunct(char32_t ch);

struct Token {
  std::string_view text;
  size_t offset = 0;  // byte offset into the tokenized string
};

// Splits on Unicode whitespace and strips leading/trailing punctuation other
// than . - / * &. A single trailing '.' is also stripped when it is the only
// '.' in the token (sentence-final period). Empty tokens are dropped.
std::vector<Token> Tokenize(std::string_view text);

// Splits on whitespace and the characters : , ; ( ) [ ]. Case is preserved.
std::vector<std::string_view> IndexTokens(std::string_view text);

// Four-digit numbers in 1900..2099 not adjacent to other digits, in order of
// appearance (duplicates kept).
std::vector<int> ExtractYears(std::string_view text);

// Trims Unicode whitespace from both ends.
std::string_view Trim(std::string_view text);

}  // namespace dataref

#endif  // DATAREF_TEXT_H_
