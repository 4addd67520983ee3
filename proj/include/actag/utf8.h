// Copyright 2026 The actag Authors.
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

#ifndef ACTAG_UTF8_H_
#define ACTAG_UTF8_H_

// Minimal UTF-8 helpers. Case mapping covers Latin-1, Latin Extended-A,
// basic Greek and Cyrillic, which is all the tagger's languages need.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace actag::utf8 {

struct Decoded {
  std::u32string chars;
  // offsets[i] is the byte offset of chars[i]; offsets.back() == input size.
  std::vector<std::size_t> offsets;
};

// Invalid sequences decode to U+FFFD, one per offending byte.
Decoded decode_with_offsets(std::string_view text);
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view chars);
void append(std::string& out, char32_t c);

char32_t to_lower(char32_t c);
bool is_upper(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_space(char32_t c);
inline bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

std::string lowercase(std::string_view text);
std::size_t length(std::string_view text);

}  // namespace actag::utf8

#endif  // ACTAG_UTF8_H_
