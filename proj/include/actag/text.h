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

#ifndef ACTAG_TEXT_H_
#define ACTAG_TEXT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace actag {

std::string_view trim(std::string_view s);

// Splits on '\n'; a trailing '\r' is stripped from each line. A final empty
// segment after the last newline is dropped.
std::vector<std::string_view> split_lines(std::string_view text);

// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_whitespace(std::string_view s);

// One entry per non-blank line; lines whose first non-blank character is '#'
// are comments. Used for the multiword and abbreviation lists.
std::vector<std::string> parse_list(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace actag

#endif  // ACTAG_TEXT_H_
