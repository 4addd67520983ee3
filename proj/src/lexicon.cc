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

#include "actag/lexicon.h"

#include <vector>

#include <fmt/format.h>

#include "actag/error.h"
#include "actag/text.h"
#include "actag/utf8.h"

namespace actag {

void Lexicon::insert(std::string_view form, const AmbiguityClass& cls) {
  std::string key = utf8::lowercase(form);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), cls);
    return;
  }
  std::vector<Tag> merged(it->second.tags().begin(), it->second.tags().end());
  merged.insert(merged.end(), cls.tags().begin(), cls.tags().end());
  it->second = AmbiguityClass(std::move(merged));
}

const AmbiguityClass* Lexicon::lookup(std::string_view token) const {
  if (auto it = entries_.find(token); it != entries_.end()) return &it->second;
  if (auto it = entries_.find(utf8::lowercase(token)); it != entries_.end()) {
    return &it->second;
  }
  return nullptr;
}

Lexicon parse_lexicon(std::string_view text, const Tagset& tagset) {
  Lexicon lexicon;
  std::size_t lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError(fmt::format("lexicon line {}: expected form<TAB>tags", lineno));
    }
    const auto form = trim(line.substr(0, tab));
    if (form.empty()) throw FormatError(fmt::format("lexicon line {}: empty form", lineno));
    const auto tags = split_whitespace(line.substr(tab + 1));
    if (tags.empty()) {
      throw FormatError(fmt::format("lexicon line {}: no tags for '{}'", lineno, form));
    }
    try {
      lexicon.insert(form, tagset.make_class(std::span<const std::string_view>(tags)));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("lexicon line {}: {}", lineno, e.what()));
    }
  }
  return lexicon;
}

}  // namespace actag
