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

#include "actag/guesser.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

#include "actag/error.h"
#include "actag/text.h"
#include "actag/utf8.h"

namespace actag {
namespace {

constexpr std::string_view kLearnedHeader = "# learned";

bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

// Byte offsets where each of the last `limit` characters of `s` starts,
// nearest to the end first.
std::vector<std::size_t> tail_offsets(std::string_view s, std::size_t limit) {
  std::vector<std::size_t> out;
  std::size_t i = s.size();
  while (i > 0 && out.size() < limit) {
    --i;
    while (i > 0 && is_continuation(s[i])) --i;
    out.push_back(i);
  }
  return out;
}

bool has_letter(std::string_view word) {
  for (char32_t c : utf8::decode(word)) {
    if (utf8::is_letter(c)) return true;
  }
  return false;
}

std::string_view category_marker(SuffixCategory c) {
  switch (c) {
    case SuffixCategory::kGeneral: return "# @general";
    case SuffixCategory::kEnclitic: return "# @enclitic";
    case SuffixCategory::kForeign: return "# @foreign";
  }
  return "";
}

}  // namespace

void SuffixTable::insert(SuffixEntry entry) {
  if (entry.suffix.empty()) throw FormatError("empty suffix");
  for (char32_t c : utf8::decode(entry.suffix)) {
    if (utf8::is_space(c)) {
      throw FormatError(fmt::format("suffix '{}' contains whitespace", entry.suffix));
    }
    if (utf8::to_lower(c) != c) {
      throw FormatError(fmt::format("suffix '{}' is not lowercase", entry.suffix));
    }
  }
  const std::size_t len = utf8::length(entry.suffix);
  if (entries_.contains(entry.suffix)) {
    throw FormatError(fmt::format("duplicate suffix '{}'", entry.suffix));
  }
  std::string key = entry.suffix;
  entries_.emplace(std::move(key), std::move(entry));
  max_len_ = std::max(max_len_, len);
}

const SuffixEntry* SuffixTable::find(std::string_view suffix) const {
  auto it = entries_.find(suffix);
  return it == entries_.end() ? nullptr : &it->second;
}

const SuffixEntry* SuffixTable::longest_match(std::string_view word) const {
  if (entries_.empty() || word.empty()) return nullptr;
  const std::string lower = utf8::lowercase(word);
  const std::string_view w = lower;
  const auto offsets = tail_offsets(w, max_len_);
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) {
    if (const auto* e = find(w.substr(*it))) return e;
  }
  return nullptr;
}

SuffixTable load_suffixes(std::string_view text, const Tagset& tagset) {
  SuffixTable table;
  auto provenance = Provenance::kManual;
  auto category = SuffixCategory::kGeneral;
  bool first = true;
  std::size_t lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (first && t == kLearnedHeader) provenance = Provenance::kLearned;
      if (t == "# @general") category = SuffixCategory::kGeneral;
      if (t == "# @enclitic") category = SuffixCategory::kEnclitic;
      if (t == "# @foreign") category = SuffixCategory::kForeign;
      first = false;
      continue;
    }
    first = false;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError(fmt::format("suffix line {}: expected suffix<TAB>tags", lineno));
    }
    const auto tags = split_whitespace(line.substr(tab + 1));
    if (tags.empty()) throw FormatError(fmt::format("suffix line {}: empty class", lineno));
    try {
      table.insert(SuffixEntry{
          .suffix = std::string(trim(line.substr(0, tab))),
          .cls = tagset.make_class(std::span<const std::string_view>(tags)),
          .provenance = provenance,
          .category = category,
      });
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("suffix line {}: {}", lineno, e.what()));
    }
  }
  return table;
}

std::string serialize_suffixes(const SuffixTable& table) {
  const bool learned = std::all_of(
      table.entries().begin(), table.entries().end(),
      [](const auto& kv) { return kv.second.provenance == Provenance::kLearned; });
  std::string out;
  if (learned) out = fmt::format("{}\n", kLearnedHeader);
  for (auto cat : {SuffixCategory::kGeneral, SuffixCategory::kEnclitic,
                   SuffixCategory::kForeign}) {
    bool header = cat == SuffixCategory::kGeneral;
    for (const auto& [suffix, e] : table.entries()) {
      if (e.category != cat) continue;
      if (!header) {
        out += fmt::format("{}\n", category_marker(cat));
        header = true;
      }
      out += fmt::format("{}\t{}\n", suffix, e.cls.to_string());
    }
  }
  return out;
}

SuffixTable train_guesser(std::span<const std::string> corpus_words,
                          const Lexicon& lexicon, const ClassRegistry& registry,
                          const GuesserConfig& config) {
  if (config.suffix_limit == 0) throw Error("suffix limit must be at least 1");

  // Candidate endings with their corpus support.
  std::map<std::string, std::size_t, std::less<>> support;
  for (const auto& raw : corpus_words) {
    if (!has_letter(raw)) continue;
    const std::string w = utf8::lowercase(raw);
    for (std::size_t off : tail_offsets(w, config.suffix_limit)) {
      if (off == 0) break;  // whole word is not a suffix of itself
      ++support[w.substr(off)];
    }
  }

  // Union of lexicon tags per ending, restricted to the candidates.
  std::unordered_map<std::string, std::set<Tag>> tags_by_suffix;
  for (const auto& [form, cls] : lexicon.entries()) {
    for (std::size_t off : tail_offsets(form, config.suffix_limit)) {
      if (off == 0) break;
      auto s = std::string_view(form).substr(off);
      if (!support.contains(s)) continue;
      auto& bucket = tags_by_suffix[std::string(s)];
      bucket.insert(cls.tags().begin(), cls.tags().end());
    }
  }

  const auto& open = registry.open_class();
  SuffixTable table;
  for (const auto& [suffix, count] : support) {
    if (count < config.min_support) continue;
    auto it = tags_by_suffix.find(suffix);
    if (it == tags_by_suffix.end()) continue;
    std::vector<Tag> kept;
    for (const auto& t : it->second) {
      if (open.contains(t)) kept.push_back(t);
    }
    if (kept.empty()) continue;
    AmbiguityClass cls(std::move(kept));
    table.insert(SuffixEntry{
        .suffix = suffix,
        .cls = registry.contains(cls) ? std::move(cls) : open,
        .provenance = Provenance::kLearned,
    });
  }
  return table;
}

AmbiguityClass guess_class(const SuffixTable& table, std::string_view word,
                           const Tagset& tagset) {
  if (const auto* e = table.longest_match(word)) return e->cls;
  return tagset.open_class();
}

SuffixStats suffix_stats(const SuffixTable& table) {
  SuffixStats s;
  for (const auto& [suffix, e] : table.entries()) {
    switch (e.category) {
      case SuffixCategory::kEnclitic:
        ++s.enclitic_suffixes;
        continue;
      case SuffixCategory::kForeign:
        ++s.foreign_suffixes;
        continue;
      case SuffixCategory::kGeneral:
        break;
    }
    ++s.num_suffixes;
    s.total_tags += e.cls.size();
    s.max_suffix_len = std::max(s.max_suffix_len, utf8::length(suffix));
  }
  if (s.num_suffixes > 0) {
    s.tags_per_suffix =
        static_cast<double>(s.total_tags) / static_cast<double>(s.num_suffixes);
  }
  return s;
}

}  // namespace actag
