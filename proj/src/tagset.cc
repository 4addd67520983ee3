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

#include "actag/tagset.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "actag/error.h"
#include "actag/guesser.h"
#include "actag/lexicon.h"
#include "actag/text.h"

namespace actag {
namespace {

constexpr std::string_view kOpenPrefix = "OPEN:";

bool is_blank(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

Tag::Tag(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw FormatError("empty tag name");
  for (char c : name_) {
    if (is_blank(c)) throw FormatError(fmt::format("tag '{}' contains whitespace", name_));
    if (c == '_') throw FormatError(fmt::format("tag '{}' contains '_'", name_));
  }
}

AmbiguityClass::AmbiguityClass(std::vector<Tag> tags) : tags_(std::move(tags)) {
  if (tags_.empty()) throw FormatError("empty ambiguity class");
  std::sort(tags_.begin(), tags_.end());
  tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());
}

bool AmbiguityClass::contains(const Tag& tag) const {
  return std::binary_search(tags_.begin(), tags_.end(), tag);
}

bool AmbiguityClass::is_subset_of(const AmbiguityClass& other) const {
  return std::includes(other.tags_.begin(), other.tags_.end(), tags_.begin(),
                       tags_.end());
}

std::string AmbiguityClass::to_string() const {
  std::string out;
  for (const auto& t : tags_) {
    if (!out.empty()) out.push_back(' ');
    out += t.name();
  }
  return out;
}

Tagset::Tagset(std::vector<Tag> tags, AmbiguityClass open_class)
    : tags_(std::move(tags)), open_class_(std::move(open_class)) {
  if (tags_.empty()) throw FormatError("empty tagset");
  std::sort(tags_.begin(), tags_.end());
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (!index_.emplace(tags_[i].name(), i).second) {
      throw FormatError(fmt::format("duplicate tag '{}'", tags_[i].name()));
    }
  }
  for (const auto& t : open_class_.tags()) {
    if (!index_.contains(t.name())) {
      throw FormatError(fmt::format("open-class tag '{}' is not declared", t.name()));
    }
  }
}

std::optional<TagId> Tagset::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AmbiguityClass Tagset::make_class(std::span<const std::string_view> names) const {
  std::vector<Tag> tags;
  tags.reserve(names.size());
  for (auto n : names) {
    if (!contains(n)) throw FormatError(fmt::format("unknown tag '{}'", n));
    tags.emplace_back(std::string(n));
  }
  return AmbiguityClass(std::move(tags));
}

AmbiguityClass Tagset::make_class(std::span<const std::string> names) const {
  std::vector<std::string_view> views(names.begin(), names.end());
  return make_class(std::span<const std::string_view>(views));
}

AmbiguityClass Tagset::make_class(std::span<const Tag> tags) const {
  for (const auto& t : tags) {
    if (!contains(t.name())) throw FormatError(fmt::format("unknown tag '{}'", t.name()));
  }
  return AmbiguityClass(std::vector<Tag>(tags.begin(), tags.end()));
}

AmbiguityClass Tagset::parse_class(std::string_view names) const {
  auto parts = split_whitespace(names);
  return make_class(std::span<const std::string_view>(parts));
}

std::uint64_t Tagset::fingerprint() const {
  // FNV-1a over "tag\n...OPEN:tag tag".
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& t : tags_) {
    mix(t.name());
    mix("\n");
  }
  mix(kOpenPrefix);
  mix(open_class_.to_string());
  return h;
}

Tagset parse_tagset(std::string_view text) {
  std::vector<Tag> tags;
  std::optional<std::string_view> open_line;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with(kOpenPrefix)) {
      if (open_line) throw FormatError(fmt::format("line {}: second OPEN line", lineno));
      open_line = line.substr(kOpenPrefix.size());
      continue;
    }
    try {
      tags.emplace_back(std::string(line));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  if (tags.empty()) throw FormatError("empty tagset");
  if (!open_line) throw FormatError("missing OPEN line");
  std::vector<Tag> open;
  for (auto name : split_whitespace(*open_line)) open.emplace_back(std::string(name));
  if (open.empty()) throw FormatError("OPEN line lists no tags");
  return Tagset(std::move(tags), AmbiguityClass(std::move(open)));
}

ClassRegistry::ClassRegistry(std::vector<AmbiguityClass> classes,
                             AmbiguityClass open_class)
    : classes_(std::move(classes)), open_class_(std::move(open_class)) {
  classes_.push_back(open_class_);
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
}

std::optional<std::size_t> ClassRegistry::index_of(const AmbiguityClass& cls) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), cls);
  if (it == classes_.end() || *it != cls) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

ClassRegistry registry_from_lexicon(const Lexicon& lexicon, const Tagset& tagset) {
  std::set<AmbiguityClass> classes;
  for (const auto& [form, cls] : lexicon.entries()) {
    classes.insert(cls);
    for (const auto& t : cls.tags()) classes.insert(AmbiguityClass({t}));
  }
  return ClassRegistry({classes.begin(), classes.end()}, tagset.open_class());
}

ClassRegistry merge_manual_classes(const ClassRegistry& registry,
                                   const SuffixTable& suffixes) {
  std::vector<AmbiguityClass> classes(registry.classes().begin(),
                                      registry.classes().end());
  for (const auto& [suffix, entry] : suffixes.entries()) {
    if (entry.provenance == Provenance::kManual) classes.push_back(entry.cls);
  }
  return ClassRegistry(std::move(classes), registry.open_class());
}

std::string serialize_registry(const ClassRegistry& registry) {
  std::string out = fmt::format("{} {}\n", kOpenPrefix, registry.open_class().to_string());
  for (const auto& cls : registry.classes()) {
    out += cls.to_string();
    out.push_back('\n');
  }
  return out;
}

ClassRegistry parse_registry(std::string_view text, const Tagset& tagset) {
  std::optional<AmbiguityClass> open;
  std::vector<AmbiguityClass> classes;
  for (auto raw : split_lines(text)) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with(kOpenPrefix)) {
      open = tagset.parse_class(line.substr(kOpenPrefix.size()));
      continue;
    }
    classes.push_back(tagset.parse_class(line));
  }
  if (!open) throw FormatError("registry: missing OPEN header");
  return ClassRegistry(std::move(classes), *std::move(open));
}

}  // namespace actag
