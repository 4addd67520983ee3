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

#ifndef ACTAG_TAGSET_H_
#define ACTAG_TAGSET_H_

// Tags, ambiguity classes and the class registry.
//
// An ambiguity class is the set of tags a word form may bear; it is the
// observation symbol of the tagging HMM. The registry is the closed set of
// classes the model has emission parameters for: every singleton of a tag
// seen in the lexicon, every class of a lexicon form, the open class, and
// (in the mixed model) every class a linguist wrote into the suffix file.

#include <compare>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace actag {

class Lexicon;
class SuffixTable;

using TagId = std::size_t;

// A part-of-speech symbol. Non-empty, no whitespace, no underscore (the
// underscore separates word and tag in tagged output).
class Tag {
 public:
  explicit Tag(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const Tag&, const Tag&) = default;
  friend auto operator<=>(const Tag&, const Tag&) = default;

 private:
  std::string name_;
};

// Canonical (sorted by name, duplicate-free), non-empty set of tags.
class AmbiguityClass {
 public:
  // Sorts and deduplicates. Throws FormatError on an empty sequence.
  explicit AmbiguityClass(std::vector<Tag> tags);

  std::span<const Tag> tags() const { return tags_; }
  std::size_t size() const { return tags_.size(); }
  bool contains(const Tag& tag) const;
  bool is_subset_of(const AmbiguityClass& other) const;

  // Tags joined by single spaces, in canonical order.
  std::string to_string() const;

  friend bool operator==(const AmbiguityClass&, const AmbiguityClass&) = default;
  friend auto operator<=>(const AmbiguityClass&, const AmbiguityClass&) = default;

 private:
  std::vector<Tag> tags_;
};

// The closed set of tags plus the configured open (default) class. Tags are
// held in name order, so TagId order is the canonical tag order.
class Tagset {
 public:
  // Throws FormatError on duplicates, an empty tag list, or an open class
  // that names undeclared tags.
  Tagset(std::vector<Tag> tags, AmbiguityClass open_class);

  std::size_t size() const { return tags_.size(); }
  const Tag& tag(TagId id) const { return tags_[id]; }
  std::span<const Tag> tags() const { return tags_; }
  const AmbiguityClass& open_class() const { return open_class_; }

  std::optional<TagId> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  // Validating constructor for classes: throws FormatError on an empty
  // sequence or a tag that is not declared.
  AmbiguityClass make_class(std::span<const std::string_view> names) const;
  AmbiguityClass make_class(std::span<const std::string> names) const;
  AmbiguityClass make_class(std::span<const Tag> tags) const;
  // Whitespace-separated tag names.
  AmbiguityClass parse_class(std::string_view names) const;

  // Stable 64-bit fingerprint over tag names and open class.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Tagset& a, const Tagset& b) {
    return a.tags_ == b.tags_ && a.open_class_ == b.open_class_;
  }

 private:
  std::vector<Tag> tags_;
  AmbiguityClass open_class_;
  std::unordered_map<std::string, TagId> index_;
};

// Tagset file: one tag per line, '#' comments, exactly one line
// "OPEN: t1 t2 ..." declaring the open class.
Tagset parse_tagset(std::string_view text);

// Classes are kept sorted, so a class's index is stable for a given registry.
class ClassRegistry {
 public:
  // The open class is always a member.
  ClassRegistry(std::vector<AmbiguityClass> classes, AmbiguityClass open_class);

  std::size_t size() const { return classes_.size(); }
  std::span<const AmbiguityClass> classes() const { return classes_; }
  const AmbiguityClass& open_class() const { return open_class_; }
  // Exact-set lookup; subsets and supersets never match.
  std::optional<std::size_t> index_of(const AmbiguityClass& cls) const;
  bool contains(const AmbiguityClass& cls) const { return index_of(cls).has_value(); }

  friend bool operator==(const ClassRegistry&, const ClassRegistry&) = default;

 private:
  std::vector<AmbiguityClass> classes_;
  AmbiguityClass open_class_;
};

// Singletons of every lexicon tag, every lexicon class, and the open class.
ClassRegistry registry_from_lexicon(const Lexicon& lexicon, const Tagset& tagset);

// The mixed-model merge: adds the class of every manual suffix entry.
// Learned entries are ignored. Returns a new registry.
ClassRegistry merge_manual_classes(const ClassRegistry& registry,
                                   const SuffixTable& suffixes);

// "OPEN: ..." header followed by one class per line.
std::string serialize_registry(const ClassRegistry& registry);
ClassRegistry parse_registry(std::string_view text, const Tagset& tagset);

}  // namespace actag

#endif  // ACTAG_TAGSET_H_
