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

#ifndef ACTAG_LEXICON_H_
#define ACTAG_LEXICON_H_

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "actag/tagset.h"

namespace actag {

// Word form -> ambiguity class. Keys are stored lowercased.
class Lexicon {
 public:
  using Map = std::map<std::string, AmbiguityClass, std::less<>>;

  // Unions with any class already stored for the (lowercased) form.
  void insert(std::string_view form, const AmbiguityClass& cls);

  // Exact form first, then its lowercased variant. Never falls back to the
  // open class; unknown words are the guesser's job.
  const AmbiguityClass* lookup(std::string_view token) const;

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  Map entries_;
};

// One entry per line: "form<TAB>tag1 tag2 ...". Repeated forms are unioned.
Lexicon parse_lexicon(std::string_view text, const Tagset& tagset);

}  // namespace actag

#endif  // ACTAG_LEXICON_H_
