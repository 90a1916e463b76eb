// Copyright (c) 2026 The phonfront Authors.
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

#ifndef PHONFRONT_SEGMENT_HPP_
#define PHONFRONT_SEGMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "phonfront/inventory.hpp"

namespace phonfront {

inline constexpr int kMaxProsodyBreak = 3;

struct Segment {
  Language language = Language::kEnglish;
  std::string phoneme;  // underlying inventory symbol
  std::string surface;  // realised allophone; equals phoneme unless rewritten
  std::optional<int> tone;    // 1..5, Mandarin syllable nuclei only
  std::optional<int> stress;  // 0..2, English vowels only
  int prosody_break_after = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

inline Segment make_segment(Language lang, std::string symbol) {
  Segment s;
  s.language = lang;
  s.phoneme = symbol;
  s.surface = std::move(symbol);
  return s;
}

struct SegmentSequence {
  std::vector<Segment> segments;

  std::size_t size() const { return segments.size(); }
  bool empty() const { return segments.empty(); }
  const Segment& operator[](std::size_t i) const { return segments[i]; }
  Segment& operator[](std::size_t i) { return segments[i]; }

  std::vector<Language> language_tags() const {
    std::vector<Language> tags;
    tags.reserve(segments.size());
    for (const auto& s : segments) tags.push_back(s.language);
    return tags;
  }

  void append(const SegmentSequence& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
  }

  friend bool operator==(const SegmentSequence&, const SegmentSequence&) = default;
};

}  // namespace phonfront

#endif  // PHONFRONT_SEGMENT_HPP_
