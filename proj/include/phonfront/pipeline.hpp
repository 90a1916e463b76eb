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

// One input line -> segment sequence, for English, Mandarin or code-mixed
// text. Code-mixed lines prefix tokens with `en:` or `cmn:`; a prefix holds
// until the next one.

#ifndef PHONFRONT_PIPELINE_HPP_
#define PHONFRONT_PIPELINE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonfront/arpabet.hpp"
#include "phonfront/error.hpp"
#include "phonfront/mandarin.hpp"
#include "phonfront/pinyin.hpp"
#include "phonfront/resources.hpp"
#include "phonfront/segment.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

enum class InputLanguage : std::uint8_t { kEnglish, kMandarin, kMixed };

inline std::optional<InputLanguage> input_language_from_name(std::string_view name) {
  if (name == "en") return InputLanguage::kEnglish;
  if (name == "cmn") return InputLanguage::kMandarin;
  if (name == "mixed") return InputLanguage::kMixed;
  return std::nullopt;
}

/// Underlying phonemes, then the surface allophony pass.
inline SegmentSequence transcribe_pinyin(std::string_view text, const Resources& r) {
  SegmentSequence seq;
  for (const auto& syl : parse_pinyin(text, r.syllabary)) {
    seq.append(syllable_to_segments(syl, r.pinyin, r.erhua, r.cmn));
  }
  return apply_allophony(std::move(seq), r.allophones);
}

inline SegmentSequence transcribe_arpabet(std::string_view text, const Resources& r) {
  return parse_arpabet(text, r.arpabet, r.en);
}

namespace detail {

struct LanguageRun {
  Language language;
  std::string text;
};

inline std::vector<LanguageRun> split_mixed(std::string_view line) {
  std::vector<LanguageRun> runs;
  std::optional<Language> current;
  std::size_t index = 0;
  for (std::string_view tok : split_whitespace(line)) {
    std::optional<Language> switch_to;
    if (tok.starts_with("en:")) {
      switch_to = Language::kEnglish;
      tok.remove_prefix(3);
    } else if (tok.starts_with("cmn:")) {
      switch_to = Language::kMandarin;
      tok.remove_prefix(4);
    }
    if (switch_to) {
      if (!current || *current != *switch_to || runs.empty()) runs.push_back({*switch_to, {}});
      current = switch_to;
    } else if (!current) {
      throw Error(ErrorCode::kUnknownToken,
                  "token " + std::to_string(index) + " '" + std::string(tok) +
                      "' precedes any en:/cmn: language prefix",
                  index);
    }
    if (!tok.empty()) {
      if (!runs.back().text.empty()) runs.back().text += ' ';
      runs.back().text += tok;
    }
    ++index;
  }
  return runs;
}

}  // namespace detail

inline SegmentSequence transcribe_line(std::string_view line, InputLanguage lang, const Resources& r) {
  switch (lang) {
    case InputLanguage::kEnglish:
      return transcribe_arpabet(line, r);
    case InputLanguage::kMandarin:
      return transcribe_pinyin(line, r);
    case InputLanguage::kMixed:
      break;
  }
  SegmentSequence seq;
  for (const auto& run : detail::split_mixed(line)) {
    try {
      seq.append(run.language == Language::kEnglish ? transcribe_arpabet(run.text, r)
                                                    : transcribe_pinyin(run.text, r));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(language_tag(run.language)) + " run '" + run.text + "': " + e.message(),
                  e.position());
    }
  }
  return apply_allophony(std::move(seq), r.allophones);
}

}  // namespace phonfront

#endif  // PHONFRONT_PIPELINE_HPP_
