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

// Tone-digit pinyin syllabification against a bundled syllabary.
//
// Input is a sequence of syllables, each followed by a tone digit 1-5
// (5 = neutral), optionally separated by spaces or apostrophes. `v` and
// `ü` both spell the front rounded vowel. A trailing `r` before the tone
// digit marks erhua. `#1`..`#3` after a syllable set its prosodic break.

#ifndef PHONFRONT_PINYIN_HPP_
#define PHONFRONT_PINYIN_HPP_

#include <array>
#include <cctype>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

inline constexpr std::string_view kUmlautU = "\xC3\xBC";  // ü

// The 21 standard initials; two-letter ones first for longest match.
inline constexpr std::array<std::string_view, 21> kPinyinInitials = {
    "zh", "ch", "sh", "b", "p", "m", "f", "d", "t", "n", "l",
    "g",  "k",  "h",  "j", "q", "x", "r", "z", "c", "s"};

inline bool is_jqx(std::string_view initial) {
  return initial == "j" || initial == "q" || initial == "x";
}

inline std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

struct PinyinSyllable {
  std::optional<std::string> initial;
  std::string final;  // ü-normalised: ju -> (j, ü)
  int tone = 5;
  bool erhua = false;
  int break_after = 0;

  // Toneless spelling as in the syllabary (ju, lü, zhi).
  std::string spelling() const {
    std::string fin = final;
    if (initial && is_jqx(*initial)) fin = replace_all(fin, kUmlautU, "u");
    return initial.value_or("") + fin;
  }

  friend bool operator==(const PinyinSyllable&, const PinyinSyllable&) = default;
};

/// Splits a syllabary spelling into initial and ü-normalised final.
inline PinyinSyllable split_spelling(std::string_view spelling) {
  PinyinSyllable syl;
  std::string_view rest = spelling;
  for (std::string_view ini : kPinyinInitials) {
    if (spelling.substr(0, ini.size()) == ini && spelling.size() > ini.size()) {
      syl.initial = std::string(ini);
      rest = spelling.substr(ini.size());
      break;
    }
  }
  syl.final = std::string(rest);
  if (syl.initial && is_jqx(*syl.initial) && !syl.final.empty() && syl.final[0] == 'u') {
    syl.final = std::string(kUmlautU) + syl.final.substr(1);
  }
  return syl;
}

class Syllabary {
 public:
  Syllabary() = default;

  static Syllabary parse(std::istream& in, std::string_view source = "syllabary") {
    Syllabary s;
    for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 1 || f[0].empty()) {
        throw Error(ErrorCode::kSchema, where + ": expected one syllable per line");
      }
      std::string syl(f[0]);
      for (std::size_t i = 0; i < syl.size(); ++i) {
        bool ascii = syl[i] >= 'a' && syl[i] <= 'z';
        bool umlaut = syl.compare(i, kUmlautU.size(), kUmlautU) == 0;
        if (!ascii && !umlaut) {
          throw Error(ErrorCode::kSchema, where + ": '" + syl + "' has a non-pinyin character");
        }
        if (umlaut) i += kUmlautU.size() - 1;
      }
      if (!s.set_.insert(syl).second) {
        throw Error(ErrorCode::kSchema, where + ": duplicate syllable '" + syl + "'");
      }
      s.list_.push_back(std::move(syl));
    });
    return s;
  }

  static Syllabary load(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse(in, path.filename().string());
  }

  bool contains(std::string_view spelling) const { return set_.count(spelling) > 0; }
  const std::vector<std::string>& syllables() const { return list_; }
  std::size_t size() const { return list_.size(); }

 private:
  std::set<std::string, std::less<>> set_;
  std::vector<std::string> list_;
};

namespace detail {

struct PinyinUnit {
  std::string text;    // one normalised letter ("a".."z" or "ü")
  std::size_t offset;  // byte offset in the input
};

// Letter runs are the stretches between separators, digits and markers.
inline std::vector<PinyinUnit> read_letter_run(std::string_view text, std::size_t& pos) {
  std::vector<PinyinUnit> run;
  while (pos < text.size()) {
    auto c = static_cast<unsigned char>(text[pos]);
    if (std::isalpha(c)) {
      char lower = static_cast<char>(std::tolower(c));
      run.push_back({lower == 'v' ? std::string(kUmlautU) : std::string(1, lower), pos});
      ++pos;
    } else if (text.compare(pos, 2, "\xC3\xBC") == 0 || text.compare(pos, 2, "\xC3\x9C") == 0) {
      run.push_back({std::string(kUmlautU), pos});
      pos += 2;
    } else if (c >= 0x80) {
      throw Error(ErrorCode::kIllegalSyllable,
                  "unsupported character at byte " + std::to_string(pos) +
                      " (tone diacritics are not accepted; write tone digits 1-5)",
                  pos);
    } else {
      break;
    }
  }
  return run;
}

inline std::string concat(const std::vector<PinyinUnit>& run, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) out += run[i].text;
  return out;
}

// Every way to cover run[begin..) with syllables, the last optionally
// followed by an erhua r. Stops at the first full segmentation.
inline bool segment_run(const std::vector<PinyinUnit>& run, std::size_t begin,
                        const Syllabary& syllabary, std::vector<std::string>& parts) {
  if (begin == run.size()) return !parts.empty();
  if (!parts.empty() && begin + 1 == run.size() && run[begin].text == "r") return true;
  for (std::size_t end = run.size(); end > begin; --end) {
    std::string cand = concat(run, begin, end);
    if (!syllabary.contains(cand)) continue;
    parts.push_back(cand);
    if (segment_run(run, end, syllabary, parts)) return true;
    parts.pop_back();
  }
  return false;
}

}  // namespace detail

/// Greedy longest-match syllabification. Errors carry the byte offset of
/// the offending syllable.
inline std::vector<PinyinSyllable> parse_pinyin(std::string_view text, const Syllabary& syllabary) {
  std::vector<PinyinSyllable> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (is_space(c) || c == '\'') {
      ++pos;
      continue;
    }
    if (c == '#') {
      if (pos + 1 >= text.size() || text[pos + 1] < '1' || text[pos + 1] > '3') {
        throw Error(ErrorCode::kIllegalSyllable,
                    "prosody marker at byte " + std::to_string(pos) + " must be #1, #2 or #3", pos);
      }
      if (out.empty()) {
        throw Error(ErrorCode::kIllegalSyllable,
                    "prosody marker at byte " + std::to_string(pos) + " has no preceding syllable",
                    pos);
      }
      out.back().break_after = text[pos + 1] - '0';
      pos += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kIllegalSyllable,
                  "tone digit at byte " + std::to_string(pos) + " has no syllable", pos);
    }
    const std::size_t start = pos;
    auto run = detail::read_letter_run(text, pos);
    if (run.empty()) {
      throw Error(ErrorCode::kIllegalSyllable,
                  "unexpected character '" + std::string(1, c) + "' at byte " +
                      std::to_string(start),
                  start);
    }

    std::size_t best = 0;
    for (std::size_t k = run.size(); k > 0; --k) {
      if (syllabary.contains(detail::concat(run, 0, k))) {
        best = k;
        break;
      }
    }
    const std::string whole = detail::concat(run, 0, run.size());
    bool erhua = best > 0 && best + 1 == run.size() && run[best].text == "r";
    bool covered = best > 0 && (best == run.size() || erhua);
    bool has_digit = pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));

    if (covered && has_digit) {
      int tone = text[pos] - '0';
      if (tone < 1 || tone > 5) {
        throw Error(ErrorCode::kIllegalSyllable,
                    "'" + whole + text[pos] + "' at byte " + std::to_string(start) +
                        ": tone must be 1-5",
                    start);
      }
      PinyinSyllable syl = split_spelling(detail::concat(run, 0, best));
      syl.tone = tone;
      syl.erhua = erhua;
      out.push_back(std::move(syl));
      ++pos;
      continue;
    }
    if (covered) {
      throw Error(ErrorCode::kIllegalSyllable,
                  "'" + whole + "' at byte " + std::to_string(start) + " lacks a tone digit 1-5",
                  start);
    }
    std::vector<std::string> parts;
    if (detail::segment_run(run, 0, syllabary, parts) && parts.size() > 1) {
      throw Error(ErrorCode::kAmbiguousSegmentation,
                  "'" + whole + "' at byte " + std::to_string(start) + " only segments as " +
                      join(parts, "|") + " with missing tone digits",
                  start);
    }
    throw Error(ErrorCode::kIllegalSyllable,
                "'" + whole + "' at byte " + std::to_string(start) + " is not a legal syllable",
                start);
  }
  return out;
}

// Inverse of parse_pinyin at syllable granularity; ü is written as v.
inline std::string format_pinyin(const std::vector<PinyinSyllable>& syllables) {
  std::string out;
  for (const auto& syl : syllables) {
    if (!out.empty()) out += ' ';
    out += replace_all(syl.spelling(), kUmlautU, "v");
    if (syl.erhua) out += 'r';
    out += static_cast<char>('0' + syl.tone);
    if (syl.break_after > 0) out += " #" + std::to_string(syl.break_after);
  }
  return out;
}

}  // namespace phonfront

#endif  // PHONFRONT_PINYIN_HPP_
