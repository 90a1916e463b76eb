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


#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "phonfront/arpabet.hpp"
#include "test_support.hpp"

namespace phonfront {
namespace {

using testing::shared_resources;

SegmentSequence en(std::string_view text) {
  return parse_arpabet(text, shared_resources().arpabet, shared_resources().en);
}

std::vector<std::string> phonemes(const SegmentSequence& seq) {
  std::vector<std::string> out;
  for (const auto& s : seq.segments) out.push_back(s.phoneme);
  return out;
}

TEST(Arpabet, HelloExample) {
  const auto seq = en("HH AH0 L OW1");
  EXPECT_EQ(phonemes(seq), (std::vector<std::string>{"h", "ə", "l", "o"}));
  EXPECT_EQ(seq[1].stress, 0);
  EXPECT_EQ(seq[3].stress, 1);
  EXPECT_FALSE(seq[0].stress.has_value());
  EXPECT_FALSE(seq[2].stress.has_value());
  for (const auto& s : seq.segments) {
    EXPECT_EQ(s.language, Language::kEnglish);
    EXPECT_FALSE(s.tone.has_value());
  }
}

TEST(Arpabet, EmptyInput) {
  EXPECT_TRUE(en("").empty());
  EXPECT_TRUE(en("   \t ").empty());
}

TEST(Arpabet, DiphthongsExpandToNucleusAndGlide) {
  const auto ay = en("AY1");
  EXPECT_EQ(phonemes(ay), (std::vector<std::string>{"ɑ", "j"}));
  EXPECT_EQ(ay[0].stress, 1);
  EXPECT_FALSE(ay[1].stress.has_value());
  EXPECT_EQ(phonemes(en("AW2")), (std::vector<std::string>{"ɑ", "w"}));
  EXPECT_EQ(phonemes(en("OY0")), (std::vector<std::string>{"ɔ", "j"}));
  EXPECT_EQ(shared_resources().en.at("j").kind(), PhonemeKind::kConsonant);
}

TEST(Arpabet, TenseMonophthongs) {
  EXPECT_EQ(phonemes(en("EY1 OW2")), (std::vector<std::string>{"e", "o"}));
}

TEST(Arpabet, StressQualifiedRows) {
  EXPECT_EQ(phonemes(en("AH0 AH1 AH2 AH")), (std::vector<std::string>{"ə", "ʌ", "ʌ", "ʌ"}));
  EXPECT_EQ(phonemes(en("ER0 ER1")), (std::vector<std::string>{"ɜ", "ɝ"}));
}

TEST(Arpabet, CaseInsensitiveLabels) { EXPECT_EQ(phonemes(en("hh ah0")), (std::vector<std::string>{"h", "ə"})); }

TEST(Arpabet, UnknownTokenCarriesPosition) {
  try {
    (void)en("HH XX1 L");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownToken);
    EXPECT_EQ(e.position(), 1u);
  }
}

TEST(Arpabet, MalformedStress) {
  for (const char* bad : {"AH3", "AH12", "K1", "IY9"}) {
    try {
      (void)en(std::string("HH ") + bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedStress) << bad;
      EXPECT_EQ(e.position(), 1u) << bad;
    }
  }
}

TEST(Arpabet, TrailingJunkIsUnknownToken) {
  for (const char* bad : {"AH-1", "AHx", "1", "@"}) {
    try {
      (void)en(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnknownToken) << bad;
    }
  }
}

TEST(Arpabet, ProsodyMarkers) {
  const auto seq = en("HH AH0 #1 L OW1 #3");
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq[1].prosody_break_after, 1);
  EXPECT_EQ(seq[3].prosody_break_after, 3);
  EXPECT_EQ(seq[0].prosody_break_after, 0);
  EXPECT_THROW((void)en("#1 HH"), Error);
  EXPECT_THROW((void)en("HH #4"), Error);
}

// Every CMU label has exactly one entry family and resolves into the inventory.
TEST(ArpabetTable, CoversCmuSet) {
  const std::vector<std::string> cmu = {"AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
                                        "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
                                        "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};
  EXPECT_EQ(shared_resources().arpabet.labels(), cmu);
  EXPECT_TRUE(shared_resources().arpabet.check_against(shared_resources().en).empty());
  for (const auto& label : cmu) {
    for (std::optional<int> s : {std::optional<int>{}, std::optional<int>{0}, std::optional<int>{1}}) {
      const ArpabetEntry* e = shared_resources().arpabet.resolve(label, s);
      ASSERT_NE(e, nullptr) << label;
      for (const auto& p : e->ipa) EXPECT_NE(shared_resources().en.find(p), nullptr) << label;
    }
  }
}

TEST(ArpabetTable, VowelLabelsAreVocalic) {
  const auto& t = shared_resources().arpabet;
  for (const char* v : {"AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH", "IY", "OW", "OY", "UH", "UW"}) {
    EXPECT_TRUE(t.is_vowel_label(v, shared_resources().en)) << v;
  }
  for (const char* c : {"B", "CH", "HH", "R", "W", "Y", "NG"}) EXPECT_FALSE(t.is_vowel_label(c, shared_resources().en)) << c;
}

TEST(ArpabetTable, SchemaErrors) {
  for (const char* bad : {"AA\tA\n", "aa\tA\tɑ\n", "AW\tA\tɑ w\n", "AA\tA\tɑ\nAA\tA\tɑ\n"}) {
    std::istringstream in(bad);
    try {
      (void)ArpabetTable::parse(in);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSchema);
    }
  }
}

// Random ARPABET strings only ever produce inventory phonemes, and stress
// appears only on vocalic segments.
TEST(ArpabetProperty, OutputStaysInInventory) {
  const auto labels = shared_resources().arpabet.labels();
  std::mt19937 rng(5);
  for (int n = 0; n < 1000; ++n) {
    std::string text;
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      const std::string& l = labels[rng() % labels.size()];
      text += l;
      if (shared_resources().arpabet.is_vowel_label(l, shared_resources().en)) text += std::to_string(rng() % 3);
      text += ' ';
    }
    const auto seq = en(text);
    for (const auto& s : seq.segments) {
      const Phoneme& p = shared_resources().en.at(s.phoneme);
      if (s.stress) {
        EXPECT_EQ(p.kind(), PhonemeKind::kVowel) << text;
      }
      EXPECT_FALSE(s.tone.has_value());
    }
  }
}

}  // namespace
}  // namespace phonfront
