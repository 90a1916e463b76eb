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

#include "phonfront/mandarin.hpp"
#include "phonfront/pipeline.hpp"
#include "test_support.hpp"

namespace phonfront {
namespace {

using testing::shared_resources;

SegmentSequence decompose(std::optional<std::string> initial, std::string final, int tone, bool erhua = false) {
  const auto& r = shared_resources();
  return syllable_to_segments(PinyinSyllable{std::move(initial), std::move(final), tone, erhua, 0}, r.pinyin,
                              r.erhua, r.cmn);
}

std::vector<std::string> phonemes(const SegmentSequence& seq) {
  std::vector<std::string> out;
  for (const auto& s : seq.segments) out.push_back(s.phoneme);
  return out;
}

std::vector<std::string> surfaces(const SegmentSequence& seq) {
  std::vector<std::string> out;
  for (const auto& s : seq.segments) out.push_back(s.surface);
  return out;
}

TEST(Decompose, XiUnderlyingDental) {
  const auto seq = decompose("x", "i", 2);
  EXPECT_EQ(phonemes(seq), (std::vector<std::string>{"s", "i"}));
  EXPECT_FALSE(seq[0].tone.has_value());
  EXPECT_EQ(seq[1].tone, 2);
}

TEST(Decompose, JqxMapToDentals) {
  EXPECT_EQ(phonemes(decompose("j", "i", 1))[0], "ts");
  EXPECT_EQ(phonemes(decompose("q", "i", 1))[0], "tsʰ");
  EXPECT_EQ(phonemes(decompose("x", "i", 1))[0], "s");
}

TEST(Decompose, ZhiRetroflexPlusApical) {
  const auto seq = decompose("zh", "i", 4);
  EXPECT_EQ(phonemes(seq), (std::vector<std::string>{"tʂ", "ʐ"}));
  EXPECT_EQ(shared_resources().cmn.at("ʐ").kind(), PhonemeKind::kConsonant);
  EXPECT_FALSE(seq[0].tone.has_value());
  EXPECT_EQ(seq[1].tone, 4);
}

TEST(Decompose, DentalApical) {
  EXPECT_EQ(phonemes(decompose("s", "i", 1)), (std::vector<std::string>{"s", "ʐ"}));
  EXPECT_EQ(phonemes(decompose("r", "i", 4)), (std::vector<std::string>{"ʐ", "ʐ"}));
}

TEST(Decompose, ErIsOneRhoticVowel) {
  const auto seq = decompose(std::nullopt, "er", 2);
  ASSERT_EQ(seq.size(), 1u);
  const Phoneme& p = shared_resources().cmn.at(seq[0].phoneme);
  EXPECT_EQ(p.kind(), PhonemeKind::kVowel);
  EXPECT_TRUE(p.contrastive.contains(Feature::kRhotic));
  EXPECT_EQ(seq[0].tone, 2);
}

TEST(Decompose, NiHao) {
  SegmentSequence seq = decompose("n", "i", 3);
  seq.append(decompose("h", "ao", 3));
  EXPECT_EQ(phonemes(seq), (std::vector<std::string>{"n", "i", "x", "a", "u"}));
}

TEST(Decompose, ErhuaRhotacisesTheFinal) {
  EXPECT_EQ(phonemes(decompose("h", "ua", 1, true)), (std::vector<std::string>{"x", "u", "a˞"}));
  EXPECT_EQ(phonemes(decompose(std::nullopt, "wan", 2, true)), (std::vector<std::string>{"w", "a˞"}));
  EXPECT_EQ(phonemes(decompose("x", "ing", 4, true)), (std::vector<std::string>{"s", "i", "ə̃˞"}));
  EXPECT_EQ(phonemes(decompose("zh", "i", 1, true)), (std::vector<std::string>{"tʂ", "ə˞"}));
}

TEST(Decompose, GapErrors) {
  try {
    (void)decompose("b", "xyz", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecompositionGap);
  }
  std::istringstream none("");
  const ErhuaRules empty = ErhuaRules::parse(none);
  try {
    (void)syllable_to_segments(PinyinSyllable{"m", "a", 1, true, 0}, shared_resources().pinyin, empty,
                               shared_resources().cmn);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecompositionGap);
  }
}

TEST(Allophony, SBeforeIBecomesAlveoloPalatal) {
  const auto seq = apply_allophony(decompose("x", "i", 2), shared_resources().allophones);
  EXPECT_EQ(surfaces(seq), (std::vector<std::string>{"ɕ", "i"}));
  EXPECT_EQ(phonemes(seq), (std::vector<std::string>{"s", "i"}));
}

TEST(Allophony, SBeforeUUnchanged) {
  const auto seq = apply_allophony(decompose("s", "u", 1), shared_resources().allophones);
  EXPECT_EQ(surfaces(seq), (std::vector<std::string>{"s", "u"}));
}

TEST(Allophony, BeforeY) {
  const auto seq = apply_allophony(decompose("q", "ü", 4), shared_resources().allophones);
  EXPECT_EQ(surfaces(seq), (std::vector<std::string>{"tɕʰ", "y"}));
}

TEST(Allophony, ApicalDoesNotTrigger) {
  const auto seq = apply_allophony(decompose("s", "i", 1), shared_resources().allophones);
  EXPECT_EQ(surfaces(seq), (std::vector<std::string>{"s", "ʐ"}));
}

TEST(Allophony, Idempotent) {
  std::mt19937 rng(23);
  const auto& list = shared_resources().syllabary.syllables();
  for (int n = 0; n < 500; ++n) {
    SegmentSequence seq;
    for (int i = 0; i < 4; ++i) {
      PinyinSyllable s = split_spelling(list[rng() % list.size()]);
      s.tone = 1 + static_cast<int>(rng() % 5);
      seq.append(syllable_to_segments(s, shared_resources().pinyin, shared_resources().erhua, shared_resources().cmn));
    }
    const auto once = apply_allophony(seq, shared_resources().allophones);
    EXPECT_EQ(apply_allophony(once, shared_resources().allophones), once);
  }
}

TEST(Allophony, SurfaceBundlesAreDentalPlusHigh) {
  const auto& r = shared_resources();
  for (const auto& rule : r.allophones.rules()) {
    const Phoneme& dental = r.cmn.at(rule.underlying);
    EXPECT_EQ(rule.surface.contrastive, dental.contrastive | FeatureBundle{Feature::kHigh}) << rule.surface.symbol;
    EXPECT_TRUE(validate_bundle(rule.surface.contrastive).empty());
  }
  EXPECT_TRUE(r.allophones.check_against(r.cmn).empty());
}

// Scans every syllable x tone x erhua variant, plus every ordered pair of
// syllables, and checks complementary distribution of dentals vs
// alveolo-palatals relative to a following /i/ or /y/.
TEST(Allophony, ComplementaryDistributionExhaustive) {
  const auto violations = testing::complementary_distribution_scan(shared_resources());
  EXPECT_TRUE(violations.empty()) << violations.size() << " violations, first: " << violations.front();
}

TEST(Tones, OnlyOnVocalicOrApicalNucleus) {
  const auto& r = shared_resources();
  for (const auto& s : r.syllabary.syllables()) {
    PinyinSyllable syl = split_spelling(s);
    syl.tone = 3;
    const auto seq = syllable_to_segments(syl, r.pinyin, r.erhua, r.cmn);
    bool has_vowel = false;
    for (const auto& seg : seq.segments) has_vowel |= r.cmn.at(seg.phoneme).kind() == PhonemeKind::kVowel;
    std::size_t toned = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const bool vowel = r.cmn.at(seq[i].phoneme).kind() == PhonemeKind::kVowel;
      if (has_vowel) {
        EXPECT_EQ(seq[i].tone.has_value(), vowel) << s;
      } else if (seq[i].tone) {
        EXPECT_EQ(seq[i].phoneme, "ʐ") << s;  // apical nucleus
        EXPECT_EQ(i + 1, seq.size()) << s;
      }
      toned += seq[i].tone.has_value();
      EXPECT_FALSE(seq[i].stress.has_value());
    }
    EXPECT_GE(toned, 1u) << s;
  }
}

TEST(Pipeline, CodeMixedLine) {
  const auto& r = shared_resources();
  const auto seq = transcribe_line("cmn:ni3hao3 en:HH AH0 L OW1", InputLanguage::kMixed, r);
  ASSERT_EQ(seq.size(), 9u);
  const auto tags = seq.language_tags();
  EXPECT_EQ(std::count(tags.begin(), tags.end(), Language::kMandarin), 5);
  EXPECT_EQ(tags.back(), Language::kEnglish);
  EXPECT_THROW((void)transcribe_line("HH cmn:ni3", InputLanguage::kMixed, r), Error);
}

TEST(Pipeline, EnglishSegmentsNeverTriggerAllophony) {
  const auto seq = transcribe_line("cmn:si1 en:S IY1", InputLanguage::kMixed, shared_resources());
  EXPECT_EQ(surfaces(seq), (std::vector<std::string>{"s", "ʐ", "s", "i"}));
  const auto seq2 = transcribe_line("cmn:xi1", InputLanguage::kMixed, shared_resources());
  EXPECT_EQ(surfaces(seq2), (std::vector<std::string>{"ɕ", "i"}));
}

}  // namespace
}  // namespace phonfront
