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

#include <algorithm>
#include <chrono>
#include <sstream>

#include "phonfront/inventory.hpp"
#include "test_support.hpp"

namespace phonfront {
namespace {

using testing::shared_resources;

std::filesystem::path data_file(const char* name) {
  return std::filesystem::path(PHONFRONT_DEFAULT_DATA_DIR) / name;
}

std::size_t count_kind(const Inventory& inv, PhonemeKind kind) {
  std::size_t n = 0;
  for (const auto& p : inv.phonemes()) n += p.kind() == kind;
  return n;
}

TEST(Inventory, EnglishCounts) {
  const auto& en = shared_resources().en;
  EXPECT_EQ(en.size(), 38u);
  EXPECT_EQ(count_kind(en, PhonemeKind::kConsonant), 24u);
  EXPECT_EQ(count_kind(en, PhonemeKind::kVowel), 14u);
  EXPECT_EQ(en.version(), "1.0.0");
}

TEST(Inventory, MandarinCounts) {
  const auto& cmn = shared_resources().cmn;
  EXPECT_EQ(cmn.size(), 37u);
  EXPECT_EQ(count_kind(cmn, PhonemeKind::kConsonant), 21u);
  EXPECT_EQ(count_kind(cmn, PhonemeKind::kVowel), 16u);
}

TEST(Inventory, LoadsQuickly) {
  const auto start = std::chrono::steady_clock::now();
  (void)load_inventory(Language::kEnglish, data_file("en.inventory.tsv"));
  (void)load_inventory(Language::kMandarin, data_file("cmn.inventory.tsv"));
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(1));
}

TEST(Inventory, ReferenceChartConformance) {
  EXPECT_EQ(testing::chart_disagreements(shared_resources().en), std::vector<std::string>{});
  EXPECT_EQ(testing::chart_disagreements(shared_resources().cmn), std::vector<std::string>{});
}

TEST(Inventory, OnlyNonChartRowsAreReconstructed) {
  std::vector<std::string> en_rec;
  for (const auto& p : shared_resources().en.phonemes()) {
    if (p.reconstructed) en_rec.push_back(p.symbol);
  }
  std::sort(en_rec.begin(), en_rec.end());
  EXPECT_EQ(en_rec, (std::vector<std::string>{"o", "ɪ"}));
  for (const auto& p : shared_resources().cmn.phonemes()) {
    EXPECT_EQ(p.reconstructed, p.kind() == PhonemeKind::kVowel) << p.symbol;
  }
}

TEST(Lookup, EnglishBContrastive) {
  EXPECT_EQ(lookup(shared_resources().en, "b", LookupMode::kContrastive),
            (FeatureBundle{Feature::kConsonantal, Feature::kObstruent, Feature::kVoice, Feature::kPlosive,
                           Feature::kLabial}));
}

TEST(Lookup, EnglishKOptionalHigh) {
  const auto& en = shared_resources().en;
  EXPECT_TRUE(lookup(en, "k", LookupMode::kCrossLingual).contains(Feature::kHigh));
  EXPECT_FALSE(lookup(en, "k", LookupMode::kContrastive).contains(Feature::kHigh));
}

TEST(Lookup, MandarinAspirateHasSpreadGlottis) {
  EXPECT_TRUE(lookup(shared_resources().cmn, "pʰ", LookupMode::kContrastive).contains(Feature::kSpreadGlottis));
}

TEST(Lookup, UnknownSymbolSuggestsNeighbours) {
  try {
    (void)lookup(shared_resources().en, "q", LookupMode::kContrastive);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSymbol);
    EXPECT_NE(std::string(e.what()).find("nearest"), std::string::npos);
  }
}

TEST(Lookup, CrossLingualIsSupersetProperty) {
  for (const auto* inv : {&shared_resources().en, &shared_resources().cmn}) {
    for (const auto& p : inv->phonemes()) {
      EXPECT_TRUE(p.bundle(LookupMode::kContrastive).is_subset_of(p.bundle(LookupMode::kCrossLingual)));
      EXPECT_EQ(p.bundle(LookupMode::kCrossLingual), p.contrastive | p.optional);
      EXPECT_TRUE((p.contrastive & p.optional).empty()) << p.symbol;
    }
  }
}

// Invariants checked directly over the rows rather than via check_inventory.
TEST(Invariants, ExclusionPairsNeverViolated) {
  for (const auto* inv : {&shared_resources().en, &shared_resources().cmn}) {
    for (const auto& p : inv->phonemes()) {
      for (auto mode : {LookupMode::kContrastive, LookupMode::kCrossLingual}) {
        const std::uint32_t m = testing::mask_of(p.bundle(mode));
        for (auto [a, b] : testing::default_pair_indices()) {
          EXPECT_FALSE((m >> a & 1U) && (m >> b & 1U)) << p.symbol;
        }
      }
    }
  }
}

TEST(Invariants, VocalicSonorantVoiceChain) {
  for (const auto* inv : {&shared_resources().en, &shared_resources().cmn}) {
    for (const auto& p : inv->phonemes()) {
      if (p.contrastive.contains(Feature::kVocalic)) {
        EXPECT_TRUE(p.contrastive.contains(Feature::kSonorant)) << p.symbol;
      }
      if (p.contrastive.contains(Feature::kSonorant)) {
        EXPECT_TRUE(p.contrastive.contains(Feature::kVoice)) << p.symbol;
      }
    }
  }
}

TEST(Invariants, AffricatesArePlosiveStridentNotContinuant) {
  const std::vector<std::pair<const Inventory*, std::vector<std::string>>> affricates = {
      {&shared_resources().en, {"dʒ", "tʃ"}},
      {&shared_resources().cmn, {"ts", "tsʰ", "tʂ", "tʂʰ"}}};
  for (const auto& [inv, symbols] : affricates) {
    for (const auto& s : symbols) {
      const FeatureBundle b = inv->at(s).bundle(LookupMode::kCrossLingual);
      EXPECT_TRUE(b.contains(Feature::kPlosive)) << s;
      EXPECT_TRUE(b.contains(Feature::kStrident)) << s;
      EXPECT_FALSE(b.contains(Feature::kContinuant)) << s;
    }
  }
  // Conversely every PLOSIVE+STRIDENT phoneme is one of the affricates above.
  std::size_t n = 0;
  for (const auto* inv : {&shared_resources().en, &shared_resources().cmn}) {
    for (const auto& p : inv->phonemes()) {
      n += p.contrastive.contains(Feature::kPlosive) && p.contrastive.contains(Feature::kStrident);
    }
  }
  EXPECT_EQ(n, 6u);
}

TEST(Invariants, LanguageSpecificFeatures) {
  for (const auto& p : shared_resources().cmn.phonemes()) {
    if (p.kind() == PhonemeKind::kConsonant) {
      EXPECT_FALSE(p.bundle(LookupMode::kCrossLingual).contains(Feature::kRhotic));
    }
    EXPECT_FALSE(p.bundle(LookupMode::kCrossLingual).contains(Feature::kRadical));
  }
  for (const auto& p : shared_resources().en.phonemes()) {
    EXPECT_FALSE(p.bundle(LookupMode::kCrossLingual).contains(Feature::kSpreadGlottis));
    EXPECT_EQ(p.bundle(LookupMode::kCrossLingual).contains(Feature::kRadical), p.symbol == "h");
  }
}

TEST(Invariants, BundlesDistinctWithinLanguage) {
  for (const auto* inv : {&shared_resources().en, &shared_resources().cmn}) {
    std::map<std::uint32_t, std::vector<std::string>> seen;
    for (const auto& p : inv->phonemes()) seen[testing::mask_of(p.contrastive)].push_back(p.symbol);
    for (const auto& [mask, symbols] : seen) {
      // /ɜ/ and /ɝ/ share a row in the chart.
      if (symbols == std::vector<std::string>{"ɜ", "ɝ"}) continue;
      EXPECT_EQ(symbols.size(), 1u) << join(symbols, " ");
    }
  }
}

const char* kTinyHeader = "# version: 0.1\n";

TEST(Parse, ReportsEveryInvariantViolation) {
  std::istringstream in(std::string(kTinyHeader) +
                        "b\tconsonant\tCONSONANTAL,OBSTRUENT,SONORANT,VOICE\t-\tfalse\n"
                        "a\tvowel\tVOCALIC,HIGH,LOW\t-\tfalse\n");
  try {
    (void)parse_inventory(Language::kEnglish, in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvariant);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("OBSTRUENT/SONORANT"), std::string::npos);
    EXPECT_NE(msg.find("HIGH/LOW"), std::string::npos);
    EXPECT_NE(msg.find("38"), std::string::npos);
  }
}

TEST(Parse, DuplicateSymbolIsSchemaError) {
  std::istringstream in("p\tconsonant\tCONSONANTAL\t-\tfalse\np\tconsonant\tCONSONANTAL\t-\tfalse\n");
  try {
    (void)parse_inventory_rows(Language::kEnglish, in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_EQ(exit_status_for(e.code()), 2);
  }
}

TEST(Parse, SchemaErrors) {
  for (const char* bad : {"p\tconsonant\tCONSONANTAL\t-\n", "p\tconsonant\tCONSONANTAL,GROOVED\t-\tfalse\n",
                          "p\tvowel\tCONSONANTAL\t-\tfalse\n", "p\tconsonant\tCONSONANTAL\t-\tmaybe\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW((void)parse_inventory_rows(Language::kEnglish, in), Error) << bad;
  }
}

TEST(Stats, CountsMatchIndependentTally) {
  for (const auto* inv : {&shared_resources().en, &shared_resources().cmn}) {
    const InventoryStats s = inventory_stats(*inv);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      std::size_t want = 0;
      for (const auto& p : inv->phonemes()) want += (testing::mask_of(p.contrastive | p.optional) >> i) & 1U;
      EXPECT_EQ(s.per_feature[i], want);
    }
  }
  const std::string en = format_stats(inventory_stats(shared_resources().en));
  EXPECT_NE(en.find("phonemes: 38\n"), std::string::npos);
  const std::string cmn = format_stats(inventory_stats(shared_resources().cmn));
  EXPECT_NE(cmn.find("CONSONANTAL: 21\n"), std::string::npos);
  EXPECT_NE(cmn.find("VOCALIC: 16\n"), std::string::npos);
}

}  // namespace
}  // namespace phonfront
