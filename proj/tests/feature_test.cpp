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

#include "phonfront/feature.hpp"
#include "test_support.hpp"

namespace phonfront {
namespace {

using testing::random_valid_bundle;

TEST(FeatureTable, CanonicalOrderAndNodes) {
  const char* names[] = {"CONSONANTAL", "VOCALIC",  "OBSTRUENT", "SONORANT", "VOICE",    "SPREAD_GLOTTIS", "PLOSIVE",
                         "CONTINUANT",  "STRIDENT", "NASAL",     "LATERAL",  "RHOTIC",   "LABIAL",         "CORONAL",
                         "DORSAL",      "RADICAL",  "HIGH",      "LOW",      "ATR",      "RTR"};
  ASSERT_EQ(kFeatureCount, 20u);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    EXPECT_EQ(name_of(feature_at(i)), names[i]);
    EXPECT_EQ(index_of(feature_at(i)), i);
    EXPECT_EQ(feature_from_name(names[i]), feature_at(i));
  }
  EXPECT_EQ(node_of(Feature::kVoice), Node::kLaryngeal);
  EXPECT_EQ(node_of(Feature::kSpreadGlottis), Node::kLaryngeal);
  EXPECT_EQ(node_of(Feature::kConsonantal), Node::kRoot);
  EXPECT_EQ(node_of(Feature::kPlosive), Node::kConstriction);
  EXPECT_EQ(node_of(Feature::kRadical), Node::kArticulator);
  EXPECT_EQ(node_of(Feature::kHigh), Node::kTongueHeight);
  EXPECT_EQ(node_of(Feature::kRtr), Node::kTongueRoot);
  EXPECT_FALSE(feature_from_name("APICAL").has_value());
}

TEST(FeatureTable, ContractFileMatches) {
  EXPECT_NO_THROW(verify_feature_contract(std::filesystem::path(PHONFRONT_DEFAULT_DATA_DIR) / "features.contract"));
  std::istringstream swapped("version\t1\n0\tVOCALIC\tROOT\n");
  EXPECT_THROW(verify_feature_contract(swapped), Error);
  std::istringstream bumped("version\t2\n");
  try {
    verify_feature_contract(bumped);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersionMismatch);
  }
}

TEST(Validate, ValidBundleHasNoViolations) {
  FeatureBundle b{Feature::kConsonantal, Feature::kObstruent, Feature::kPlosive, Feature::kLabial};
  EXPECT_TRUE(validate_bundle(b).empty());
}

TEST(Validate, NamesTheConflictingPair) {
  auto v = validate_bundle({Feature::kHigh, Feature::kLow});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].pair.first, Feature::kHigh);
  EXPECT_EQ(v[0].pair.second, Feature::kLow);
  EXPECT_NE(v[0].describe().find("HIGH"), std::string::npos);
  EXPECT_NE(v[0].describe().find("LOW"), std::string::npos);
}

TEST(Validate, EmptyBundleIsValid) { EXPECT_TRUE(validate_bundle(FeatureBundle{}).empty()); }

TEST(Validate, ReportsEveryPair) {
  FeatureBundle all = FeatureBundle::from_mask((1U << kFeatureCount) - 1);
  EXPECT_EQ(validate_bundle(all).size(), 6u);
}

// Oracle: a bundle is valid iff no exclusion pair (by canonical index) is
// fully present in its mask.
TEST(Validate, PropertyAgreesWithMaskOracle) {
  std::mt19937 rng(7);
  const auto pairs = testing::default_pair_indices();
  for (int n = 0; n < 5000; ++n) {
    const std::uint32_t m = rng() & ((1U << kFeatureCount) - 1);
    std::size_t want = 0;
    for (auto [a, b] : pairs) want += ((m >> a) & 1U) && ((m >> b) & 1U);
    EXPECT_EQ(validate_bundle(FeatureBundle::from_mask(m)).size(), want) << m;
  }
}

TEST(Vector, LabialPlosiveExample) {
  FeatureBundle b{Feature::kLabial, Feature::kPlosive};
  FeatureVector v = bundle_to_vector(b);
  EXPECT_EQ(v.count(), 2u);
  EXPECT_TRUE(v[index_of(Feature::kLabial)]);
  EXPECT_TRUE(v[index_of(Feature::kPlosive)]);
  EXPECT_EQ(v.to_string(), "00000010000010000000");
}

TEST(Vector, EmptyBundleIsZeroVector) {
  EXPECT_EQ(bundle_to_vector(FeatureBundle{}).to_string(), std::string(20, '0'));
}

TEST(Vector, InvalidBundleRejected) {
  try {
    bundle_to_vector({Feature::kConsonantal, Feature::kVocalic});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstraintViolation);
  }
}

TEST(Vector, LengthChecked) {
  std::vector<std::uint8_t> bits(19, 0);
  try {
    vector_to_bundle(std::span<const std::uint8_t>(bits));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLength);
  }
}

TEST(Vector, NonBinaryRejected) {
  std::vector<std::uint8_t> bits(20, 0);
  bits[3] = 2;
  EXPECT_THROW(vector_to_bundle(std::span<const std::uint8_t>(bits)), Error);
}

TEST(Vector, ConflictingVectorRejected) {
  std::vector<std::uint8_t> bits(20, 0);
  bits[index_of(Feature::kAtr)] = 1;
  bits[index_of(Feature::kRtr)] = 1;
  try {
    vector_to_bundle(std::span<const std::uint8_t>(bits));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstraintViolation);
  }
}

TEST(Vector, RoundTripProperty) {
  std::mt19937 rng(11);
  for (int n = 0; n < 2000; ++n) {
    const FeatureBundle b = random_valid_bundle(rng);
    const FeatureVector v = bundle_to_vector(b);
    EXPECT_EQ(vector_to_bundle(v), b);
    EXPECT_EQ(v.count(), b.size());
    std::vector<std::uint8_t> bytes;
    for (std::size_t i = 0; i < kFeatureCount; ++i) bytes.push_back(v[i] ? 1 : 0);
    EXPECT_EQ(vector_to_bundle(std::span<const std::uint8_t>(bytes)), b);
    EXPECT_EQ(bundle_to_vector(vector_to_bundle(v)), v);
  }
}

TEST(Bundle, SetAlgebra) {
  FeatureBundle a{Feature::kSonorant, Feature::kVoice, Feature::kNasal};
  FeatureBundle b{Feature::kVoice, Feature::kLateral};
  EXPECT_EQ((a & b), FeatureBundle{Feature::kVoice});
  EXPECT_EQ((a - b), (FeatureBundle{Feature::kSonorant, Feature::kNasal}));
  EXPECT_EQ((a | b).size(), 4u);
  EXPECT_TRUE((a & b).is_subset_of(a));
}

TEST(Bundle, FeatureListRoundTrip) {
  std::mt19937 rng(3);
  for (int n = 0; n < 500; ++n) {
    const FeatureBundle b = random_valid_bundle(rng);
    EXPECT_EQ(parse_feature_list(to_feature_list(b)), b);
  }
  EXPECT_EQ(to_feature_list(FeatureBundle{}), "-");
  EXPECT_THROW(parse_feature_list("VOICE,GROOVED"), Error);
}

}  // namespace
}  // namespace phonfront
