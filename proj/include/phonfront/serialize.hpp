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

// rawbin and jsonl encodings of encoded utterances and projected matrices.
//
// rawbin record (all integers little-endian):
//
//   offset  size  field
//   0       4     magic "PHF1"
//   4       2     format version (u16)
//   6       1     payload kind: 0 = features + codes, 1 = projected matrix
//   7       4     row count (u32)
//   11      4     column count (u32)
//   15      ...   row-major payload
//
// Kind 0 rows are ceil(cols / 8) bytes of feature bits (feature i in byte
// i / 8 at bit i % 8, LSB first, unused high bits zero) followed by one
// byte tone code and one byte prosody code. Kind 1 rows are cols IEEE-754
// binary32 values. Records may be concatenated into a stream.

#ifndef PHONFRONT_SERIALIZE_HPP_
#define PHONFRONT_SERIALIZE_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "phonfront/encoder.hpp"
#include "phonfront/error.hpp"

namespace phonfront {

inline constexpr std::string_view kRawbinMagic = "PHF1";
inline constexpr std::uint16_t kRawbinVersion = kFeatureContractVersion;
inline constexpr std::size_t kRawbinHeaderSize = 15;

enum class PayloadKind : std::uint8_t { kFeatures = 0, kProjected = 1 };

namespace detail {

inline void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

inline void put_header(std::string& out, PayloadKind kind, std::size_t rows, std::size_t cols) {
  out.append(kRawbinMagic);
  put_u16(out, kRawbinVersion);
  out.push_back(static_cast<char>(kind));
  put_u32(out, static_cast<std::uint32_t>(rows));
  put_u32(out, static_cast<std::uint32_t>(cols));
}

inline std::size_t packed_row_bytes(std::size_t cols) { return (cols + 7) / 8; }

}  // namespace detail

inline std::string serialize_rawbin(const EncodedUtterance& enc) {
  enc.validate();
  std::string out;
  detail::put_header(out, PayloadKind::kFeatures, enc.size(), kFeatureCount);
  const std::size_t nbytes = detail::packed_row_bytes(kFeatureCount);
  for (std::size_t r = 0; r < enc.size(); ++r) {
    std::string row(nbytes, '\0');
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      if (enc.features[r][i]) row[i / 8] = static_cast<char>(row[i / 8] | (1 << (i % 8)));
    }
    out += row;
    out.push_back(static_cast<char>(enc.tones[r].value));
    out.push_back(static_cast<char>(enc.prosody[r].value));
  }
  return out;
}

inline std::string serialize_rawbin(const Matrix& m) {
  if (m.data.size() != m.rows * m.cols) {
    throw Error(ErrorCode::kShapeMismatch, "matrix data does not match its shape");
  }
  std::string out;
  detail::put_header(out, PayloadKind::kProjected, m.rows, m.cols);
  for (float v : m.data) detail::put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

using RawRecord = std::variant<EncodedUtterance, Matrix>;

/// Decodes the record at the start of `bytes`; `consumed` receives its length.
inline RawRecord deserialize_rawbin(std::string_view bytes, std::size_t* consumed = nullptr) {
  if (bytes.size() < kRawbinHeaderSize) {
    if (bytes.size() >= 4 && bytes.substr(0, 4) != kRawbinMagic) {
      throw Error(ErrorCode::kMagicMismatch, "not a rawbin record");
    }
    throw Error(ErrorCode::kTruncated, "header needs " + std::to_string(kRawbinHeaderSize) +
                                           " bytes, have " + std::to_string(bytes.size()));
  }
  if (bytes.substr(0, 4) != kRawbinMagic) throw Error(ErrorCode::kMagicMismatch, "not a rawbin record");
  const auto version = static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[4]) |
                                                  (static_cast<unsigned char>(bytes[5]) << 8));
  if (version != kRawbinVersion) {
    throw Error(ErrorCode::kVersionMismatch, "rawbin version " + std::to_string(version) +
                                                 ", expected " + std::to_string(kRawbinVersion));
  }
  const auto kind = static_cast<unsigned char>(bytes[6]);
  const std::size_t rows = detail::get_u32(bytes, 7);
  const std::size_t cols = detail::get_u32(bytes, 11);
  std::size_t at = kRawbinHeaderSize;

  auto need = [&](std::size_t n) {
    if (bytes.size() - at < n) {
      throw Error(ErrorCode::kTruncated, "payload needs " + std::to_string(n) + " more bytes, have " +
                                             std::to_string(bytes.size() - at));
    }
  };

  if (kind == static_cast<unsigned char>(PayloadKind::kFeatures)) {
    if (cols != kFeatureCount) {
      throw Error(ErrorCode::kShapeMismatch, "feature payload has " + std::to_string(cols) +
                                                 " columns, expected " + std::to_string(kFeatureCount));
    }
    const std::size_t row_bytes = detail::packed_row_bytes(cols) + 2;
    if (rows > (bytes.size() - at) / row_bytes) need(rows * row_bytes);
    EncodedUtterance enc;
    for (std::size_t r = 0; r < rows; ++r) {
      FeatureVector vec;
      for (std::size_t i = 0; i < cols; ++i) {
        vec.set(i, (static_cast<unsigned char>(bytes[at + i / 8]) >> (i % 8)) & 1U);
      }
      for (std::size_t i = cols; i < detail::packed_row_bytes(cols) * 8; ++i) {
        if ((static_cast<unsigned char>(bytes[at + i / 8]) >> (i % 8)) & 1U) {
          throw Error(ErrorCode::kConstraintViolation, "padding bit set in row " + std::to_string(r));
        }
      }
      at += detail::packed_row_bytes(cols);
      enc.features.push_back(vec);
      enc.tones.push_back(make_tone_code(static_cast<unsigned char>(bytes[at++])));
      enc.prosody.push_back(make_prosody_code(static_cast<unsigned char>(bytes[at++])));
    }
    enc.validate();
    if (consumed) *consumed = at;
    return enc;
  }
  if (kind == static_cast<unsigned char>(PayloadKind::kProjected)) {
    if (cols != 0 && rows > (bytes.size() - at) / (4 * cols)) need(rows * cols * 4);
    Matrix m(rows, cols);
    for (float& v : m.data) {
      v = std::bit_cast<float>(detail::get_u32(bytes, at));
      at += 4;
    }
    if (consumed) *consumed = at;
    return m;
  }
  throw Error(ErrorCode::kSchema, "unknown payload kind " + std::to_string(kind));
}

inline std::vector<RawRecord> deserialize_rawbin_stream(std::string_view bytes) {
  std::vector<RawRecord> out;
  while (!bytes.empty()) {
    std::size_t used = 0;
    out.push_back(deserialize_rawbin(bytes, &used));
    bytes.remove_prefix(used);
  }
  return out;
}

// One utterance as read back from jsonl.
struct LabeledUtterance {
  std::size_t utt = 0;
  EncodedUtterance encoded;
  std::vector<SegmentLabel> labels;

  friend bool operator==(const LabeledUtterance&, const LabeledUtterance&) = default;
};

/// One object per segment:
/// {"utt", "index", "symbol", "lang", "features": [names], "tone", "prosody"}.
inline std::string serialize_jsonl(const EncodedUtterance& enc, const std::vector<SegmentLabel>& labels,
                                   std::size_t utt = 0) {
  enc.validate();
  if (labels.size() != enc.size()) {
    throw Error(ErrorCode::kShapeMismatch, "labels and rows differ in length");
  }
  std::string out;
  for (std::size_t i = 0; i < enc.size(); ++i) {
    nlohmann::ordered_json j;
    j["utt"] = utt;
    j["index"] = i;
    j["symbol"] = labels[i].symbol;
    j["lang"] = std::string(language_tag(labels[i].language));
    auto names = nlohmann::ordered_json::array();
    for (Feature f : vector_to_bundle(enc.features[i]).members()) names.push_back(std::string(name_of(f)));
    j["features"] = std::move(names);
    j["tone"] = enc.tones[i].value;
    j["prosody"] = enc.prosody[i].value;
    out += j.dump();
    out += '\n';
  }
  return out;
}

// {"utt", "row", "values": [...]} per matrix row.
inline std::string serialize_jsonl(const Matrix& m, std::size_t utt = 0) {
  std::string out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    nlohmann::ordered_json j;
    j["utt"] = utt;
    j["row"] = r;
    auto values = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols; ++c) values.push_back(m.at(r, c));
    j["values"] = std::move(values);
    out += j.dump();
    out += '\n';
  }
  return out;
}

/// Groups segment lines by "utt" in order of first appearance; rows of an
/// utterance must appear with consecutive indices.
inline std::vector<LabeledUtterance> deserialize_jsonl(std::string_view text) {
  std::vector<LabeledUtterance> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto where = "jsonl line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      auto utt = j.at("utt").get<std::size_t>();
      auto index = j.at("index").get<std::size_t>();
      auto lang = language_from_tag(j.at("lang").get<std::string>());
      if (!lang) throw Error(ErrorCode::kSchema, where + ": unknown lang");
      FeatureBundle bundle;
      for (const auto& name : j.at("features")) {
        auto f = feature_from_name(name.get<std::string>());
        if (!f) throw Error(ErrorCode::kSchema, where + ": unknown feature " + name.dump());
        bundle.insert(*f);
      }
      if (out.empty() || out.back().utt != utt) out.push_back(LabeledUtterance{utt, {}, {}});
      auto& u = out.back();
      if (index != u.encoded.size()) throw Error(ErrorCode::kSchema, where + ": index out of sequence");
      u.encoded.features.push_back(bundle_to_vector(bundle));
      u.encoded.tones.push_back(make_tone_code(j.at("tone").get<int>()));
      u.encoded.prosody.push_back(make_prosody_code(j.at("prosody").get<int>()));
      u.labels.push_back({j.at("symbol").get<std::string>(), *lang});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchema, where + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<Matrix> deserialize_jsonl_matrices(std::string_view text) {
  std::vector<Matrix> out;
  std::vector<std::size_t> utts;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto utt = j.at("utt").get<std::size_t>();
      auto values = j.at("values").get<std::vector<float>>();
      if (utts.empty() || utts.back() != utt) {
        utts.push_back(utt);
        out.emplace_back(0, values.size());
      }
      Matrix& m = out.back();
      if (values.size() != m.cols) {
        throw Error(ErrorCode::kShapeMismatch, "jsonl line " + std::to_string(line_no) + ": ragged row");
      }
      m.data.insert(m.data.end(), values.begin(), values.end());
      ++m.rows;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchema, "jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace phonfront

#endif  // PHONFRONT_SERIALIZE_HPP_
