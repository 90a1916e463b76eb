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


// Umbrella header.

#ifndef PHONFRONT_PHONFRONT_HPP_
#define PHONFRONT_PHONFRONT_HPP_

#include "phonfront/arpabet.hpp"
#include "phonfront/encoder.hpp"
#include "phonfront/error.hpp"
#include "phonfront/feature.hpp"
#include "phonfront/format.hpp"
#include "phonfront/inventory.hpp"
#include "phonfront/mandarin.hpp"
#include "phonfront/pinyin.hpp"
#include "phonfront/pipeline.hpp"
#include "phonfront/resources.hpp"
#include "phonfront/segment.hpp"
#include "phonfront/serialize.hpp"
#include "phonfront/text.hpp"
#include "phonfront/xling.hpp"

#endif  // PHONFRONT_PHONFRONT_HPP_
