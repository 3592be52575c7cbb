// Copyright 2026 The qflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qflip/channels.hpp"

namespace qflip::io {

using nlohmann::json;

/// Complex number as [re, im].
json to_json(Complex z);

/// Matrix as an array of rows, each row an array of [re, im] pairs.
json to_json(const Operator& m);

/// Accepts nested rows or a flat row-major list of pairs (square only).
Operator operator_from_json(const json& j);

/// {"dim": d, "kraus": [matrix, ...]}, plus "dim_out" when the channel is not square.
json channel_to_json(const KrausChannel& ch);

/// Parses and validates a channel document. Throws ValidationError whose
/// message names the failed invariant (schema, shape, or trace preservation).
KrausChannel channel_from_json(const json& j);

KrausChannel load_channel(const std::filesystem::path& path);

}  // namespace qflip::io
