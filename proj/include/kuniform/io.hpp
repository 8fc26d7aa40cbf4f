// Copyright 2026 The kuniform Authors
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

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "kuniform/codes.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

/// Largest norm deviation silently repaired when reading amplitudes.
inline constexpr double kFileNormTolerance = 1e-6;

/// {"n", "d", "amplitudes": [[re, im], ...]} in the layout's basis order.
nlohmann::json state_to_json(const PureState& state);
/// Throws InputError on missing fields, wrong length or a norm off by > 1e-6.
PureState state_from_json(const nlohmann::json& j);

/// {"n", "d", "K", "isometry": [[[re, im], ...], ...]}, one list per codeword.
nlohmann::json code_to_json(const CodeSpace& code);
CodeSpace code_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

PureState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const PureState& state);
CodeSpace read_code_file(const std::string& path);
void write_code_file(const std::string& path, const CodeSpace& code);

}  // namespace kuniform
