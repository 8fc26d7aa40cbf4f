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

#include <string>
#include <vector>

#include "kuniform/codes.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

/// (|0...0> + |1...1> + ... + |d-1...d-1>) / sqrt(d).
PureState ghz_state(int n, int d = 2);
/// (|00> + |11>) / sqrt(2).
PureState bell_state();
/// |0...0>.
PureState zero_state(int n, int d = 2);

/// Pauli string such as "XZZXI" as a dense 2^n x 2^n matrix.
Matrix pauli_string(const std::string& word);

/// Projector onto the joint +1 eigenspace of commuting Pauli generators.
Matrix stabilizer_projector(const std::vector<std::string>& generators);

/// The cyclic generators XZZXI, IXZZX, XIXZZ, ZXIXZ of the five-qubit code.
std::vector<std::string> five_qubit_generators();

/// [[5,1,3]] code space; codewords are the eigenvectors of its projector.
CodeSpace five_qubit_code();

/// Rank-1 code spanned by a single state.
CodeSpace single_state_code(const PureState& state);

}  // namespace kuniform
