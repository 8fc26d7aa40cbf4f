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

#include "kuniform/fixtures.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace kuniform {

PureState ghz_state(int n, int d) {
  QuditLayout layout(n, d);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
  std::size_t ones = 0;
  for (int p = 1; p <= n; ++p) ones += layout.stride(p);
  for (int j = 0; j < d; ++j) amps(static_cast<Eigen::Index>(j * ones)) = 1.0;
  return PureState::normalized(layout, amps);
}

PureState bell_state() { return ghz_state(2, 2); }

PureState zero_state(int n, int d) { return PureState::basis(QuditLayout(n, d), 0); }

Matrix pauli_string(const std::string& word) {
  if (word.empty()) throw InputError("empty Pauli string");
  const Complex i(0.0, 1.0);
  Matrix out = Matrix::Identity(1, 1);
  for (char c : word) {
    Matrix p(2, 2);
    switch (c) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, -i, i, 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: throw InputError(std::string("unknown Pauli letter '") + c + "'");
    }
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index s = 0; s < out.cols(); ++s) {
        next.block(2 * r, 2 * s, 2, 2) = out(r, s) * p;
      }
    }
    out.swap(next);
  }
  return out;
}

Matrix stabilizer_projector(const std::vector<std::string>& generators) {
  if (generators.empty()) throw InputError("no stabilizer generators");
  const auto dim = Eigen::Index{1} << generators.front().size();
  Matrix proj = Matrix::Identity(dim, dim);
  for (const auto& g : generators) {
    if (g.size() != generators.front().size()) throw InputError("generator lengths differ");
    proj = proj * (Matrix::Identity(dim, dim) + pauli_string(g)) * 0.5;
  }
  return proj;
}

std::vector<std::string> five_qubit_generators() {
  return {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
}

CodeSpace five_qubit_code() {
  const Matrix proj = stabilizer_projector(five_qubit_generators());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(proj);
  // Eigenvalues ascend; the last two belong to the +1 eigenspace.
  return CodeSpace(QuditLayout(5, 2), eig.eigenvectors().rightCols(2));
}

CodeSpace single_state_code(const PureState& state) {
  return CodeSpace(state.layout(), state.amplitudes());
}

}  // namespace kuniform
