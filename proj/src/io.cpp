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

#include "kuniform/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace kuniform {

using nlohmann::json;

namespace {

json amplitudes_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector amplitudes_from_json(const json& j, std::size_t expected, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": amplitudes must be a list");
  if (j.size() != expected) {
    throw InputError(what + ": expected " + std::to_string(expected) +
                     " amplitudes, found " + std::to_string(j.size()));
  }
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    const json& z = j[i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw InputError(what + ": amplitude " + std::to_string(i) + " is not [re, im]");
    }
    v(static_cast<Eigen::Index>(i)) = Complex(z[0].get<double>(), z[1].get<double>());
  }
  return v;
}

Vector renormalize(Vector v, const std::string& what) {
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > kFileNormTolerance) {
    throw InputError(what + ": squared norm " + std::to_string(norm2) +
                     " deviates from 1 by more than 1e-6");
  }
  return v / std::sqrt(norm2);
}

int int_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    throw InputError(std::string("missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

}  // namespace

json state_to_json(const PureState& state) {
  return {{"n", state.layout().n()},
          {"d", state.layout().d()},
          {"amplitudes", amplitudes_to_json(state.amplitudes())}};
}

PureState state_from_json(const json& j) {
  QuditLayout layout(int_field(j, "n"), int_field(j, "d"));
  if (!j.contains("amplitudes")) throw InputError("missing field 'amplitudes'");
  Vector v = amplitudes_from_json(j["amplitudes"], layout.dim(), "state");
  return PureState(layout, renormalize(std::move(v), "state"));
}

json code_to_json(const CodeSpace& code) {
  json cols = json::array();
  for (int a = 0; a < code.k_dim(); ++a) cols.push_back(amplitudes_to_json(code.isometry().col(a)));
  return {{"n", code.layout().n()},
          {"d", code.layout().d()},
          {"K", code.k_dim()},
          {"isometry", cols}};
}

CodeSpace code_from_json(const json& j) {
  QuditLayout layout(int_field(j, "n"), int_field(j, "d"));
  const int k = int_field(j, "K");
  if (k < 1) throw InputError("K must be >= 1");
  if (!j.contains("isometry") || !j["isometry"].is_array() ||
      j["isometry"].size() != static_cast<std::size_t>(k)) {
    throw InputError("'isometry' must hold K amplitude lists");
  }
  Matrix v(static_cast<Eigen::Index>(layout.dim()), k);
  for (int a = 0; a < k; ++a) {
    const std::string what = "codeword " + std::to_string(a);
    v.col(a) = renormalize(amplitudes_from_json(j["isometry"][a], layout.dim(), what), what);
  }
  // Re-orthonormalize small deviations; CodeSpace rejects anything larger.
  const Matrix gram = v.adjoint() * v;
  if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > kFileNormTolerance) {
    throw InputError("codewords are not orthonormal within 1e-6");
  }
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix q = qr.householderQ() * Matrix::Identity(v.rows(), k);
  const Matrix r = qr.matrixQR().topLeftCorner(k, k);
  for (int a = 0; a < k; ++a) {
    const Complex diag = r(a, a);
    if (std::abs(diag) > 0.0) q.col(a) *= diag / std::abs(diag);
  }
  return CodeSpace(layout, q);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

PureState read_state_file(const std::string& path) {
  return state_from_json(read_json_file(path));
}

void write_state_file(const std::string& path, const PureState& state) {
  write_json_file(path, state_to_json(state));
}

CodeSpace read_code_file(const std::string& path) {
  return code_from_json(read_json_file(path));
}

void write_code_file(const std::string& path, const CodeSpace& code) {
  write_json_file(path, code_to_json(code));
}

}  // namespace kuniform
