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

#include "kuniform/enumerators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kuniform {
namespace {

void check_operator(const Matrix& m, const QuditLayout& layout, const char* name) {
  const auto dim = static_cast<Eigen::Index>(layout.dim());
  if (m.rows() != dim || m.cols() != dim) {
    throw InputError(std::string(name) + " must be " + std::to_string(dim) + "x" +
                     std::to_string(dim) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

/// Column permutation and phases of a Heisenberg-Weyl operator:
/// E|l> = phase[l] |target[l]>.
struct MonomialForm {
  std::vector<std::size_t> target;
  std::vector<Complex> phase;
};

MonomialForm monomial_form(const HWLabel& label, const QuditLayout& layout) {
  const int d = layout.d();
  const double w = 2.0 * std::numbers::pi / d;
  MonomialForm f;
  f.target.resize(layout.dim());
  f.phase.resize(layout.dim());
  for (std::size_t l = 0; l < layout.dim(); ++l) {
    std::size_t t = 0;
    long exponent = 0;
    for (int p = 1; p <= layout.n(); ++p) {
      const auto [a, b] = label.sites()[static_cast<std::size_t>(p - 1)];
      const int digit = layout.digit(l, p);
      t += static_cast<std::size_t>((digit + a) % d) * layout.stride(p);
      exponent += static_cast<long>(b) * digit;
    }
    f.target[l] = t;
    f.phase[l] = std::polar(1.0, w * static_cast<double>(exponent % d));
  }
  return f;
}

}  // namespace

HWLabel::HWLabel(int d, std::vector<std::pair<int, int>> sites)
    : d_(d), sites_(std::move(sites)) {
  if (d < 2) throw InputError("d must be >= 2");
  if (sites_.empty()) throw InputError("label needs at least one site");
  for (const auto& [a, b] : sites_) {
    if (a < 0 || a >= d || b < 0 || b >= d) {
      throw InputError("label exponents must lie in Z_d");
    }
  }
}

int HWLabel::weight() const {
  return static_cast<int>(std::count_if(sites_.begin(), sites_.end(), [](const auto& s) {
    return s.first != 0 || s.second != 0;
  }));
}

SubsetMask HWLabel::support() const {
  std::vector<int> idx;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i].first != 0 || sites_[i].second != 0) idx.push_back(static_cast<int>(i) + 1);
  }
  return SubsetMask::from_indices(idx);
}

HWLabel HWLabel::from_index(int n, int d, std::size_t index) {
  std::vector<std::pair<int, int>> sites(static_cast<std::size_t>(n));
  const auto base = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  for (int p = n; p >= 1; --p) {
    const auto digit = static_cast<int>(index % base);
    index /= base;
    sites[static_cast<std::size_t>(p - 1)] = {digit / d, digit % d};
  }
  return HWLabel(d, std::move(sites));
}

Matrix hw_operator(const HWLabel& label) {
  const QuditLayout layout(label.n(), label.d());
  const MonomialForm f = monomial_form(label, layout);
  const auto dim = static_cast<Eigen::Index>(layout.dim());
  Matrix e = Matrix::Zero(dim, dim);
  for (std::size_t l = 0; l < layout.dim(); ++l) {
    e(static_cast<Eigen::Index>(f.target[l]), static_cast<Eigen::Index>(l)) = f.phase[l];
  }
  return e;
}

Matrix operator_partial_trace(const Matrix& m, const QuditLayout& layout,
                              const SubsetMask& keep) {
  check_operator(m, layout, "operator");
  const Bipartition bp(layout, keep);
  const auto flat = bp.flat_indices();
  const Eigen::Index rows = bp.rows();
  const Eigen::Index cols = bp.cols();
  Matrix out = Matrix::Zero(rows, rows);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r2 = 0; r2 < rows; ++r2) {
      const auto j2 = static_cast<Eigen::Index>(flat[static_cast<std::size_t>(r2 + c * rows)]);
      for (Eigen::Index r1 = 0; r1 < rows; ++r1) {
        const auto j1 =
            static_cast<Eigen::Index>(flat[static_cast<std::size_t>(r1 + c * rows)]);
        out(r1, r2) += m(j1, j2);
      }
    }
  }
  return out;
}

bool shor_laflamme_feasible(const QuditLayout& layout) {
  return 2.0 * layout.n() * std::log2(static_cast<double>(layout.d())) <=
         kShorLaflammeMaxLabelBits;
}

ShorLaflamme shor_laflamme(const Matrix& m1, const Matrix& m2, const QuditLayout& layout) {
  check_operator(m1, layout, "M1");
  check_operator(m2, layout, "M2");
  if (!shor_laflamme_feasible(layout)) {
    throw InputError("Shor-Laflamme enumeration over d^(2n) labels exceeds the 2^24 cap; "
                     "use the Rains (unitary) enumerators instead");
  }
  const int n = layout.n();
  const int d = layout.d();
  std::size_t labels = 1;
  for (int i = 0; i < 2 * n; ++i) labels *= static_cast<std::size_t>(d);

  std::vector<Complex> a(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<Complex> b(static_cast<std::size_t>(n + 1), 0.0);
  const std::size_t dim = layout.dim();
  for (std::size_t index = 0; index < labels; ++index) {
    const HWLabel label = HWLabel::from_index(n, d, index);
    const MonomialForm f = monomial_form(label, layout);
    Complex tr1 = 0.0;  // Tr(E M1)
    Complex tr2 = 0.0;  // Tr(E^dagger M2)
    for (std::size_t l = 0; l < dim; ++l) {
      const auto li = static_cast<Eigen::Index>(l);
      const auto ti = static_cast<Eigen::Index>(f.target[l]);
      tr1 += f.phase[l] * m1(li, ti);
      tr2 += std::conj(f.phase[l]) * m2(ti, li);
    }
    // Tr(E M1 E^dagger M2) = sum_{l,m} ph(l) conj(ph(m)) M1(l,m) M2(t(m), t(l)).
    Complex tr3 = 0.0;
    for (std::size_t l = 0; l < dim; ++l) {
      const auto li = static_cast<Eigen::Index>(l);
      const auto tl = static_cast<Eigen::Index>(f.target[l]);
      Complex row = 0.0;
      for (std::size_t mm = 0; mm < dim; ++mm) {
        row += std::conj(f.phase[mm]) * m1(li, static_cast<Eigen::Index>(mm)) *
               m2(static_cast<Eigen::Index>(f.target[mm]), tl);
      }
      tr3 += f.phase[l] * row;
    }
    const auto w = static_cast<std::size_t>(label.weight());
    a[w] += tr1 * tr2;
    b[w] += tr3;
  }
  ShorLaflamme out;
  for (int j = 0; j <= n; ++j) {
    out.A.push_back(a[static_cast<std::size_t>(j)].real());
    out.B.push_back(b[static_cast<std::size_t>(j)].real());
  }
  return out;
}

std::vector<double> rains_per_subset(const Matrix& m1, const Matrix& m2,
                                     const QuditLayout& layout) {
  check_operator(m1, layout, "M1");
  check_operator(m2, layout, "M2");
  const bool same = &m1 == &m2;
  std::vector<double> out;
  for (const SubsetMask& t : all_subsets(layout.n())) {
    const Matrix p1 = operator_partial_trace(m1, layout, t);
    const Matrix p2 = same ? p1 : operator_partial_trace(m2, layout, t);
    out.push_back((p1 * p2).trace().real());
  }
  return out;
}

RainsUnitary rains_unitary(const Matrix& m1, const Matrix& m2, const QuditLayout& layout) {
  const int n = layout.n();
  const std::vector<double> per = rains_per_subset(m1, m2, layout);
  RainsUnitary out;
  out.Aprime.assign(static_cast<std::size_t>(n + 1), 0.0);
  out.Bprime.assign(static_cast<std::size_t>(n + 1), 0.0);
  const std::uint64_t full = SubsetMask::all(n).bits();
  for (std::uint64_t bits = 0; bits < per.size(); ++bits) {
    const auto j = static_cast<std::size_t>(SubsetMask::from_bits(bits).size());
    out.Aprime[j] += per[bits];
    out.Bprime[j] += per[full & ~bits];
  }
  return out;
}

EnumeratorReport enumerator_report(const Matrix& m1, const Matrix& m2,
                                   const QuditLayout& layout, bool include_shor_laflamme) {
  EnumeratorReport report;
  const RainsUnitary rains = rains_unitary(m1, m2, layout);
  report.Aprime = rains.Aprime;
  report.Bprime = rains.Bprime;
  if (include_shor_laflamme) {
    const ShorLaflamme sl = shor_laflamme(m1, m2, layout);
    report.A = sl.A;
    report.B = sl.B;
    report.has_shor_laflamme = true;
  }
  return report;
}

double shadow_enumerator(const DensityMatrix& rho, const QuditLayout& layout,
                         const SubsetMask& t) {
  t.validate(layout.n());
  check_operator(rho.entries(), layout, "rho");
  double s = 0.0;
  for (const SubsetMask& subset : all_subsets(layout.n())) {
    const Matrix marginal = operator_partial_trace(rho.entries(), layout, subset);
    const double sign = (subset.intersect(t).size() % 2 == 0) ? 1.0 : -1.0;
    s += sign * (marginal * marginal).trace().real();
  }
  return s;
}

double shadow_enumerator(const PureState& state, const SubsetMask& t) {
  t.validate(state.layout().n());
  double s = 0.0;
  for (const SubsetMask& subset : all_subsets(state.layout().n())) {
    const double sign = (subset.intersect(t).size() % 2 == 0) ? 1.0 : -1.0;
    s += sign * subsystem_purity(state, subset);
  }
  return s;
}

std::vector<double> shadow_all(const PureState& state) {
  const auto subsets = all_subsets(state.layout().n());
  std::vector<double> purities;
  purities.reserve(subsets.size());
  for (const auto& s : subsets) purities.push_back(subsystem_purity(state, s));
  std::vector<double> out;
  out.reserve(subsets.size());
  for (const auto& t : subsets) {
    double s = 0.0;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      s += (subsets[i].intersect(t).size() % 2 == 0 ? 1.0 : -1.0) * purities[i];
    }
    out.push_back(s);
  }
  return out;
}

double f_coefficient(int d, int n, int t) {
  if (d < 2) throw InputError("d must be >= 2");
  if (n < 1 || t < 0 || t > n) throw InputError("need 0 <= t <= n and n >= 1");
  const int lo = n / 2;
  const int hi = (n + 1) / 2;
  double f = 0.0;
  for (int l = 0; l <= t / 2; ++l) {
    for (int kk = 0; kk <= n - t; ++kk) {
      const int w = 2 * l + kk;
      const int e = 2 * std::max(lo - w, w - hi);
      f += binomial(t, 2 * l) * binomial(n - t, kk) * std::pow(static_cast<double>(d), e);
    }
  }
  return f;
}

double nonexistence_epsilon_bound(int d, int n, int t, double shadow) {
  if (shadow >= 0.0) {
    throw ConstraintViolation("s_T < 0 violated: s_T = " + std::to_string(shadow) +
                              "; no violation, bound vacuous");
  }
  return std::sqrt(-shadow / f_coefficient(d, n, t));
}

double hypothetical_ame_shadow(int d, int n, const SubsetMask& t) {
  if (d < 2 || n < 1) throw InputError("need d >= 2 and n >= 1");
  t.validate(n);
  double s = 0.0;
  for (const SubsetMask& subset : all_subsets(n)) {
    const int size = subset.size();
    const double sign = (subset.intersect(t).size() % 2 == 0) ? 1.0 : -1.0;
    s += sign * std::pow(static_cast<double>(d), -std::min(size, n - size));
  }
  return s;
}

PureDistanceCertificate pure_distance_certificate(const Matrix& projector, int k_dim,
                                                  int delta, const QuditLayout& layout) {
  check_operator(projector, layout, "P");
  const int n = layout.n();
  if (delta < 1 || delta - 1 > n) throw InputError("need 1 <= delta <= n + 1");
  if (k_dim < 1) throw InputError("K must be >= 1");
  const double idem = (projector * projector - projector).cwiseAbs().maxCoeff();
  const double herm = (projector - projector.adjoint()).cwiseAbs().maxCoeff();
  const double rank = projector.trace().real();
  if (idem > kCertificateTol || herm > kCertificateTol ||
      std::abs(rank - k_dim) > kCertificateTol) {
    throw InputError("input is not a rank-" + std::to_string(k_dim) + " projector");
  }
  const Matrix normalized = projector / static_cast<double>(k_dim);
  PureDistanceCertificate cert;
  for (const SubsetMask& t : subsets_of_size(n, delta - 1)) {
    const Matrix pt = operator_partial_trace(normalized, layout, t);
    cert.aprime += (pt * pt).trace().real();
    const Matrix pc = operator_partial_trace(normalized, layout, t.complement(n));
    cert.bprime += (pc * pc).trace().real();
  }
  cert.gap = k_dim * cert.bprime - cert.aprime;
  cert.pure_target = binomial(n, delta - 1) * std::pow(static_cast<double>(layout.d()), 1 - delta);
  cert.is_pure = std::abs(cert.aprime - cert.pure_target) <= kCertificateTol &&
                 std::abs(cert.gap) <= kCertificateTol;
  return cert;
}

}  // namespace kuniform
