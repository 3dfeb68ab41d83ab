// Copyright 2026 The qadc Authors
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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <random>

#include "qadc/error.hpp"
#include "qadc/joint.hpp"

namespace qadc {
namespace {

constexpr double L = 1.0;

Grid box(std::size_t m = 1024) { return make_grid(-L, 2 * L, m); }

ModeState gauss(const Grid& g, double c = 0.5, double w = 0.1) { return sample_wave(WaveSpec::gaussian(L, c, w), g); }

RegisterState random_register(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  RegisterState r{n, std::vector<cplx>(std::size_t{1} << n)};
  double s = 0;
  for (auto& a : r.amp) {
    a = {nd(rng), nd(rng)};
    s += std::norm(a);
  }
  for (auto& a : r.amp) a /= std::sqrt(s);
  return r;
}

// Entangled state: block k holds a gaussian centred at c_k with a random weight.
JointState random_joint(int n, const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(0.2, 0.8);
  const RegisterState r = random_register(n, rng);
  JointState st{n, g, CVector(r.dim() * g.num_points)};
  for (std::size_t k = 0; k < r.dim(); ++k) {
    const ModeState m = gauss(g, ud(rng), 0.08);
    for (std::size_t i = 0; i < g.num_points; ++i) st.amp[k * g.num_points + i] = r.amp[k] * m.amp[i];
  }
  return st;
}

double sup_diff(const CVector& a, const CVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(Tensor, LayoutAndNorm) {
  const Grid g = box(64);
  const ModeState m = gauss(g);
  std::mt19937_64 rng(1);
  const RegisterState r = random_register(2, rng);
  const JointState st = tensor(r, m);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(st.amp[k * 64 + i], r.amp[k] * m.amp[i]);
  EXPECT_NEAR(st.norm_sq(), 1.0, 1e-12);
  const DensityMatrix rho = reduce_register(st);
  const auto sc = schmidt_coefficients(st);
  EXPECT_NEAR(sc.front(), 1.0, 1e-12);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      EXPECT_NEAR(std::abs(rho.entries(Eigen::Index(a), Eigen::Index(b)) - r.amp[a] * std::conj(r.amp[b])), 0, 1e-12);
}

TEST(CtrlPositionPhase, MatchesClosedForm) {
  const Grid g = box(256);
  std::mt19937_64 rng(2);
  const JointState st = random_joint(3, g, rng);
  const std::vector<double> w{1.0, 2.0, -1.5};
  const double kappa = 0.7;
  const JointState out = ctrl_position_phase(st, w, kappa);
  for (std::size_t k = 0; k < 8; ++k) {
    double s = 0;
    for (int j = 0; j < 3; ++j) s += w[std::size_t(j)] * z_eigenvalue(k, j);
    for (std::size_t i = 0; i < g.num_points; ++i) {
      const cplx expect = st.amp[k * 256 + i] * std::polar(1.0, kappa * s * g.x(i));
      EXPECT_LT(std::abs(out.amp[k * 256 + i] - expect), 1e-14);
    }
  }
  EXPECT_LT(sup_diff(ctrl_position_phase(st, w, 0.0).amp, st.amp), 1e-15);
}

TEST(CtrlPositionPhase, AllOnesOrientation) {
  // On |1,...,1> every z_j = -1, so unit weights give exp(-i n kappa x).
  const int n = 3;
  const Grid g = box(256);
  const ModeState m = gauss(g);
  const double kappa = 0.9;
  const JointState out = ctrl_position_phase(tensor(basis_register(n, 7), m), unit_weights(n), kappa);
  const ModeState expect = position_phase(m, -n * kappa);
  for (std::size_t i = 0; i < 256; ++i) EXPECT_LT(std::abs(out.amp[7 * 256 + i] - expect.amp[i]), 1e-14);
}

TEST(CtrlPositionPhase, BinaryWeightsGiveFourierPhase) {
  const int n = 2;
  const std::size_t N = 4, M = 64;
  const Grid g = box(M);
  std::mt19937_64 rng(3);
  const JointState st = random_joint(n, g, rng);
  const JointState out =
      mode_phase(ctrl_position_phase(st, binary_weights(n), -kPi / L), kPi * double(N - 1) / L);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < M; ++i) {
      const cplx expect = std::polar(1.0, 2 * kPi * double(k) * g.x(i) / L) * st.amp[k * M + i];
      EXPECT_LT(std::abs(out.amp[k * M + i] - expect), 1e-12);
    }
}

TEST(ModePhase, CommutesWithControlledPhase) {
  const Grid g = box(128);
  std::mt19937_64 rng(4);
  const JointState st = random_joint(2, g, rng);
  const auto w = binary_weights(2);
  const JointState a = mode_phase(ctrl_position_phase(st, w, 0.4), 1.1);
  const JointState b = ctrl_position_phase(mode_phase(st, 1.1), w, 0.4);
  EXPECT_LT(sup_diff(a.amp, b.amp), 1e-15);
  EXPECT_LT(sup_diff(mode_phase(st, 0.0).amp, st.amp), 1e-15);
}

TEST(CtrlDisplacement, AllOnesShiftsRight) {
  const int n = 3;
  const Grid g = box(2048);
  const ModeState m = gauss(g, 0.0);
  const JointState out = ctrl_displacement(tensor(basis_register(n, 7), m), unit_weights(n), -L / (2 * n));
  const ModeState expect = gauss(g, L / 2);
  for (std::size_t i = 0; i < g.num_points; ++i) EXPECT_LT(std::abs(out.amp[7 * 2048 + i] - expect.amp[i]), 1e-8);
}

TEST(CtrlDisplacement, BinaryWeightsPerBlockShift) {
  const int n = 3;
  const std::size_t N = 8, M = 2048;
  const Grid g = box(M);
  const ModeState m = gauss(g, 0.0, 0.05);
  RegisterState r{n, std::vector<cplx>(N, 1 / std::sqrt(double(N)))};
  const JointState out = ctrl_displacement(tensor(r, m), binary_weights(n), L / std::ldexp(1.0, n + 1));
  const double h = L * double(N - 1) / std::ldexp(1.0, n + 1);
  for (std::size_t l = 0; l < N; ++l) {
    const ModeState expect = gauss(g, h - double(l) * L / double(N), 0.05);
    double d = 0;
    for (std::size_t i = 0; i < M; ++i) d = std::max(d, std::abs(out.amp[l * M + i] - expect.amp[i] / std::sqrt(8.0)));
    EXPECT_LT(d, 1e-8) << l;
  }
}

TEST(CtrlDisplacement, IdentityAdditiveUnitary) {
  const Grid g = box(1024);
  std::mt19937_64 rng(5);
  const JointState st = random_joint(2, g, rng);
  const auto w = binary_weights(2);
  EXPECT_LT(sup_diff(ctrl_displacement(st, w, 0.0).amp, st.amp), 1e-14);
  const JointState a = ctrl_displacement(ctrl_displacement(st, w, 0.05), w, 0.07);
  EXPECT_LT(sup_diff(a.amp, ctrl_displacement(st, w, 0.12).amp), 1e-10);
  EXPECT_NEAR(a.norm_sq(), st.norm_sq(), 1e-10);
  EXPECT_NEAR(ctrl_position_phase(st, w, 3.0).norm_sq(), st.norm_sq(), 1e-10);
}

TEST(CtrlDisplacement, LeakageAndWeightCount) {
  const Grid g = box(256);
  const JointState st = tensor(basis_register(2, 0), gauss(g));
  EXPECT_THROW(ctrl_displacement(st, binary_weights(2), 0.6), Error);
  EXPECT_THROW(ctrl_displacement(st, binary_weights(3), 0.1), Error);
}

TEST(ReduceRegister, MaximallyCorrelated) {
  const Grid g = box(1024);
  const ModeState a = gauss(g, 0.1, 0.05), b = gauss(g, 0.9, 0.05);
  JointState st{1, g, CVector(2 * 1024)};
  for (std::size_t i = 0; i < 1024; ++i) {
    st.amp[i] = a.amp[i] / std::sqrt(2.0);
    st.amp[1024 + i] = b.amp[i] / std::sqrt(2.0);
  }
  const DensityMatrix rho = reduce_register(st);
  EXPECT_NEAR(rho.entries(0, 0).real(), 0.5, 1e-10);
  EXPECT_NEAR(rho.entries(1, 1).real(), 0.5, 1e-10);
  EXPECT_NEAR(std::abs(rho.entries(0, 1)), 0.0, 1e-10);
  const auto sc = schmidt_coefficients(st);
  EXPECT_NEAR(sc[0], 1 / std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(sc[1], 1 / std::sqrt(2.0), 1e-8);
}

TEST(ReduceRegister, MatchesDirectSumAndIsDensity) {
  const Grid g = box(256);
  std::mt19937_64 rng(6);
  JointState st = random_joint(3, g, rng);
  st = inverse_qft(apply_e_all(ctrl_position_phase(st, binary_weights(3), 2.0)));
  const DensityMatrix rho = reduce_register(st);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      cplx s = 0;
      for (std::size_t i = 0; i < 256; ++i) s += st.amp[a * 256 + i] * std::conj(st.amp[b * 256 + i]);
      EXPECT_LT(std::abs(rho.entries(Eigen::Index(a), Eigen::Index(b)) - s * g.dx), 1e-12);
    }
  EXPECT_NEAR(rho.entries.trace().real(), 1.0, 1e-8);
  EXPECT_LT((rho.entries - rho.entries.adjoint()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-8);
}

TEST(Schmidt, TopMatchesLargestEigenvalue) {
  const Grid g = box(256);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const JointState st = random_joint(3, g, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduce_register(st).entries);
    const auto full = schmidt(st);
    EXPECT_NEAR(full.coeffs[0] * full.coeffs[0], es.eigenvalues().maxCoeff(), 1e-8);
    EXPECT_NEAR(schmidt_coefficients(st)[0], full.coeffs[0], 1e-8);
    EXPECT_NEAR(full.mode_vectors[0].norm_sq(), 1.0, 1e-10);
    double s = 0;
    for (double c : full.coeffs) s += c * c;
    EXPECT_NEAR(s, 1.0, 1e-10);
    // Reconstruct the state from the decomposition.
    CVector rebuilt(st.amp.size());
    for (std::size_t q = 0; q < full.coeffs.size(); ++q)
      for (std::size_t k = 0; k < 8; ++k)
        for (std::size_t i = 0; i < 256; ++i)
          rebuilt[k * 256 + i] += full.coeffs[q] * full.reg_vectors(Eigen::Index(k), Eigen::Index(q)) *
                                  full.mode_vectors[q].amp[i];
    EXPECT_LT(sup_diff(rebuilt, st.amp), 1e-9);
  }
}

TEST(TraceDistance, Basics) {
  const std::vector<cplx> a{1.0, 0.0}, b{0.0, 1.0};
  EXPECT_NEAR(trace_distance(pure_density(a), pure_density(a)), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(pure_density(a), pure_density(b)), 2.0, 1e-15);
  EXPECT_THROW(trace_distance(pure_density(a), DensityMatrix{Eigen::MatrixXcd::Identity(4, 4)}), Error);
}

TEST(TraceDistance, MatchesSingularValueSum) {
  std::mt19937_64 rng(8);
  const Grid g = box(128);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix a = reduce_register(random_joint(2, g, rng));
    const DensityMatrix b = reduce_register(random_joint(2, g, rng));
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a.entries - b.entries);
    EXPECT_NEAR(trace_distance(a, b), svd.singularValues().sum(), 1e-10);
  }
}

TEST(TraceNorm, MatchesEigenOracleOnGeneralMatrices) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd m(5, 5);
    for (Eigen::Index i = 0; i < 25; ++i) m(i) = cplx(nd(rng), nd(rng));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
    EXPECT_NEAR(trace_norm(m), es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum(), 1e-10);
  }
}

TEST(Properties, HolderInequality) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> nd;
  const Grid g = box(128);
  const DensityMatrix rho = reduce_register(random_joint(3, g, rng));
  const RegisterState r0 = random_register(3, rng);
  const DensityMatrix rho0 = pure_density(r0.amp);
  const double tn = trace_distance(rho, rho0);
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::MatrixXcd a(8, 8);
    for (Eigen::Index i = 0; i < 64; ++i) a(i) = cplx(nd(rng), nd(rng));
    a = 0.5 * (a + a.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    a /= es.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_LE(std::abs(((rho.entries - rho0.entries) * a).trace()), tn + 1e-9);
  }
}

TEST(Properties, RankTwoTraceNormBound) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  double worst = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::VectorXcd a(16), b(16);
    for (Eigen::Index i = 0; i < 16; ++i) a(i) = cplx(nd(rng), nd(rng)), b(i) = cplx(nd(rng), nd(rng));
    const double tn = trace_norm(a * b.adjoint() + b * a.adjoint());
    const double scale = a.norm() * b.norm();
    EXPECT_LE(tn, 4 * scale);
    EXPECT_LE(tn, 2 * scale + 1e-12);
    worst = std::max(worst, tn / scale);
  }
  std::printf("max ||ab* + ba*||_1 / (|a||b|) over 100 pairs: %.6f\n", worst);
}

TEST(JointGates, QftPairAndEAllMatchRegister) {
  const Grid g = box(64);
  std::mt19937_64 rng(12);
  const JointState st = random_joint(3, g, rng);
  EXPECT_LT(sup_diff(qft(inverse_qft(st)).amp, st.amp), 1e-12);
  const ModeState m = gauss(g);
  const RegisterState r = random_register(3, rng);
  EXPECT_LT(sup_diff(inverse_qft(tensor(r, m)).amp, tensor(inverse_qft(r), m).amp), 1e-13);
  EXPECT_LT(sup_diff(apply_e_all(tensor(r, m)).amp, tensor(apply_e_all(r), m).amp), 1e-14);
  EXPECT_LT(sup_diff(apply_register_gate(tensor(r, m), 1, gates::pauli_y()).amp,
                     tensor(apply_single(r, 1, gates::pauli_y()), m).amp),
            1e-15);
}

}  // namespace
}  // namespace qadc
