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

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdio>
#include <limits>

#include "qadc/error.hpp"
#include "qadc/pulse.hpp"

namespace qadc {
namespace {

using Dense = Eigen::MatrixXcd;

Dense dense_x(const Grid& g) {
  const auto M = Eigen::Index(g.num_points);
  Dense x = Dense::Zero(M, M);
  for (Eigen::Index i = 0; i < M; ++i) x(i, i) = g.x(std::size_t(i));
  return x;
}

Dense dense_p(const Grid& g) {
  const auto M = Eigen::Index(g.num_points);
  Dense f(M, M), k = Dense::Zero(M, M);
  for (Eigen::Index m = 0; m < M; ++m) {
    k(m, m) = g.momentum(std::size_t(m));
    for (Eigen::Index i = 0; i < M; ++i) f(m, i) = std::polar(1 / std::sqrt(double(M)), -2 * kPi * double(m * i) / double(M));
  }
  return f.adjoint() * k * f;
}

Dense pauli_dense(PauliAxis a) {
  const GateMatrix g = pauli(a);
  Dense m(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = g(r, c);
  return m;
}

Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// Register index major, qubit 0 least significant: operator on qubit j of n.
Dense on_qubit(const Dense& q, int j, int n) {
  Dense out = Dense::Identity(1, 1);
  for (int b = n - 1; b >= 0; --b) out = kron(out, b == j ? q : Dense(Dense::Identity(2, 2)));
  return out;
}

Dense dense_generator(const HamiltonianSpec& h, const Grid& g) {
  const Dense x = dense_x(g), p = dense_p(g);
  const Dense d = x * p + p * x;
  const auto D = Eigen::Index(std::size_t{1} << h.n_qubits) * x.rows();
  Dense out = Dense::Zero(D, D);
  for (const auto& t : h.terms) {
    const Dense& op = t.op == ModeOperator::Position ? x : t.op == ModeOperator::Momentum ? p : d;
    out += t.coeff * kron(on_qubit(pauli_dense(t.axis), t.qubit, h.n_qubits), op);
  }
  return out;
}

Eigen::VectorXcd as_vector(const JointState& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amp.data(), Eigen::Index(s.amp.size()));
}

double dist(const JointState& s, const Eigen::VectorXcd& v) { return (as_vector(s) - v).norm() * std::sqrt(s.grid.dx); }

JointState probe(int n, const Grid& g, std::uint64_t seed = 4) { return random_probe_states(n, g, 1, seed).front(); }

TEST(Evolve, DiagonalTermMatchesControlledPhase) {
  const Grid g = make_grid(-10, 10, 64);
  const JointState s = probe(2, g);
  const HamiltonianSpec h{2, {{1, PauliAxis::Z, ModeOperator::Position, 0.7}}};
  const JointState a = evolve(s, h, 0.9, 0.3);
  const JointState b = ctrl_position_phase(s, std::vector<double>{0.0, 1.0}, -0.7 * 0.9);
  EXPECT_LT(state_distance(a, b), 1e-12);
}

TEST(Evolve, MatchesDenseExponential) {
  const Grid g = make_grid(-10, 10, 64);
  const HamiltonianSpec h = jaynes_cummings(1, 1.0);
  const JointState s = probe(1, g);
  const double t = 1.0;
  const Dense H = dense_generator(h, g);
  const Eigen::VectorXcd expect = (cplx(0, -t) * H).exp() * as_vector(s);
  EXPECT_LT(dist(evolve(s, h, t, t / 1024), expect), 1e-6);
  EXPECT_GT(dist(evolve(s, h, t, t / 4), expect), 1e-6);
}

TEST(Evolve, SecondOrderInDt) {
  const Grid g = make_grid(-10, 10, 64);
  const HamiltonianSpec h = jaynes_cummings(1, 1.0);
  const JointState s = probe(1, g);
  const Eigen::VectorXcd expect = (cplx(0, -1.0) * dense_generator(h, g)).exp() * as_vector(s);
  const double e1 = dist(evolve(s, h, 1.0, 0.05), expect);
  const double e2 = dist(evolve(s, h, 1.0, 0.025), expect);
  EXPECT_NEAR(e1 / e2, 4.0, 0.4);
}

TEST(Evolve, DilationTermMatchesDenseExponential) {
  const Grid g = make_grid(-8, 8, 128);
  const HamiltonianSpec h{1, {{0, PauliAxis::X, ModeOperator::Dilation, 0.3},
                              {0, PauliAxis::Z, ModeOperator::Position, 0.2}}};
  const JointState s = probe(1, g, 9);
  const Eigen::VectorXcd expect = (cplx(0, -0.5) * dense_generator(h, g)).exp() * as_vector(s);
  EXPECT_LT(dist(evolve(s, h, 0.5, 0.5 / 256), expect), 1e-4);
}

TEST(Evolve, EdgeCases) {
  const Grid g = make_grid(-10, 10, 64);
  const JointState s = probe(1, g);
  const HamiltonianSpec h = jaynes_cummings(1, 1.0);
  EXPECT_EQ(evolve(s, h, 0.0, 0.1).amp, s.amp);
  EXPECT_THROW(evolve(s, h, 1.0, 0.0), Error);
  EXPECT_THROW(evolve(s, h, 1.0, -0.1), Error);
  EXPECT_THROW(evolve(s, h, 0.1, 0.2), Error);
  EXPECT_THROW(evolve(s, jaynes_cummings(2, 1.0), 0.1, 0.1), Error);
  EXPECT_THROW(validate(HamiltonianSpec{1, {{1, PauliAxis::X, ModeOperator::Position, 1.0}}}), Error);
  EXPECT_THROW(validate(HamiltonianSpec{1, {{0, PauliAxis::X, ModeOperator::Position, NAN}}}), Error);
  // A strong kick pushes momentum content past the grid cutoff.
  const JointState far = probe(1, make_grid(-10, 10, 64));
  EXPECT_THROW(evolve(far, HamiltonianSpec{1, {{0, PauliAxis::Z, ModeOperator::Position, 9.0}}}, 1.0, 1.0), Error);
}

TEST(PauliFrame, ConjugationIsExact) {
  const Grid g = make_grid(-10, 10, 64);
  const int n = 2;
  const HamiltonianSpec h = jaynes_cummings(n, 1.0);
  const HamiltonianSpec hy = pauli_frame(h, PauliAxis::Y);
  // Only the sigma_x term changes sign.
  for (std::size_t i = 0; i < h.terms.size(); ++i)
    EXPECT_EQ(hy.terms[i].coeff, h.terms[i].axis == PauliAxis::Y ? h.terms[i].coeff : -h.terms[i].coeff);
  JointState s = probe(n, g);
  auto flip_all = [&](JointState st) {
    for (int j = 0; j < n; ++j) st = apply_register_gate(st, j, gates::pauli_y());
    return st;
  };
  const double dt = 0.05;
  const JointState a = flip_all(evolve(flip_all(s), h, dt, dt));
  const JointState b = evolve(s, hy, dt, dt);
  EXPECT_LT(state_distance(a, b), 1e-8);
}

TEST(DecouplingSequence, Structure) {
  const PulseSequence seq = decoupling_sequence(1, {DecouplingGoal::KeepMomentumAll}, 0.1, 0.4);
  ASSERT_EQ(seq.steps.size(), 4u);
  EXPECT_TRUE(seq.steps[0].rotation.empty());
  for (std::size_t i = 1; i < 4; ++i) {
    ASSERT_EQ(seq.steps[i].rotation.size(), 1u);
    EXPECT_EQ(seq.steps[i].rotation[0].m, gates::pauli_y().m);
  }
  ASSERT_EQ(seq.final_rotation.size(), 1u);
  EXPECT_EQ(seq.final_rotation[0].m, gates::pauli_y().m);
  EXPECT_NEAR(seq.total_time(), 0.4, 1e-15);
  EXPECT_THROW(decoupling_sequence(1, {DecouplingGoal::KeepMomentumAll}, 0.1, 0.3), Error);
  EXPECT_THROW(decoupling_sequence(1, {DecouplingGoal::KeepMomentumAll}, 0.1, 0.25), Error);
  EXPECT_THROW(decoupling_sequence(2, {DecouplingGoal::KeepPositionOn, 2}, 0.1, 0.2), Error);
  const PulseSequence sel = decoupling_sequence(3, {DecouplingGoal::KeepPositionOn, 1}, 0.1, 0.2);
  EXPECT_EQ(sel.steps[1].rotation[0].m, gates::pauli_z().m);
  EXPECT_EQ(sel.steps[1].rotation[1].m, gates::pauli_x().m);
  EXPECT_EQ(sel.steps[1].rotation[2].m, gates::pauli_z().m);
}

TEST(RunSequence, TrivialSequences) {
  const Grid g = make_grid(-10, 10, 64);
  const JointState s = probe(2, g);
  const HamiltonianSpec h = jaynes_cummings(2, 1.0);
  EXPECT_EQ(run_sequence(s, PulseSequence{2, {}, {}}, h).amp, s.amp);
  const std::vector<GateMatrix> y{gates::pauli_y(), gates::pauli_y()};
  const PulseSequence flips{2, {{y, 0.0}, {y, 0.0}}, {}};
  EXPECT_LT(state_distance(run_sequence(s, flips, h), s), 1e-15);
  EXPECT_THROW(run_sequence(s, PulseSequence{1, {}, {}}, h), Error);
}

TEST(RunSequence, DecoupleAllIsIdentity) {
  const Grid g = make_grid(-10, 10, 64);
  const JointState s = probe(2, g);
  const HamiltonianSpec h = jaynes_cummings(2, 1.0);
  for (double dt : {0.1, 0.05}) {
    const JointState out = run_sequence(s, decoupling_sequence(2, {DecouplingGoal::DecoupleAll}, dt, 1.0), h);
    const double err = state_distance(out, s);
    // sigma_z conjugation reverses both terms exactly, so each pair of intervals cancels.
    EXPECT_LT(err, 1.0 * dt);
    EXPECT_LT(err, 1e-10);
    EXPECT_NEAR(out.norm_sq(), 1.0, 1e-8);
  }
}

TEST(RunSequence, KeepMomentumAllIsFirstOrder) {
  BchScanConfig cfg;
  const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  const auto rows = bch_scan(cfg, dts);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(std::isnan(rows[0].ratio));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].ratio, 1.7);
    EXPECT_LE(rows[i].ratio, 2.3);
    EXPECT_EQ(rows[i].dt, dts[i]);
  }
  BchScanConfig big = cfg;
  big.n_qubits = 5;
  EXPECT_THROW(bch_scan(big, dts), Error);
}

TEST(RunSequence, SelectiveGeneratorFromLogarithm) {
  const int n = 2;
  const Grid g = make_grid(-4, 4, 32);
  const HamiltonianSpec h = jaynes_cummings(n, 1.0);
  const double t = 0.2;
  const auto D = Eigen::Index(4 * 32);
  const Dense target = kron(on_qubit(pauli_dense(PauliAxis::X), 0, n), dense_x(g));
  std::vector<double> off;
  for (double dt : {0.02, 0.01}) {
    const PulseSequence seq = decoupling_sequence(n, {DecouplingGoal::KeepPositionOn, 0}, dt, t);
    Dense U(D, D);
    for (Eigen::Index c = 0; c < D; ++c) {
      JointState e{n, g, CVector(std::size_t(D))};
      e.amp[std::size_t(c)] = 1.0;
      const JointState out = run_sequence(e, seq, h, 2, std::numeric_limits<double>::infinity());
      for (Eigen::Index r = 0; r < D; ++r) U(r, c) = out.amp[std::size_t(r)];
    }
    const Dense G = cplx(0, 1) * U.log() / t;
    const cplx coeff = (target.adjoint() * G).trace() / (target.adjoint() * target).trace();
    EXPECT_NEAR(coeff.real(), 1.0, 0.05) << dt;
    off.push_back((G - coeff * target).norm() / target.norm());
  }
  std::printf("off-target generator norm: dt=0.02 -> %.4g, dt=0.01 -> %.4g\n", off[0], off[1]);
  EXPECT_LT(off[1], 0.6 * off[0]);
}

TEST(WeightedX, MatchesBinaryControlledPhase) {
  const int n = 2;
  const Grid g = make_grid(-10, 10, 64);
  const JointState s = probe(n, g);
  const double T = 0.2;
  const std::vector<GateMatrix> had{gates::hadamard(), gates::hadamard()};
  const JointState exact = ctrl_position_phase(s, binary_weights(n), -T);
  std::vector<double> errs;
  for (double dt : {0.02, 0.01}) errs.push_back(state_distance(weighted_x_interaction(s, T, dt, 1.0, had), exact));
  EXPECT_LT(errs[1], 0.6 * errs[0]);
  EXPECT_LT(errs[1], 0.05);
}

TEST(WeightedX, TrivialCases) {
  const Grid g = make_grid(-10, 10, 64);
  const JointState s = probe(2, g);
  EXPECT_EQ(weighted_x_interaction(s, 0.0, 0.01).amp, s.amp);
  const std::vector<GateMatrix> id{gates::identity(), gates::identity()};
  EXPECT_EQ(weighted_x_interaction(s, 0.1, 0.05, 1.0, id).amp, weighted_x_interaction(s, 0.1, 0.05).amp);
  EXPECT_THROW(weighted_x_interaction(probe(5, make_grid(-10, 10, 8)), 0.1, 0.05), Error);
}

TEST(Squeeze, CommutatorConstant) {
  const cplx c = measured_commutator_constant(64, 8.0);
  EXPECT_NEAR(c.real(), 0.0, 1e-10);
  EXPECT_NEAR(c.imag(), 1.0, 1e-10);
}

TEST(Squeeze, CycleConvergesToDilation) {
  const Grid g = make_grid(-8, 8, 128);
  const ModeState psi = sample_wave(WaveSpec::gaussian(1.0, 0.5, 0.8), g);
  const JointState s = tensor(basis_register(1, 1), psi);
  EXPECT_EQ(squeeze_cycle(s, 0.1, 0).amp, s.amp);
  const double budget = 0.1;
  std::vector<double> dev;
  double best = 0;
  for (double dT : {0.05, 0.025}) {
    const int cycles = int(std::lround(budget / (dT * dT)));
    const JointState out = squeeze_cycle(s, dT, cycles);
    const JointState eff = evolve(s, squeeze_effective_hamiltonian(1), cycles * dT * dT, cycles * dT * dT);
    dev.push_back(state_distance(out, eff));
    const ModeState blk{g, CVector(out.block(1).begin(), out.block(1).end())};
    best = 0;
    for (double lam = 0.75; lam < 0.9; lam += 0.0005) best = std::max(best, fidelity(blk, dilate(psi, lam, 0.0)));
  }
  EXPECT_GE(best, 0.999);
  EXPECT_NEAR(dev[0] / dev[1], 2.0, 0.3);
}

TEST(Squeeze, ConjugationScale) {
  EXPECT_NEAR(squeeze_conjugation_scale(0.1, 0), 1.0, 1e-9);
  for (double r : {0.05, 0.1}) {
    const double f1 = squeeze_conjugation_scale(r, 1);
    EXPECT_NEAR(squeeze_conjugation_scale(r, 2), f1 * f1, 1e-6);
    EXPECT_NEAR(f1, std::exp(2 * r), 1e-6);
  }
}

TEST(Squeeze, DilationConjugatesPositionByInverseScale) {
  const Grid g = make_grid(-8, 8, 128);
  const ModeState psi = sample_wave(WaveSpec::gaussian(1.0, 0.3, 0.7), g);
  const double lambda = 2.0;
  const Dense x = dense_x(g), p = dense_p(g);
  // dilate(psi, lambda) = exp(-i tau (xp + px)) psi with lambda = exp(-2 tau).
  const Dense U = (cplx(0, -1) * (-0.5 * std::log(lambda)) * (x * p + p * x)).exp();
  Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), 128);
  const ModeState d = dilate(psi, lambda, 0.0);
  Eigen::Map<const Eigen::VectorXcd> dv(d.amp.data(), 128);
  EXPECT_LT((U * v - dv).norm() * std::sqrt(g.dx), 1e-4);
  const Eigen::VectorXcd lhs = U.adjoint() * x * U * v;
  const Eigen::VectorXcd rhs = x * v / lambda;
  EXPECT_LT((lhs - rhs).norm() * std::sqrt(g.dx), 1e-4);
}

TEST(ProbeStates, DeterministicAndNormalized) {
  const Grid g = make_grid(-10, 10, 64);
  const auto a = random_probe_states(2, g, 3, 7), b = random_probe_states(2, g, 3, 7);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].amp, b[i].amp);
    EXPECT_NEAR(a[i].norm_sq(), 1.0, 1e-10);
  }
}

}  // namespace
}  // namespace qadc
