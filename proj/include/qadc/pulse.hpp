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

// Physical-time simulation of qubit-mode interactions: split-step evolution,
// bang-bang decoupling sequences, the weighted position interaction built
// from selective sequences, and the four-Hamiltonian squeezing cycle.
//
// Units: hbar = 1, m omega = 1. The natural resource Hamiltonian is
//   H = c sum_j (sigma_x^(j) (x) x - sigma_y^(j) (x) p).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qadc/joint.hpp"
#include "qadc/mode.hpp"
#include "qadc/register.hpp"

namespace qadc {

enum class PauliAxis { X, Y, Z };
enum class ModeOperator { Position, Momentum, Dilation };  // Dilation = x p + p x

struct HamiltonianTerm {
    int qubit = 0;
    PauliAxis axis = PauliAxis::Z;
    ModeOperator op = ModeOperator::Position;
    double coeff = 0.0;
};

struct HamiltonianSpec {
    int n_qubits = 1;
    std::vector<HamiltonianTerm> terms;
};

void validate(const HamiltonianSpec& h);
/// c sum_j (sigma_x (x) x - sigma_y (x) p)
HamiltonianSpec jaynes_cummings(int n, double c);
/// The Hamiltonian seen after conjugating every qubit by the given Pauli:
/// terms along the other two axes change sign.
HamiltonianSpec pauli_frame(const HamiltonianSpec& h, PauliAxis flip);
GateMatrix pauli(PauliAxis axis);

/// Second-order symmetric split-step propagation of exp(-i t H). Position
/// and momentum factors are exact in their own basis; dilation factors are
/// exact band-limited resamplings about x = 0. Throws on dt <= 0 and on mass
/// reaching the outer 1/32 of the box or of the momentum range.
JointState evolve(const JointState& state, const HamiltonianSpec& h, double t, double dt,
                  double leak_tol = kLeakTolerance);

struct PulseStep {
    std::vector<GateMatrix> rotation;  // one gate per qubit, empty = none
    double duration = 0.0;
};

/// Instantaneous rotations interleaved with free evolution; final_rotation
/// is applied after the last interval.
struct PulseSequence {
    int n_qubits = 1;
    std::vector<PulseStep> steps;
    std::vector<GateMatrix> final_rotation;

    double total_time() const;
};

enum class DecouplingGoal { KeepMomentumAll, KeepPositionAll, DecoupleAll, KeepPositionOn };

struct DecouplingTarget {
    DecouplingGoal goal = DecouplingGoal::KeepMomentumAll;
    int qubit = 0;  // for KeepPositionOn
};

/// Alternates intervals of length dt with the goal's frame flips:
///   keep_p_all       sigma_y on every qubit  -> exp(i t c sum sigma_y (x) p)
///   keep_x_all       sigma_x on every qubit  -> exp(-i t c sum sigma_x (x) x)
///   decouple_all     sigma_z on every qubit  -> identity
///   keep_x_on(j)     sigma_x on j, sigma_z elsewhere -> exp(-i t c sigma_x^(j) (x) x)
/// t / dt must be an even integer.
PulseSequence decoupling_sequence(int n, DecouplingTarget target, double dt, double t);

/// Each interval is propagated with `substeps` split steps.
JointState run_sequence(const JointState& state, const PulseSequence& seq, const HamiltonianSpec& h,
                        int substeps = 2, double leak_tol = kLeakTolerance);

/// exp(-i c 2^j base_T (U_j sigma_x U_j^dagger)^(j) (x) x) for every qubit, each
/// from a keep_x_on(j) sequence of length 2^j base_T. Empty frames means U_j = 1.
JointState weighted_x_interaction(const JointState& state, double base_T, double dt, double c = 1.0,
                                  std::span<const GateMatrix> frames = {});

/// Per cycle, for dT each: sigma_x (x) x, sigma_y (x) p, -sigma_x (x) x, -sigma_y (x) p
/// (applied to every qubit).
JointState squeeze_cycle(const JointState& state, double dT, int cycles);

/// The generator the squeezing cycle approximates: cycles dT^2 of
/// exp(i sigma_z (x) (x p + p x)) per qubit, from the measured commutator constant.
HamiltonianSpec squeeze_effective_hamiltonian(int n);

/// Constant c with [sigma_x (x) x, sigma_y (x) p] = c sigma_z (x) (x p + p x),
/// measured on dense n = 1 matrices.
cplx measured_commutator_constant(std::size_t grid_points = 64, double half_box = 8.0);

struct ConjugationProbe {
    std::size_t grid_points = 128;
    double half_box = 8.0;
    double center = 1.0;
    double width = 0.7;
    double theta = 0.05;
};

/// f with S(r)^k x S(-r)^k = f x, where S(r) = exp[i r (x p + p x)] is built
/// as a dense matrix exponential; f is read off the conjugated evolution
/// exp(-i theta sigma_z (x) x) on a probe packet.
double squeeze_conjugation_scale(double r, int k, const ConjugationProbe& probe = {});

struct BchScanConfig {
    int n_qubits = 2;
    std::size_t grid_points = 64;
    double half_box = 10.0;
    double coupling = 1.0;
    double total_time = 1.0;
    int samples = 20;
    int substeps = 2;
    std::uint64_t seed = 1;
};

struct BchRow {
    double dt = 0.0;
    double error_bt = 0.0;        // mean || seq psi - B_T psi ||
    double error_decouple = 0.0;  // mean || seq psi - psi ||
    double ratio = 0.0;           // error_bt(previous dt) / error_bt(dt); NaN in the first row
};

std::vector<JointState> random_probe_states(int n, const Grid& grid, int count, std::uint64_t seed);
double state_distance(const JointState& a, const JointState& b);

std::vector<BchRow> bch_scan(const BchScanConfig& cfg, std::span<const double> dts);

}  // namespace qadc
