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

// Register (x) mode joint states and the operators that couple the two.
//
// Layout: amp[k * M + i] = (<k| (x) <x_i|) state, with M grid points. The
// joint norm uses the grid measure: dx * sum |amp|^2 = 1.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "qadc/mode.hpp"
#include "qadc/register.hpp"

namespace qadc {

struct JointState {
    int n_qubits = 1;
    Grid grid;
    CVector amp;

    std::size_t reg_dim() const { return std::size_t{1} << n_qubits; }
    std::size_t mode_dim() const { return grid.num_points; }
    std::span<cplx> block(std::size_t k) { return {amp.data() + k * mode_dim(), mode_dim()}; }
    std::span<const cplx> block(std::size_t k) const { return {amp.data() + k * mode_dim(), mode_dim()}; }
    double norm_sq() const;
};

struct DensityMatrix {
    Eigen::MatrixXcd entries;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

struct SchmidtDecomposition {
    std::vector<double> coeffs;               // descending
    Eigen::MatrixXcd reg_vectors;             // column s is |alpha_s>
    std::vector<ModeState> mode_vectors;      // |beta_s>, unit dx-norm
};

JointState tensor(const RegisterState& reg, const ModeState& mode);

/// exp(i kappa sum_j w_j sigma_z^(j) (x) x)
JointState ctrl_position_phase(const JointState& state, std::span<const double> weights, double kappa);

/// exp(-i s sum_j w_j sigma_z^(j) (x) p): block k moves by s * sum_j w_j z_j(k).
JointState ctrl_displacement(const JointState& state, std::span<const double> weights, double s,
                             double leak_tol = kLeakTolerance);

/// 1 (x) exp(i theta x)
JointState mode_phase(const JointState& state, double theta);

/// Register-only operations lifted to the joint space.
JointState apply_register_gate(const JointState& state, int j, const GateMatrix& g);
JointState apply_e_all(const JointState& state);
JointState inverse_qft(const JointState& state);
JointState qft(const JointState& state);

DensityMatrix reduce_register(const JointState& state);
/// Singular values only, descending (cheaper than the full decomposition).
std::vector<double> schmidt_coefficients(const JointState& state);
SchmidtDecomposition schmidt(const JointState& state, std::size_t keep = 0);

/// ||a - b||_1, via the eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// Trace norm of a general square matrix (sum of singular values).
double trace_norm(const Eigen::MatrixXcd& m);

DensityMatrix pure_density(std::span<const cplx> psi);

/// Weight vectors used by the conversion operators.
std::vector<double> unit_weights(int n);
std::vector<double> binary_weights(int n);

}  // namespace qadc
