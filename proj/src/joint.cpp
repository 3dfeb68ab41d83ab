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

#include "qadc/joint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qadc/error.hpp"

namespace qadc {

double JointState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s * grid.dx;
}

JointState tensor(const RegisterState& reg, const ModeState& mode) {
    JointState out{reg.n_qubits, mode.grid, CVector(reg.dim() * mode.grid.num_points)};
    const std::size_t M = mode.grid.num_points;
    for (std::size_t k = 0; k < reg.dim(); ++k)
        for (std::size_t i = 0; i < M; ++i) out.amp[k * M + i] = reg.amp[k] * mode.amp[i];
    return out;
}

namespace {

double weighted_z(std::span<const double> weights, std::size_t k, int n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += weights[static_cast<std::size_t>(j)] * z_eigenvalue(k, j);
    return s;
}

void check_weights(std::span<const double> weights, int n, const char* stage) {
    if (weights.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::DimensionMismatch, stage, "need one weight per qubit");
    }
}

}  // namespace

JointState ctrl_position_phase(const JointState& state, std::span<const double> weights, double kappa) {
    check_weights(weights, state.n_qubits, "ctrl_position_phase");
    JointState out = state;
    if (kappa == 0.0) return out;
    for (std::size_t k = 0; k < out.reg_dim(); ++k) {
        const double theta = kappa * weighted_z(weights, k, out.n_qubits);
        auto b = out.block(k);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] *= std::polar(1.0, theta * out.grid.x(i));
    }
    return out;
}

JointState ctrl_displacement(const JointState& state, std::span<const double> weights, double s, double leak_tol) {
    check_weights(weights, state.n_qubits, "ctrl_displacement");
    JointState out = state;
    if (s == 0.0) return out;
    for (std::size_t k = 0; k < out.reg_dim(); ++k) {
        const double shift = s * weighted_z(weights, k, out.n_qubits);
        const double leak = detail::wrap_mass(out.block(k), out.grid, shift);
        if (leak > leak_tol) {
            throw Error(ErrorCode::Leakage, "ctrl_displacement",
                        "block " + std::to_string(k) + " wraps mass " + short_num(leak) + " around the box");
        }
        detail::displace_block(out.block(k), out.grid, shift);
    }
    return out;
}

JointState mode_phase(const JointState& state, double theta) {
    JointState out = state;
    if (theta == 0.0) return out;
    std::vector<cplx> phase(out.mode_dim());
    for (std::size_t i = 0; i < phase.size(); ++i) phase[i] = std::polar(1.0, theta * out.grid.x(i));
    for (std::size_t k = 0; k < out.reg_dim(); ++k) {
        auto b = out.block(k);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] *= phase[i];
    }
    return out;
}

JointState apply_register_gate(const JointState& state, int j, const GateMatrix& g) {
    if (j < 0 || j >= state.n_qubits) {
        throw Error(ErrorCode::InvalidArgument, "apply_register_gate", "qubit out of range");
    }
    detail::check_unitary(g, "apply_register_gate");
    JointState out = state;
    const std::size_t M = out.mode_dim();
    for (std::size_t i = 0; i < M; ++i) detail::apply_gate_strided(out.amp, out.n_qubits, j, g, M, i);
    return out;
}

JointState apply_e_all(const JointState& state) {
    JointState out = state;
    const GateMatrix e = gates::e_gate();
    const std::size_t M = out.mode_dim();
    for (int j = 0; j < out.n_qubits; ++j)
        for (std::size_t i = 0; i < M; ++i) detail::apply_gate_strided(out.amp, out.n_qubits, j, e, M, i);
    return out;
}

namespace {

JointState register_transform(const JointState& state, int sign) {
    JointState out = state;
    const std::size_t M = out.mode_dim();
    const std::size_t D = out.reg_dim();
    std::vector<cplx> column(D);
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t k = 0; k < D; ++k) column[k] = out.amp[k * M + i];
        detail::register_transform(column, sign);
        for (std::size_t k = 0; k < D; ++k) out.amp[k * M + i] = column[k];
    }
    return out;
}

using RowMajorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> coefficient_map(const JointState& state) {
    return {state.amp.data(), static_cast<Eigen::Index>(state.reg_dim()),
            static_cast<Eigen::Index>(state.mode_dim())};
}

}  // namespace

JointState inverse_qft(const JointState& state) { return register_transform(state, -1); }
JointState qft(const JointState& state) { return register_transform(state, +1); }

DensityMatrix reduce_register(const JointState& state) {
    const auto a = coefficient_map(state);
    Eigen::MatrixXcd rho = state.grid.dx * (a * a.adjoint());
    // Exact Hermitian symmetry regardless of summation order.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix{std::move(rho)};
}

std::vector<double> schmidt_coefficients(const JointState& state) {
    // Singular values of the register x mode coefficient matrix equal the
    // square roots of the reduced-state eigenvalues; the Gram route keeps
    // the cost at dim^2 * M instead of a dense SVD of the wide matrix.
    const DensityMatrix rho = reduce_register(state);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) out.push_back(std::sqrt(std::max(0.0, ev[i])));
    return out;
}

SchmidtDecomposition schmidt(const JointState& state, std::size_t keep) {
    const std::size_t M = state.mode_dim();
    Eigen::MatrixXcd c = std::sqrt(state.grid.dx) * coefficient_map(state);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const std::size_t rank = static_cast<std::size_t>(sv.size());
    const std::size_t count = keep == 0 ? rank : std::min(keep, rank);

    SchmidtDecomposition out;
    out.coeffs.assign(sv.data(), sv.data() + rank);
    out.reg_vectors = svd.matrixU().leftCols(static_cast<Eigen::Index>(count));
    const double inv_sqrt_dx = 1.0 / std::sqrt(state.grid.dx);
    for (std::size_t s = 0; s < count; ++s) {
        ModeState mv{state.grid, CVector(M)};
        // c = sum_s sigma_s u_s v_s^dagger, so the mode factor is conj(v_s).
        for (std::size_t i = 0; i < M; ++i)
            mv.amp[i] = std::conj(svd.matrixV()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s))) * inv_sqrt_dx;
        out.mode_vectors.push_back(std::move(mv));
    }
    return out;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "trace_distance",
                    "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    Eigen::MatrixXcd diff = a.entries - b.entries;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().sum();
}

DensityMatrix pure_density(std::span<const cplx> psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
    return DensityMatrix{v * v.adjoint()};
}

std::vector<double> unit_weights(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }

std::vector<double> binary_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = std::ldexp(1.0, j);
    return w;
}

}  // namespace qadc
