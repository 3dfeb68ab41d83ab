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

// The n-qubit register. Basis index k encodes |k>, qubit 0 being the least
// significant bit.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qadc {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 10;

struct RegisterState {
    int n_qubits = 1;
    std::vector<cplx> amp;

    std::size_t dim() const { return amp.size(); }
    double norm_sq() const;
};

/// Row-major 2x2 matrix: {a00, a01, a10, a11}.
struct GateMatrix {
    std::array<cplx, 4> m{};

    cplx operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
    GateMatrix adjoint() const;
    GateMatrix operator*(const GateMatrix& o) const;
    double unitarity_defect() const;
};

namespace gates {
GateMatrix identity();
GateMatrix pauli_x();
GateMatrix pauli_y();
GateMatrix pauli_z();
/// The register-preparation gate (1/sqrt2) [[1, 1], [-1, 1]]; maps |1> to
/// (|0> + |1>)/sqrt2. Not the Hadamard.
GateMatrix e_gate();
GateMatrix hadamard();
}  // namespace gates

RegisterState basis_register(int n, std::size_t index);

/// Applies G to qubit j. Throws NotUnitary if G deviates from unitarity by
/// 1e-9 or more.
RegisterState apply_single(const RegisterState& state, int j, const GateMatrix& g);

RegisterState apply_e_all(const RegisterState& state);

/// out[l] = 2^{-n/2} sum_k exp(-2 pi i k l / 2^n) in[k]
RegisterState inverse_qft(const RegisterState& state);
/// out[l] = 2^{-n/2} sum_k exp(+2 pi i k l / 2^n) in[k]
RegisterState qft(const RegisterState& state);

/// sigma_z eigenvalue of qubit j in basis state k: +1 for bit 0, -1 for bit 1.
inline int z_eigenvalue(std::size_t k, int j) { return ((k >> j) & 1U) ? -1 : 1; }

namespace detail {

void check_unitary(const GateMatrix& g, const char* stage);

/// Unitary radix-2 transform of a 2^n vector in place; sign = -1 gives the
/// inverse QFT convention above, +1 the forward one.
void register_transform(std::span<cplx> data, int sign);

/// Applies g to qubit j of a strided register vector: element k lives at
/// data[k * stride + offset].
void apply_gate_strided(std::span<cplx> data, int n, int j, const GateMatrix& g, std::size_t stride,
                        std::size_t offset);

}  // namespace detail

}  // namespace qadc
