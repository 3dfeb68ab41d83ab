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

#include "qadc/register.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qadc/error.hpp"
#include "qadc/mode.hpp"

namespace qadc {

double RegisterState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

GateMatrix GateMatrix::adjoint() const {
    return GateMatrix{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

GateMatrix GateMatrix::operator*(const GateMatrix& o) const {
    GateMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[static_cast<std::size_t>(2 * i + j)] = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

double GateMatrix::unitarity_defect() const {
    const GateMatrix p = adjoint() * (*this);
    return std::max({std::abs(p.m[0] - 1.0), std::abs(p.m[1]), std::abs(p.m[2]), std::abs(p.m[3] - 1.0)});
}

namespace gates {
GateMatrix identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
GateMatrix pauli_x() { return {{0.0, 1.0, 1.0, 0.0}}; }
GateMatrix pauli_y() { return {{0.0, cplx(0, -1), cplx(0, 1), 0.0}}; }
GateMatrix pauli_z() { return {{1.0, 0.0, 0.0, -1.0}}; }
GateMatrix e_gate() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{r, r, -r, r}};
}
GateMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{r, r, r, -r}};
}
}  // namespace gates

namespace detail {

void check_unitary(const GateMatrix& g, const char* stage) {
    if (g.unitarity_defect() >= 1e-9) {
        throw Error(ErrorCode::NotUnitary, stage, "gate is not unitary");
    }
}

void apply_gate_strided(std::span<cplx> data, int n, int j, const GateMatrix& g, std::size_t stride,
                        std::size_t offset) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t k = 0; k < dim; ++k) {
        if (k & bit) continue;
        cplx& a0 = data[k * stride + offset];
        cplx& a1 = data[(k | bit) * stride + offset];
        const cplx v0 = a0;
        const cplx v1 = a1;
        a0 = g.m[0] * v0 + g.m[1] * v1;
        a1 = g.m[2] * v0 + g.m[3] * v1;
    }
}

namespace {

// Decimation-in-time, recursive on even/odd halves.
void transform_rec(std::span<cplx> data, int sign, std::vector<cplx>& scratch) {
    const std::size_t n = data.size();
    if (n == 1) return;
    const std::size_t h = n / 2;
    scratch.resize(std::max(scratch.size(), n));
    for (std::size_t i = 0; i < h; ++i) {
        scratch[i] = data[2 * i];
        scratch[h + i] = data[2 * i + 1];
    }
    std::copy(scratch.begin(), scratch.begin() + static_cast<long>(n), data.begin());
    transform_rec(data.subspan(0, h), sign, scratch);
    transform_rec(data.subspan(h, h), sign, scratch);
    for (std::size_t k = 0; k < h; ++k) {
        const cplx w = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
        const cplx e = data[k];
        const cplx o = w * data[h + k];
        data[k] = e + o;
        data[h + k] = e - o;
    }
}

}  // namespace

void register_transform(std::span<cplx> data, int sign) {
    std::vector<cplx> scratch(data.size());
    transform_rec(data, sign, scratch);
    const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
    for (auto& v : data) v *= scale;
}

}  // namespace detail

namespace {

void check_qubits(int n, const char* stage) {
    if (n < 1 || n > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, stage, "qubit count must be in [1, 10], got " + std::to_string(n));
    }
}

}  // namespace

RegisterState basis_register(int n, std::size_t index) {
    check_qubits(n, "basis_register");
    const std::size_t dim = std::size_t{1} << n;
    if (index >= dim) {
        throw Error(ErrorCode::InvalidArgument, "basis_register",
                    "index " + std::to_string(index) + " out of range for " + std::to_string(n) + " qubits");
    }
    RegisterState st{n, std::vector<cplx>(dim)};
    st.amp[index] = 1.0;
    return st;
}

RegisterState apply_single(const RegisterState& state, int j, const GateMatrix& g) {
    if (j < 0 || j >= state.n_qubits) throw Error(ErrorCode::InvalidArgument, "apply_single", "qubit out of range");
    detail::check_unitary(g, "apply_single");
    RegisterState out = state;
    detail::apply_gate_strided(out.amp, out.n_qubits, j, g, 1, 0);
    return out;
}

RegisterState apply_e_all(const RegisterState& state) {
    RegisterState out = state;
    const GateMatrix e = gates::e_gate();
    for (int j = 0; j < out.n_qubits; ++j) detail::apply_gate_strided(out.amp, out.n_qubits, j, e, 1, 0);
    return out;
}

RegisterState inverse_qft(const RegisterState& state) {
    RegisterState out = state;
    detail::register_transform(out.amp, -1);
    return out;
}

RegisterState qft(const RegisterState& state) {
    RegisterState out = state;
    detail::register_transform(out.amp, +1);
    return out;
}

}  // namespace qadc
