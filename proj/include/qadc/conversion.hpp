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

// Analogue-to-digital conversion of a wave function into a qubit register
// by phase estimation, its time reverse (digital-to-analogue), the ideal
// digitized targets and the trace-norm error bound.
//
// The mode is simulated on [-L, 2L]. The pipeline on |1,...,1> (x) psi~ is
//
//   shift        controlled displacement that moves psi~ right by L/2
//   phase        controlled position phase giving exp(i pi (2^n - 1) x / L)
//                on |1,...,1>
//   superpose    E on every qubit
//   kickback     controlled position phase with weights 2^j, kappa = -pi/L
//   inverse_qft  on the register
//   recentre     controlled displacement with weights 2^j, s = L / 2^(n+1)
//
// After the last stage block l holds psi(l L / 2^n + x') g(x'/L) around
// h = L (2^n - 1) / 2^(n+1).

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qadc/joint.hpp"
#include "qadc/mode.hpp"
#include "qadc/register.hpp"

namespace qadc {

struct ConversionConfig {
    double length = 1.0;
    std::size_t grid_points = 0;  // 0 selects default_grid_points(n)
    double kappa = 4.0;           // window half-width W = kappa L / 2^n
    double leak_tol = kLeakTolerance;
};

/// 4096 up to seven qubits, 2^n * 64 beyond.
std::size_t default_grid_points(int n);
Grid conversion_grid(const ConversionConfig& cfg, int n);
double window_half_width(const ConversionConfig& cfg, int n);

struct ConversionReport {
    int n = 0;
    double length = 1.0;
    std::size_t grid_points = 0;
    double trace_dist = 0.0;      // ||rho - rho0||_1
    double fidelity_pure = 0.0;   // <Psi~|rho|Psi~>
    double schmidt_top = 0.0;     // largest Schmidt coefficient squared
    double appendix_bound = 0.0;
    double b_estimate = 0.0;      // appendix_bound * 2^n
    double elapsed = 0.0;         // seconds
    bool end_vanishing_ok = false;
};

inline constexpr std::size_t kAdStages = 7;
extern const std::array<const char*, kAdStages> kAdStageNames;

struct AdResult {
    JointState state;
    ConversionReport report;
    RegisterState ideal;
    DensityMatrix rho;
    std::array<double, kAdStages> stage_norm_error{};  // |norm^2 - 1| after each stage
};

/// g(y) = 2^{-n/2} sum_{k<2^n} exp(2 pi i k y); equals 2^{n/2} at integers.
cplx dirichlet_g(double y, int n);
std::vector<cplx> dirichlet_g(std::span<const double> y, int n);

/// int_{-w}^{w} |g(y)|^2 |y| dy
double dirichlet_abs_moment(int n, double w);

/// Normalization constant d of the ideal register state.
double ideal_normalization(const WaveSpec& spec, int n);
/// <j|Psi~> = d 2^{-n/2} psi(j L / 2^n)
RegisterState ideal_state(const WaveSpec& spec, int n);

using StageObserver = std::function<void(std::size_t stage, const JointState&)>;

/// Stages shift..recentre applied to a joint state (in place semantics on a copy).
JointState ad_unitary(JointState state, double length, double leak_tol = kLeakTolerance,
                      const StageObserver& observer = {});
/// Exact adjoint of ad_unitary (stages in reverse order, each inverted).
JointState ad_unitary_adjoint(JointState state, double length, double leak_tol = kLeakTolerance);

AdResult ad_convert(const WaveSpec& spec, int n, const ConversionConfig& cfg = {});

/// rho[j,k] = 2^{-n} int_{-W}^{W} |g(x/L)|^2 psi(jL/2^n + x) conj(psi(kL/2^n + x)) dx,
/// normalized to unit trace.
DensityMatrix rho_quadrature_oracle(const WaveSpec& spec, int n, double W);

/// 4 L ||psi'||_2 int_{-W/L}^{W/L} |g(y)|^2 |y| dy, the trace-norm bound with
/// the interval length restored.
double appendix_bound(const WaveSpec& spec, int n, double W);

/// g((x - h)/L) on |x - h| <= half_window (default L/2), normalized.
ModeState standard_mode(int n, const Grid& grid, double length, double half_window = -1.0);

struct DaResult {
    ModeState mode;       // principal Schmidt mode vector, in the frame of psi~
    double schmidt_top = 0.0;
    JointState state;     // joint state after the adjoint pipeline
};

DaResult da_convert(const RegisterState& reg, int n, const ConversionConfig& cfg = {});

struct RoundtripReport {
    int n = 0;
    double fidelity_l2 = 0.0;   // |<psi~|mode>|^2
    double schmidt_top = 0.0;
    double appendix_bound = 0.0;
    bool warning = false;       // bound >= 1: n too small for this wave's smoothness
};

// ideal_state(spec, n) -> da_convert -> compare with the prepared input psi~.
RoundtripReport roundtrip(const WaveSpec& spec, int n, const ConversionConfig& cfg = {});

struct SweepTable {
    std::vector<ConversionReport> rows;
    std::vector<double> slope_running;  // slope over rows [0, i]; NaN for i = 0
    double slope = 0.0;
};

/// Least-squares slope of log2(y) against x.
double fit_log2_slope(std::span<const double> x, std::span<const double> y);

/// Threads: 0 uses default_threads().
SweepTable error_sweep(const WaveSpec& spec, int n_min, int n_max, const ConversionConfig& cfg = {},
                       unsigned threads = 0);

/// min(hardware concurrency, $QADC_THREADS) with a floor of one.
unsigned default_threads();

}  // namespace qadc
