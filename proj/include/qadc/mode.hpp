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

// The continuous degree of freedom, discretized on a uniform periodic grid.
//
// Wave functions live on a box [x_min, x_max) sampled at num_points points.
// Amplitudes are normalized with the measure dx, so dx * sum |amp|^2 = 1.
// Momentum-space operations (displacement, interpolation) are spectral and
// therefore wrap around the box; every such operation checks how much mass
// would cross the boundary and refuses when it exceeds a tolerance.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qadc {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLeakTolerance = 1e-8;

struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t num_points = 8;
    double dx = 0.125;

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
    double length() const { return x_max - x_min; }
    double center() const { return 0.5 * (x_min + x_max); }
    /// Wavenumber of FFT bin m; bins >= num_points/2 are negative frequencies
    /// (the Nyquist bin is taken as -pi/dx).
    double momentum(std::size_t m) const;

    bool operator==(const Grid&) const = default;
};

/// Throws InvalidArgument unless x_max > x_min and num_points is a power of
/// two no smaller than 8.
Grid make_grid(double x_min, double x_max, std::size_t num_points);

struct ModeState {
    Grid grid;
    CVector amp;

    double norm_sq() const;
};

/// dx * sum conj(a) b
cplx inner(const ModeState& a, const ModeState& b);
double fidelity(const ModeState& a, const ModeState& b);
ModeState normalized(ModeState state);

enum class WaveFamily { Gaussian, SineBump, Hermite, Flat };

/// Closed-form wave functions on the conversion interval [0, length].
///
///   gaussian   (2 pi w^2)^(-1/4) exp(-(x-c)^2 / (4 w^2)); w is the standard
///              deviation of |psi|^2
///   sine_bump  sqrt(2/L) sin(pi x / L) on [0, L], zero elsewhere
///   hermite    m-th Hermite function centred at c with length scale w
///   flat       1/sqrt(L) on [0, L], zero elsewhere
///
/// All families are unit-normalized on the real line.
struct WaveSpec {
    WaveFamily family = WaveFamily::Gaussian;
    double center = 0.5;
    double width = 0.1;
    int mode_index = 0;
    double length = 1.0;

    static WaveSpec gaussian(double length, double center, double width);
    static WaveSpec sine_bump(double length);
    static WaveSpec hermite(double length, double center, double width, int mode_index);
    static WaveSpec flat(double length);

    double value(double x) const;
    double derivative(double x) const;
    const char* family_name() const;
};

/// Validates family parameters (positive width and length, mode index >= 0).
void validate(const WaveSpec& spec);

/// Parses "family[:key=value,...]", e.g. "gaussian:center=0.5,width=0.1" or
/// "hermite:m=2". Keys: center, width, m. Defaults are center L/2, width L/10.
WaveSpec parse_wave(std::string_view text, double length);

/// Mass of |psi|^2 outside [a, b], by quadrature of the closed form.
double mass_outside(const WaveSpec& spec, double a, double b);

/// True when |psi| < rel_tol * max|psi| on [0, kappa L / 2^n] and on
/// [L - kappa L / 2^n, L].
bool end_vanishing(const WaveSpec& spec, int n, double kappa, double rel_tol = 1e-8);

/// Samples psi(x - shift) on the grid and renormalizes to unit L2 norm.
ModeState sample_wave(const WaveSpec& spec, const Grid& grid, double shift = 0.0);

/// psi(x) -> psi(x - s), i.e. exp(-i s p).
ModeState displace(const ModeState& state, double s, double leak_tol = kLeakTolerance);

/// psi(x) -> exp(i theta x) psi(x)
ModeState position_phase(const ModeState& state, double theta);

/// psi(x) -> sqrt(lambda) psi(c + lambda (x - c)); c defaults to the box centre.
ModeState dilate(const ModeState& state, double lambda, std::optional<double> center = std::nullopt,
                 double leak_tol = kLeakTolerance);

/// (int_0^L |psi'(x)|^2 dx)^(1/2)
double deriv_l2_norm(const WaveSpec& spec);

/// dx-weighted mass in the outer `fraction` of the box on each side.
double edge_mass(const ModeState& state, double fraction);

namespace detail {

// Block-level kernels shared with the joint system. They act on one grid
// block in place.
double wrap_mass(std::span<const cplx> block, const Grid& grid, double s);
void displace_block(std::span<cplx> block, const Grid& grid, double s);
void dilate_block(std::span<cplx> block, const Grid& grid, double lambda, double center);
double dilation_loss(std::span<const cplx> block, const Grid& grid, double lambda, double center);

}  // namespace detail

}  // namespace qadc
