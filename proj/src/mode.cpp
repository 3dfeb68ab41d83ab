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

#include "qadc/mode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fft.hpp"
#include "qadc/error.hpp"
#include "quadrature.hpp"

namespace qadc {

double Grid::momentum(std::size_t m) const {
    const double dk = 2.0 * kPi / length();
    const auto half = num_points / 2;
    if (m < half) return dk * static_cast<double>(m);
    return dk * (static_cast<double>(m) - static_cast<double>(num_points));
}

Grid make_grid(double x_min, double x_max, std::size_t num_points) {
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw Error(ErrorCode::InvalidArgument, "make_grid", "x_max must exceed x_min");
    }
    if (num_points < 8 || !std::has_single_bit(num_points)) {
        throw Error(ErrorCode::InvalidArgument, "make_grid",
                    "num_points must be a power of two >= 8, got " + std::to_string(num_points));
    }
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.num_points = num_points;
    g.dx = (x_max - x_min) / static_cast<double>(num_points);
    return g;
}

double ModeState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s * grid.dx;
}

cplx inner(const ModeState& a, const ModeState& b) {
    if (!(a.grid == b.grid)) {
        throw Error(ErrorCode::DimensionMismatch, "inner", "states live on different grids");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s * a.grid.dx;
}

double fidelity(const ModeState& a, const ModeState& b) { return std::norm(inner(a, b)); }

ModeState normalized(ModeState state) {
    const double n2 = state.norm_sq();
    if (n2 <= 0.0) throw Error(ErrorCode::InvalidArgument, "normalized", "zero state");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : state.amp) a *= scale;
    return state;
}

// --- closed-form waves ------------------------------------------------------

WaveSpec WaveSpec::gaussian(double length, double center, double width) {
    return WaveSpec{WaveFamily::Gaussian, center, width, 0, length};
}

WaveSpec WaveSpec::sine_bump(double length) {
    return WaveSpec{WaveFamily::SineBump, 0.5 * length, length, 0, length};
}

WaveSpec WaveSpec::hermite(double length, double center, double width, int mode_index) {
    return WaveSpec{WaveFamily::Hermite, center, width, mode_index, length};
}

WaveSpec WaveSpec::flat(double length) {
    return WaveSpec{WaveFamily::Flat, 0.5 * length, length, 0, length};
}

const char* WaveSpec::family_name() const {
    switch (family) {
        case WaveFamily::Gaussian: return "gaussian";
        case WaveFamily::SineBump: return "sine_bump";
        case WaveFamily::Hermite: return "hermite";
        case WaveFamily::Flat: return "flat";
    }
    return "unknown";
}

void validate(const WaveSpec& spec) {
    if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
        throw Error(ErrorCode::InvalidArgument, "wave", "length must be positive");
    }
    if (!(spec.width > 0.0) || !std::isfinite(spec.width) || !std::isfinite(spec.center)) {
        throw Error(ErrorCode::InvalidArgument, "wave", "width must be positive and finite");
    }
    if (spec.mode_index < 0 || spec.mode_index > 64) {
        throw Error(ErrorCode::InvalidArgument, "wave", "hermite mode index out of range [0, 64]");
    }
}

WaveSpec parse_wave(std::string_view text, double length) {
    const auto colon = text.find(':');
    const std::string_view family = text.substr(0, colon);
    WaveSpec spec;
    if (family == "gaussian") {
        spec = WaveSpec::gaussian(length, 0.5 * length, 0.1 * length);
    } else if (family == "sine_bump") {
        spec = WaveSpec::sine_bump(length);
    } else if (family == "hermite") {
        spec = WaveSpec::hermite(length, 0.5 * length, 0.1 * length, 0);
    } else if (family == "flat") {
        spec = WaveSpec::flat(length);
    } else {
        throw Error(ErrorCode::InvalidArgument, "wave", "unknown family '" + std::string(family) + "'");
    }
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidArgument, "wave", "expected key=value, got '" + std::string(item) + "'");
        }
        const std::string key(item.substr(0, eq));
        const std::string val(item.substr(eq + 1));
        char* end = nullptr;
        const double v = std::strtod(val.c_str(), &end);
        if (val.empty() || end != val.c_str() + val.size()) {
            throw Error(ErrorCode::InvalidArgument, "wave", "bad number '" + val + "' for " + key);
        }
        const bool shaped = spec.family == WaveFamily::Gaussian || spec.family == WaveFamily::Hermite;
        if (key == "center" && shaped) {
            spec.center = v;
        } else if (key == "width" && shaped) {
            spec.width = v;
        } else if (key == "m" && spec.family == WaveFamily::Hermite) {
            if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, "wave", "m must be an integer");
            spec.mode_index = static_cast<int>(v);
        } else {
            throw Error(ErrorCode::InvalidArgument, "wave",
                        "key '" + key + "' does not apply to " + std::string(spec.family_name()));
        }
    }
    validate(spec);
    return spec;
}

namespace {

// Normalized Hermite functions phi_0..phi_{m+1} at u, by the three-term
// recurrence (stable for moderate m, no factorial overflow).
void hermite_functions(double u, int m, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(m) + 2, 0.0);
    out[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
    if (m + 1 >= 1) out[1] = std::sqrt(2.0) * u * out[0];
    for (int k = 1; k <= m; ++k) {
        out[k + 1] = std::sqrt(2.0 / (k + 1)) * u * out[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
    }
}

}  // namespace

double WaveSpec::value(double x) const {
    switch (family) {
        case WaveFamily::Gaussian: {
            const double u = x - center;
            return std::pow(2.0 * kPi * width * width, -0.25) * std::exp(-u * u / (4.0 * width * width));
        }
        case WaveFamily::SineBump:
            if (x < 0.0 || x > length) return 0.0;
            return std::sqrt(2.0 / length) * std::sin(kPi * x / length);
        case WaveFamily::Hermite: {
            std::vector<double> phi;
            hermite_functions((x - center) / width, mode_index, phi);
            return phi[static_cast<std::size_t>(mode_index)] / std::sqrt(width);
        }
        case WaveFamily::Flat:
            if (x < 0.0 || x > length) return 0.0;
            return 1.0 / std::sqrt(length);
    }
    return 0.0;
}

double WaveSpec::derivative(double x) const {
    switch (family) {
        case WaveFamily::Gaussian: {
            const double u = x - center;
            return -u / (2.0 * width * width) * value(x);
        }
        case WaveFamily::SineBump:
            if (x < 0.0 || x > length) return 0.0;
            return std::sqrt(2.0 / length) * (kPi / length) * std::cos(kPi * x / length);
        case WaveFamily::Hermite: {
            // phi_m' = sqrt(m/2) phi_{m-1} - sqrt((m+1)/2) phi_{m+1}
            std::vector<double> phi;
            const int m = mode_index;
            hermite_functions((x - center) / width, m, phi);
            double d = -std::sqrt((m + 1) / 2.0) * phi[static_cast<std::size_t>(m) + 1];
            if (m > 0) d += std::sqrt(m / 2.0) * phi[static_cast<std::size_t>(m) - 1];
            return d / (width * std::sqrt(width));
        }
        case WaveFamily::Flat:
            return 0.0;
    }
    return 0.0;
}

namespace {

// Interval outside which the closed form is exactly zero or below double
// precision.
std::pair<double, double> support(const WaveSpec& spec) {
    switch (spec.family) {
        case WaveFamily::Gaussian: return {spec.center - 40.0 * spec.width, spec.center + 40.0 * spec.width};
        case WaveFamily::Hermite: {
            const double r = (40.0 + 2.0 * std::sqrt(spec.mode_index + 1.0)) * spec.width;
            return {spec.center - r, spec.center + r};
        }
        case WaveFamily::SineBump:
        case WaveFamily::Flat: return {0.0, spec.length};
    }
    return {0.0, spec.length};
}

}  // namespace

double mass_outside(const WaveSpec& spec, double a, double b) {
    if (spec.family == WaveFamily::Gaussian) {
        const double s = spec.width * std::sqrt(2.0);
        return 0.5 * std::erfc((spec.center - a) / s) + 0.5 * std::erfc((b - spec.center) / s);
    }
    auto density = [&](double x) {
        const double v = spec.value(x);
        return v * v;
    };
    const auto [lo, hi] = support(spec);
    double m = 0.0;
    if (a > lo) m += detail::integrate(density, lo, std::min(a, hi), 256);
    if (b < hi) m += detail::integrate(density, std::max(b, lo), hi, 256);
    return m;
}

bool end_vanishing(const WaveSpec& spec, int n, double kappa, double rel_tol) {
    const double L = spec.length;
    const double band = std::min(L, kappa * L / std::ldexp(1.0, n));
    constexpr int kFine = 20000;
    double peak = 0.0;
    for (int i = 0; i <= kFine; ++i) peak = std::max(peak, std::abs(spec.value(L * i / kFine)));
    if (peak == 0.0) return false;
    constexpr int kBand = 2000;
    for (int i = 0; i <= kBand; ++i) {
        const double t = band * i / kBand;
        if (std::abs(spec.value(t)) >= rel_tol * peak) return false;
        if (std::abs(spec.value(L - t)) >= rel_tol * peak) return false;
    }
    return true;
}

ModeState sample_wave(const WaveSpec& spec, const Grid& grid, double shift) {
    validate(spec);
    const double spill = mass_outside(spec, grid.x_min - shift, grid.x_max - shift);
    if (spill > kLeakTolerance) {
        throw Error(ErrorCode::Leakage, "sample_wave",
                    "wave spills outside the box (mass " + short_num(spill) + ")");
    }
    ModeState st{grid, CVector(grid.num_points)};
    for (std::size_t i = 0; i < grid.num_points; ++i) st.amp[i] = spec.value(grid.x(i) - shift);
    if (st.norm_sq() == 0.0) throw Error(ErrorCode::InvalidArgument, "sample_wave", "all samples vanish");
    return normalized(std::move(st));
}

double deriv_l2_norm(const WaveSpec& spec) {
    validate(spec);
    auto integrand = [&](double x) {
        const double d = spec.derivative(x);
        return d * d;
    };
    return std::sqrt(detail::integrate(integrand, 0.0, spec.length, 128));
}

double edge_mass(const ModeState& state, double fraction) {
    const auto m = state.grid.num_points;
    const auto band = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(m)));
    double s = 0.0;
    for (std::size_t i = 0; i < band; ++i) s += std::norm(state.amp[i]) + std::norm(state.amp[m - 1 - i]);
    return s * state.grid.dx;
}

// --- spectral kernels -------------------------------------------------------

namespace detail {

double wrap_mass(std::span<const cplx> block, const Grid& grid, double s) {
    if (std::abs(s) >= grid.length()) {
        double total = 0.0;
        for (const auto& a : block) total += std::norm(a);
        return total * grid.dx;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < block.size(); ++i) {
        const double x = grid.x(i);
        if ((s > 0.0 && x + s >= grid.x_max) || (s < 0.0 && x + s < grid.x_min)) m += std::norm(block[i]);
    }
    return m * grid.dx;
}

void displace_block(std::span<cplx> block, const Grid& grid, double s) {
    if (s == 0.0) return;
    fft_forward(block);
    for (std::size_t m = 0; m < block.size(); ++m) block[m] *= std::polar(1.0, -grid.momentum(m) * s);
    fft_inverse(block);
}

double dilation_loss(std::span<const cplx> block, const Grid& grid, double lambda, double center) {
    // Source points c + lambda (x - c) for x in the box cover [lo, hi); mass
    // outside that interval has no image.
    const double lo = center + lambda * (grid.x_min - center);
    const double hi = center + lambda * (grid.x_max - center);
    double m = 0.0;
    for (std::size_t i = 0; i < block.size(); ++i) {
        const double x = grid.x(i);
        if (x < lo - 0.5 * grid.dx || x > hi + 0.5 * grid.dx) m += std::norm(block[i]);
    }
    return m * grid.dx;
}

void dilate_block(std::span<cplx> block, const Grid& grid, double lambda, double center) {
    if (lambda == 1.0) return;
    const std::size_t M = block.size();
    const long half = static_cast<long>(M / 2);
    CVector coeff(block.begin(), block.end());
    fft_forward(coeff);
    for (auto& c : coeff) c /= static_cast<double>(M);

    // Symmetric band-limited interpolant: frequencies -M/2..M/2 with the
    // Nyquist coefficient split evenly between the two ends.
    CVector ordered(M + 1);
    for (long m = -half; m <= half; ++m) {
        const auto bin = static_cast<std::size_t>((m + static_cast<long>(M)) % static_cast<long>(M));
        ordered[static_cast<std::size_t>(m + half)] = (m == -half || m == half) ? 0.5 * coeff[bin] : coeff[bin];
    }
    const double dk = 2.0 * kPi / grid.length();
    const double scale = std::sqrt(lambda);
    for (std::size_t i = 0; i < M; ++i) {
        const double t = center + lambda * (grid.x(i) - center);
        if (t < grid.x_min - 0.5 * grid.dx || t > grid.x_max - 0.5 * grid.dx) {
            block[i] = 0.0;
            continue;
        }
        const double u = t - grid.x_min;
        const cplx step = std::polar(1.0, dk * u);
        cplx phase = std::polar(1.0, -dk * u * static_cast<double>(half));
        cplx acc = 0.0;
        for (std::size_t m = 0; m <= M; ++m) {
            acc += ordered[m] * phase;
            phase *= step;
        }
        block[i] = scale * acc;
    }
}

}  // namespace detail

ModeState displace(const ModeState& state, double s, double leak_tol) {
    const double leak = detail::wrap_mass(state.amp, state.grid, s);
    if (leak > leak_tol) {
        throw Error(ErrorCode::Leakage, "displace",
                    "shift " + short_num(s) + " wraps mass " + short_num(leak) + " around the box");
    }
    ModeState out = state;
    detail::displace_block(out.amp, out.grid, s);
    return out;
}

ModeState position_phase(const ModeState& state, double theta) {
    ModeState out = state;
    if (theta == 0.0) return out;
    for (std::size_t i = 0; i < out.amp.size(); ++i) out.amp[i] *= std::polar(1.0, theta * out.grid.x(i));
    return out;
}

ModeState dilate(const ModeState& state, double lambda, std::optional<double> center, double leak_tol) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::InvalidArgument, "dilate", "lambda must be positive");
    }
    const double c = center.value_or(state.grid.center());
    const double loss = detail::dilation_loss(state.amp, state.grid, lambda, c);
    if (loss > leak_tol) {
        throw Error(ErrorCode::Leakage, "dilate", "dilated support leaves the box (mass " + short_num(loss) + ")");
    }
    ModeState out = state;
    detail::dilate_block(out.amp, out.grid, lambda, c);
    return out;
}

}  // namespace qadc
