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

#include "qadc/conversion.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "qadc/error.hpp"
#include "quadrature.hpp"

namespace qadc {

const std::array<const char*, kAdStages> kAdStageNames = {
    "prepare", "shift", "phase", "superpose", "kickback", "inverse_qft", "recentre",
};

std::size_t default_grid_points(int n) {
    if (n <= 7) return 4096;
    return std::size_t{64} << n;
}

Grid conversion_grid(const ConversionConfig& cfg, int n) {
    if (!(cfg.length > 0.0)) throw Error(ErrorCode::InvalidArgument, "config", "length must be positive");
    const std::size_t m = cfg.grid_points == 0 ? default_grid_points(n) : cfg.grid_points;
    try {
        return make_grid(-cfg.length, 2.0 * cfg.length, m);
    } catch (const Error& e) {
        throw e.within("config");
    }
}

double window_half_width(const ConversionConfig& cfg, int n) {
    return cfg.kappa * cfg.length / std::ldexp(1.0, n);
}

namespace {

void check_n(int n, const char* stage) {
    if (n < 1 || n > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, stage, "qubit count must be in [1, 10], got " + std::to_string(n));
    }
}

// 30-point Gauss-Legendre nodes and weights mapped to [lo, hi].
void gauss_nodes(double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const auto& a = Rule::abscissa();
    const auto& wt = Rule::weights();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
        x.push_back(mid - half * a[i]);
        w.push_back(half * wt[i]);
        x.push_back(mid + half * a[i]);
        w.push_back(half * wt[i]);
    }
}

// Panels on [0, w] aligned with the kernel zeros m / 2^n.
std::vector<double> lobe_edges(int n, double w) {
    const double step = 1.0 / std::ldexp(1.0, n);
    std::vector<double> edges{0.0};
    for (double e = step; e < w - 1e-15; e += step) edges.push_back(e);
    edges.push_back(w);
    return edges;
}

}  // namespace

cplx dirichlet_g(double y, int n) {
    const double N = std::ldexp(1.0, n);
    const double r = y - std::nearbyint(y);  // g has period 1
    if (r == 0.0) return std::sqrt(N);
    // 2^{-n/2} exp(i pi (N-1) r) sin(pi N r) / sin(pi r)
    const double ratio = std::sin(kPi * N * r) / std::sin(kPi * r);
    return std::polar(ratio / std::sqrt(N), kPi * (N - 1.0) * r);
}

std::vector<cplx> dirichlet_g(std::span<const double> y, int n) {
    std::vector<cplx> out(y.size());
    std::transform(y.begin(), y.end(), out.begin(), [n](double v) { return dirichlet_g(v, n); });
    return out;
}

double dirichlet_abs_moment(int n, double w) {
    if (w <= 0.0) return 0.0;
    const auto edges = lobe_edges(n, w);
    auto f = [n](double y) { return std::norm(dirichlet_g(y, n)) * y; };
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) total += detail::integrate(f, edges[p], edges[p + 1], 1);
    return 2.0 * total;
}

double ideal_normalization(const WaveSpec& spec, int n) {
    check_n(n, "ideal_state");
    const std::size_t N = std::size_t{1} << n;
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double v = spec.value(spec.length * static_cast<double>(j) / static_cast<double>(N));
        s += v * v;
    }
    s /= static_cast<double>(N);
    if (s == 0.0) throw Error(ErrorCode::InvalidArgument, "ideal_state", "all register samples vanish");
    return 1.0 / std::sqrt(s);
}

RegisterState ideal_state(const WaveSpec& spec, int n) {
    validate(spec);
    const double d = ideal_normalization(spec, n);
    const std::size_t N = std::size_t{1} << n;
    RegisterState st{n, std::vector<cplx>(N)};
    const double scale = d / std::sqrt(static_cast<double>(N));
    for (std::size_t j = 0; j < N; ++j)
        st.amp[j] = scale * spec.value(spec.length * static_cast<double>(j) / static_cast<double>(N));
    // d is exact up to rounding; the final rescale pins the norm to the last ulp.
    const double norm = std::sqrt(st.norm_sq());
    for (auto& a : st.amp) a /= norm;
    return st;
}

JointState ad_unitary(JointState state, double length, double leak_tol, const StageObserver& observer) {
    const int n = state.n_qubits;
    const double L = length;
    const double N = std::ldexp(1.0, n);
    const auto ones = unit_weights(n);
    const auto bits = binary_weights(n);
    auto stage = [&](std::size_t idx, auto&& op) {
        try {
            state = op(state);
        } catch (const Error& e) {
            throw e.within(kAdStageNames[idx]);
        }
        if (observer) observer(idx, state);
    };
    // Time span T = L / (2 n c): each qubit in |1> contributes -L/(2n).
    stage(1, [&](const JointState& s) { return ctrl_displacement(s, ones, -L / (2.0 * n), leak_tol); });
    // kappa = -T c with n T c = pi (N - 1) / L.
    stage(2, [&](const JointState& s) { return ctrl_position_phase(s, ones, -kPi * (N - 1.0) / (n * L)); });
    stage(3, [&](const JointState& s) { return apply_e_all(s); });
    stage(4, [&](const JointState& s) { return ctrl_position_phase(s, bits, -kPi / L); });
    stage(5, [&](const JointState& s) { return inverse_qft(s); });
    stage(6, [&](const JointState& s) { return ctrl_displacement(s, bits, L / (2.0 * N), leak_tol); });
    return state;
}

JointState ad_unitary_adjoint(JointState state, double length, double leak_tol) {
    const int n = state.n_qubits;
    const double L = length;
    const double N = std::ldexp(1.0, n);
    const auto ones = unit_weights(n);
    const auto bits = binary_weights(n);
    auto stage = [&](std::size_t idx, auto&& op) {
        try {
            state = op(state);
        } catch (const Error& e) {
            throw e.within(std::string("adjoint ") + kAdStageNames[idx]);
        }
    };
    const GateMatrix e_dag = gates::e_gate().adjoint();
    stage(6, [&](const JointState& s) { return ctrl_displacement(s, bits, -L / (2.0 * N), leak_tol); });
    stage(5, [&](const JointState& s) { return qft(s); });
    stage(4, [&](const JointState& s) { return ctrl_position_phase(s, bits, kPi / L); });
    stage(3, [&](const JointState& s) {
        JointState out = s;
        for (int j = 0; j < n; ++j) out = apply_register_gate(out, j, e_dag);
        return out;
    });
    stage(2, [&](const JointState& s) { return ctrl_position_phase(s, ones, kPi * (N - 1.0) / (n * L)); });
    stage(1, [&](const JointState& s) { return ctrl_displacement(s, ones, L / (2.0 * n), leak_tol); });
    return state;
}

AdResult ad_convert(const WaveSpec& spec, int n, const ConversionConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    check_n(n, "ad_convert");
    const Grid grid = conversion_grid(cfg, n);
    const double L = cfg.length;
    WaveSpec wave = spec;
    wave.length = L;

    ModeState initial;
    try {
        validate(wave);
        initial = sample_wave(wave, grid, -0.5 * L);
    } catch (const Error& e) {
        throw e.within(kAdStageNames[0]);
    }
    const std::size_t N = std::size_t{1} << n;
    AdResult res;
    JointState st = tensor(basis_register(n, N - 1), initial);
    res.stage_norm_error[0] = std::abs(st.norm_sq() - 1.0);
    res.state = ad_unitary(std::move(st), L, cfg.leak_tol, [&](std::size_t idx, const JointState& s) {
        res.stage_norm_error[idx] = std::abs(s.norm_sq() - 1.0);
    });

    res.ideal = ideal_state(wave, n);
    res.rho = reduce_register(res.state);
    const DensityMatrix rho0 = pure_density(res.ideal.amp);
    Eigen::Map<const Eigen::VectorXcd> psi(res.ideal.amp.data(), static_cast<Eigen::Index>(N));

    ConversionReport& rep = res.report;
    rep.n = n;
    rep.length = L;
    rep.grid_points = grid.num_points;
    rep.trace_dist = trace_distance(res.rho, rho0);
    rep.fidelity_pure = (psi.adjoint() * res.rho.entries * psi)(0, 0).real();
    const auto coeffs = schmidt_coefficients(res.state);
    rep.schmidt_top = coeffs.front() * coeffs.front();
    const double W = window_half_width(cfg, n);
    rep.appendix_bound = appendix_bound(wave, n, W);
    rep.b_estimate = rep.appendix_bound * static_cast<double>(N);
    rep.end_vanishing_ok = end_vanishing(wave, n, cfg.kappa);
    rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

DensityMatrix rho_quadrature_oracle(const WaveSpec& spec, int n, double W) {
    check_n(n, "rho_quadrature_oracle");
    validate(spec);
    const double L = spec.length;
    const std::size_t N = std::size_t{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    Eigen::VectorXcd v(static_cast<Eigen::Index>(N));
    const auto edges = lobe_edges(n, W / L);
    std::vector<double> xs, ws;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        for (int side : {-1, 1}) {
            gauss_nodes(side * edges[p] * L, side * edges[p + 1] * L, xs, ws);
            for (std::size_t q = 0; q < xs.size(); ++q) {
                const double x = xs[q];
                const double weight = std::abs(ws[q]) * std::norm(dirichlet_g(x / L, n));
                for (std::size_t j = 0; j < N; ++j)
                    v[static_cast<Eigen::Index>(j)] = spec.value(L * static_cast<double>(j) / static_cast<double>(N) + x);
                rho.noalias() += weight * (v * v.adjoint());
            }
        }
    }
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix{std::move(rho)};
}

double appendix_bound(const WaveSpec& spec, int n, double W) {
    const double L = spec.length;
    return 4.0 * L * deriv_l2_norm(spec) * dirichlet_abs_moment(n, W / L);
}

ModeState standard_mode(int n, const Grid& grid, double length, double half_window) {
    check_n(n, "standard_mode");
    const double L = length;
    const double N = std::ldexp(1.0, n);
    const double h = L * (N - 1.0) / (2.0 * N);
    const double hw = half_window > 0.0 ? half_window : 0.5 * L;
    ModeState st{grid, CVector(grid.num_points)};
    for (std::size_t i = 0; i < grid.num_points; ++i) {
        const double u = grid.x(i) - h;
        if (u >= -hw && u < hw) st.amp[i] = dirichlet_g(u / L, n);
    }
    return normalized(std::move(st));
}

DaResult da_convert(const RegisterState& reg, int n, const ConversionConfig& cfg) {
    check_n(n, "da_convert");
    if (reg.n_qubits != n || reg.dim() != (std::size_t{1} << n)) {
        throw Error(ErrorCode::DimensionMismatch, "da_convert", "register size does not match n");
    }
    if (std::abs(reg.norm_sq() - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "da_convert", "input register is not normalized");
    }
    const Grid grid = conversion_grid(cfg, n);
    const ModeState alpha0 = standard_mode(n, grid, cfg.length);
    DaResult out;
    out.state = ad_unitary_adjoint(tensor(reg, alpha0), cfg.length, cfg.leak_tol);
    SchmidtDecomposition sd = schmidt(out.state, 1);
    out.schmidt_top = sd.coeffs.front() * sd.coeffs.front();
    if (out.schmidt_top < 0.5) {
        throw Error(ErrorCode::Precondition, "da_convert",
                    "top Schmidt weight " + short_num(out.schmidt_top) + " < 0.5; input is not smooth");
    }
    ModeState mode = std::move(sd.mode_vectors.front());
    // Fix the global phase: largest-magnitude sample real and positive.
    std::size_t peak = 0;
    for (std::size_t i = 1; i < mode.amp.size(); ++i)
        if (std::abs(mode.amp[i]) > std::abs(mode.amp[peak])) peak = i;
    const cplx phase = std::conj(mode.amp[peak]) / std::abs(mode.amp[peak]);
    for (auto& a : mode.amp) a *= phase;
    out.mode = std::move(mode);
    return out;
}

RoundtripReport roundtrip(const WaveSpec& spec, int n, const ConversionConfig& cfg) {
    check_n(n, "roundtrip");
    WaveSpec wave = spec;
    wave.length = cfg.length;
    validate(wave);
    RoundtripReport rep;
    rep.n = n;
    const Grid grid = conversion_grid(cfg, n);
    const ModeState input = sample_wave(wave, grid, -0.5 * cfg.length);
    const DaResult da = da_convert(ideal_state(wave, n), n, cfg);
    rep.fidelity_l2 = fidelity(input, da.mode);
    rep.schmidt_top = da.schmidt_top;
    rep.appendix_bound = appendix_bound(wave, n, window_half_width(cfg, n));
    rep.warning = rep.appendix_bound >= 1.0;
    return rep;
}

double fit_log2_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = std::min(x.size(), y.size());
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double ly = std::log2(y[i]);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
    }
    const double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

unsigned default_threads() {
    unsigned t = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QADC_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) t = std::min<unsigned>(t, static_cast<unsigned>(cap));
    }
    return t;
}

SweepTable error_sweep(const WaveSpec& spec, int n_min, int n_max, const ConversionConfig& cfg, unsigned threads) {
    if (n_min < 2 || n_max < n_min || n_max > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, "error_sweep", "need 2 <= n_min <= n_max <= 10");
    }
    const std::size_t count = static_cast<std::size_t>(n_max - n_min + 1);
    std::vector<ConversionReport> rows(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                rows[i] = ad_convert(spec, n_min + static_cast<int>(i), cfg).report;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned pool = std::min<unsigned>(threads == 0 ? default_threads() : threads, static_cast<unsigned>(count));
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < pool; ++t) workers.emplace_back(worker);
        for (auto& w : workers) w.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    SweepTable table;
    table.rows = std::move(rows);
    std::vector<double> xs, ys;
    for (const auto& r : table.rows) {
        xs.push_back(r.n);
        ys.push_back(r.trace_dist);
        table.slope_running.push_back(fit_log2_slope(xs, ys));
    }
    table.slope = table.slope_running.back();
    return table;
}

}  // namespace qadc
