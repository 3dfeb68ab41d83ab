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

#include "qadc/pulse.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fft.hpp"
#include "qadc/error.hpp"

namespace qadc {

namespace {

using Vec3 = std::array<double, 3>;

constexpr double kEdgeFraction = 1.0 / 32.0;

std::size_t axis_index(PauliAxis a) { return static_cast<std::size_t>(a); }

// exp(-i theta (v . sigma)) for a real 3-vector v.
GateMatrix exp_pauli(const Vec3& v, double theta) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (norm == 0.0 || theta == 0.0) return gates::identity();
    const double c = std::cos(theta * norm);
    const double s = std::sin(theta * norm) / norm;
    const cplx mi(0.0, -1.0);
    // v . sigma = [[vz, vx - i vy], [vx + i vy, -vz]]
    return GateMatrix{{c + mi * s * v[2], mi * s * cplx(v[0], -v[1]), mi * s * cplx(v[0], v[1]), c - mi * s * v[2]}};
}

// Columns are the +1 and -1 eigenvectors of u . sigma for a unit vector u.
GateMatrix eigenbasis(const Vec3& v) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double theta = std::acos(std::clamp(v[2] / norm, -1.0, 1.0));
    const double phi = std::atan2(v[1], v[0]);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return GateMatrix{{c, -std::polar(s, -phi), std::polar(s, phi), c}};
}

struct Groups {
    std::vector<Vec3> position, momentum, dilation;  // per qubit
    bool has_position = false, has_momentum = false, has_dilation = false;
};

Groups collect(const HamiltonianSpec& h) {
    const auto n = static_cast<std::size_t>(h.n_qubits);
    Groups g{std::vector<Vec3>(n, Vec3{}), std::vector<Vec3>(n, Vec3{}), std::vector<Vec3>(n, Vec3{})};
    for (const auto& t : h.terms) {
        auto q = static_cast<std::size_t>(t.qubit);
        switch (t.op) {
            case ModeOperator::Position: g.position[q][axis_index(t.axis)] += t.coeff; g.has_position = true; break;
            case ModeOperator::Momentum: g.momentum[q][axis_index(t.axis)] += t.coeff; g.has_momentum = true; break;
            case ModeOperator::Dilation: g.dilation[q][axis_index(t.axis)] += t.coeff; g.has_dilation = true; break;
        }
    }
    return g;
}

bool nonzero(const Vec3& v) { return v[0] != 0.0 || v[1] != 0.0 || v[2] != 0.0; }

void position_factor(JointState& st, const std::vector<Vec3>& vecs, double tau) {
    const std::size_t M = st.mode_dim();
    for (int j = 0; j < st.n_qubits; ++j) {
        const Vec3& v = vecs[static_cast<std::size_t>(j)];
        if (!nonzero(v)) continue;
        for (std::size_t i = 0; i < M; ++i)
            detail::apply_gate_strided(st.amp, st.n_qubits, j, exp_pauli(v, tau * st.grid.x(i)), M, i);
    }
}

void momentum_factor(JointState& st, const std::vector<Vec3>& vecs, double tau) {
    const std::size_t M = st.mode_dim();
    for (std::size_t k = 0; k < st.reg_dim(); ++k) detail::fft_forward(st.block(k));
    for (int j = 0; j < st.n_qubits; ++j) {
        const Vec3& v = vecs[static_cast<std::size_t>(j)];
        if (!nonzero(v)) continue;
        for (std::size_t m = 0; m < M; ++m)
            detail::apply_gate_strided(st.amp, st.n_qubits, j, exp_pauli(v, tau * st.grid.momentum(m)), M, m);
    }
    for (std::size_t k = 0; k < st.reg_dim(); ++k) detail::fft_inverse(st.block(k));
}

// exp(-i tau a (u.sigma) (x) (xp + px)): in the eigenbasis of u.sigma each
// block is dilated by exp(-2 tau sum_j a_j z_j) about x = 0.
void dilation_factor(JointState& st, const std::vector<Vec3>& vecs, double tau, double leak_tol) {
    std::vector<double> strength(static_cast<std::size_t>(st.n_qubits), 0.0);
    std::vector<GateMatrix> basis(static_cast<std::size_t>(st.n_qubits), gates::identity());
    for (int j = 0; j < st.n_qubits; ++j) {
        const Vec3& v = vecs[static_cast<std::size_t>(j)];
        if (!nonzero(v)) continue;
        strength[static_cast<std::size_t>(j)] = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        basis[static_cast<std::size_t>(j)] = eigenbasis(v);
    }
    const std::size_t M = st.mode_dim();
    for (int j = 0; j < st.n_qubits; ++j) {
        if (strength[static_cast<std::size_t>(j)] == 0.0) continue;
        const GateMatrix vd = basis[static_cast<std::size_t>(j)].adjoint();
        for (std::size_t i = 0; i < M; ++i) detail::apply_gate_strided(st.amp, st.n_qubits, j, vd, M, i);
    }
    for (std::size_t k = 0; k < st.reg_dim(); ++k) {
        double s = 0.0;
        for (int j = 0; j < st.n_qubits; ++j) s += strength[static_cast<std::size_t>(j)] * z_eigenvalue(k, j);
        const double lambda = std::exp(-2.0 * tau * s);
        if (detail::dilation_loss(st.block(k), st.grid, lambda, 0.0) > leak_tol) {
            throw Error(ErrorCode::Leakage, "evolve", "dilation pushes mass out of the box");
        }
        detail::dilate_block(st.block(k), st.grid, lambda, 0.0);
    }
    for (int j = 0; j < st.n_qubits; ++j) {
        if (strength[static_cast<std::size_t>(j)] == 0.0) continue;
        const GateMatrix& vb = basis[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < M; ++i) detail::apply_gate_strided(st.amp, st.n_qubits, j, vb, M, i);
    }
}

void check_leakage(const JointState& st, double leak_tol) {
    const std::size_t M = st.mode_dim();
    const auto band = std::max<std::size_t>(1, static_cast<std::size_t>(kEdgeFraction * static_cast<double>(M)));
    double edge = 0.0;
    double spectral_edge = 0.0;
    CVector buf(M);
    for (std::size_t k = 0; k < st.reg_dim(); ++k) {
        auto b = st.block(k);
        for (std::size_t i = 0; i < band; ++i) edge += std::norm(b[i]) + std::norm(b[M - 1 - i]);
        std::copy(b.begin(), b.end(), buf.begin());
        detail::fft_forward(buf);
        // Bins around the Nyquist frequency M/2; Parseval weight dx / M.
        for (std::size_t m = M / 2 - band; m < M / 2 + band; ++m) spectral_edge += std::norm(buf[m]);
    }
    edge *= st.grid.dx;
    spectral_edge *= st.grid.dx / static_cast<double>(M);
    if (edge > leak_tol) {
        throw Error(ErrorCode::Leakage, "evolve", "mass " + short_num(edge) + " reached the box edge");
    }
    if (spectral_edge > leak_tol) {
        throw Error(ErrorCode::Leakage, "evolve",
                    "mass " + short_num(spectral_edge) + " reached the grid's momentum cutoff");
    }
}

void apply_rotation(JointState& st, const std::vector<GateMatrix>& rotation) {
    if (rotation.empty()) return;
    if (rotation.size() != static_cast<std::size_t>(st.n_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "run_sequence", "need one rotation per qubit");
    }
    const std::size_t M = st.mode_dim();
    for (int j = 0; j < st.n_qubits; ++j) {
        const GateMatrix& g = rotation[static_cast<std::size_t>(j)];
        detail::check_unitary(g, "run_sequence");
        for (std::size_t i = 0; i < M; ++i) detail::apply_gate_strided(st.amp, st.n_qubits, j, g, M, i);
    }
}

}  // namespace

GateMatrix pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return gates::pauli_x();
        case PauliAxis::Y: return gates::pauli_y();
        case PauliAxis::Z: return gates::pauli_z();
    }
    return gates::identity();
}

void validate(const HamiltonianSpec& h) {
    if (h.n_qubits < 1 || h.n_qubits > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, "hamiltonian", "qubit count out of range");
    }
    for (const auto& t : h.terms) {
        if (t.qubit < 0 || t.qubit >= h.n_qubits) {
            throw Error(ErrorCode::InvalidArgument, "hamiltonian", "term acts on qubit " + std::to_string(t.qubit));
        }
        if (!std::isfinite(t.coeff)) throw Error(ErrorCode::InvalidArgument, "hamiltonian", "non-finite coefficient");
    }
}

HamiltonianSpec jaynes_cummings(int n, double c) {
    HamiltonianSpec h{n, {}};
    for (int j = 0; j < n; ++j) {
        h.terms.push_back({j, PauliAxis::X, ModeOperator::Position, c});
        h.terms.push_back({j, PauliAxis::Y, ModeOperator::Momentum, -c});
    }
    return h;
}

HamiltonianSpec pauli_frame(const HamiltonianSpec& h, PauliAxis flip) {
    HamiltonianSpec out = h;
    for (auto& t : out.terms)
        if (t.axis != flip) t.coeff = -t.coeff;
    return out;
}

JointState evolve(const JointState& state, const HamiltonianSpec& h, double t, double dt, double leak_tol) {
    validate(h);
    if (h.n_qubits != state.n_qubits) throw Error(ErrorCode::DimensionMismatch, "evolve", "qubit count mismatch");
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "evolve", "dt must be positive");
    if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "evolve", "t must be non-negative");
    JointState st = state;
    if (t == 0.0) return st;
    if (dt > t * (1.0 + 1e-12)) throw Error(ErrorCode::InvalidArgument, "evolve", "dt must not exceed t");

    const Groups g = collect(h);
    enum class Kind { Position, Momentum, Dilation };
    std::vector<Kind> order;
    if (g.has_position) order.push_back(Kind::Position);
    if (g.has_momentum) order.push_back(Kind::Momentum);
    if (g.has_dilation) order.push_back(Kind::Dilation);
    if (order.empty()) return st;

    auto factor = [&](Kind kind, double tau) {
        switch (kind) {
            case Kind::Position: position_factor(st, g.position, tau); break;
            case Kind::Momentum: momentum_factor(st, g.momentum, tau); break;
            case Kind::Dilation: dilation_factor(st, g.dilation, tau, leak_tol); break;
        }
    };

    const auto steps = static_cast<long>(std::max(1.0, std::ceil(t / dt - 1e-9)));
    const double tau = t / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i + 1 < order.size(); ++i) factor(order[i], 0.5 * tau);
        factor(order.back(), tau);
        for (std::size_t i = order.size() - 1; i-- > 0;) factor(order[i], 0.5 * tau);
    }
    check_leakage(st, leak_tol);
    return st;
}

double PulseSequence::total_time() const {
    double t = 0.0;
    for (const auto& s : steps) t += s.duration;
    return t;
}

PulseSequence decoupling_sequence(int n, DecouplingTarget target, double dt, double t) {
    if (n < 1 || n > kMaxQubits) throw Error(ErrorCode::InvalidArgument, "decoupling_sequence", "bad qubit count");
    if (!(dt > 0.0) || t < 0.0) throw Error(ErrorCode::InvalidArgument, "decoupling_sequence", "need dt > 0, t >= 0");
    const double ratio = t / dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio) || std::fmod(steps, 2.0) != 0.0) {
        throw Error(ErrorCode::Precondition, "decoupling_sequence",
                    "t/dt = " + short_num(ratio) + " is not an even integer");
    }
    std::vector<GateMatrix> flip(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        GateMatrix g;
        switch (target.goal) {
            case DecouplingGoal::KeepMomentumAll: g = gates::pauli_y(); break;
            case DecouplingGoal::KeepPositionAll: g = gates::pauli_x(); break;
            case DecouplingGoal::DecoupleAll: g = gates::pauli_z(); break;
            case DecouplingGoal::KeepPositionOn:
                if (target.qubit < 0 || target.qubit >= n) {
                    throw Error(ErrorCode::InvalidArgument, "decoupling_sequence", "target qubit out of range");
                }
                g = j == target.qubit ? gates::pauli_x() : gates::pauli_z();
                break;
        }
        flip[static_cast<std::size_t>(j)] = g;
    }
    PulseSequence seq{n, {}, {}};
    const auto count = static_cast<std::size_t>(steps);
    for (std::size_t s = 0; s < count; ++s) seq.steps.push_back({s == 0 ? std::vector<GateMatrix>{} : flip, dt});
    if (count > 0) seq.final_rotation = flip;
    return seq;
}

JointState run_sequence(const JointState& state, const PulseSequence& seq, const HamiltonianSpec& h, int substeps,
                        double leak_tol) {
    if (seq.n_qubits != state.n_qubits) throw Error(ErrorCode::DimensionMismatch, "run_sequence", "qubit count mismatch");
    if (substeps < 1) throw Error(ErrorCode::InvalidArgument, "run_sequence", "substeps must be >= 1");
    JointState st = state;
    for (const auto& step : seq.steps) {
        apply_rotation(st, step.rotation);
        if (step.duration > 0.0) {
            try {
                st = evolve(st, h, step.duration, step.duration / substeps, leak_tol);
            } catch (const Error& e) {
                throw e.within("run_sequence");
            }
        }
    }
    apply_rotation(st, seq.final_rotation);
    return st;
}

JointState weighted_x_interaction(const JointState& state, double base_T, double dt, double c,
                                  std::span<const GateMatrix> frames) {
    const int n = state.n_qubits;
    if (n > 4) throw Error(ErrorCode::InvalidArgument, "weighted_x_interaction", "physical-time simulation needs n <= 4");
    if (!frames.empty() && frames.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::DimensionMismatch, "weighted_x_interaction", "need one frame per qubit");
    }
    JointState st = state;
    if (base_T == 0.0) return st;
    const HamiltonianSpec h = jaynes_cummings(n, c);
    for (int j = 0; j < n; ++j) {
        const double t = std::ldexp(base_T, j);
        const PulseSequence seq = decoupling_sequence(n, {DecouplingGoal::KeepPositionOn, j}, dt, t);
        if (!frames.empty()) st = apply_register_gate(st, j, frames[static_cast<std::size_t>(j)].adjoint());
        st = run_sequence(st, seq, h);
        if (!frames.empty()) st = apply_register_gate(st, j, frames[static_cast<std::size_t>(j)]);
    }
    return st;
}

JointState squeeze_cycle(const JointState& state, double dT, int cycles) {
    if (cycles < 0) throw Error(ErrorCode::InvalidArgument, "squeeze_cycle", "cycles must be >= 0");
    if (!(dT > 0.0)) throw Error(ErrorCode::InvalidArgument, "squeeze_cycle", "dT must be positive");
    const int n = state.n_qubits;
    auto single = [n](PauliAxis axis, ModeOperator op, double coeff) {
        HamiltonianSpec h{n, {}};
        for (int j = 0; j < n; ++j) h.terms.push_back({j, axis, op, coeff});
        return h;
    };
    const std::array<HamiltonianSpec, 4> legs = {
        single(PauliAxis::X, ModeOperator::Position, 1.0),
        single(PauliAxis::Y, ModeOperator::Momentum, 1.0),
        single(PauliAxis::X, ModeOperator::Position, -1.0),
        single(PauliAxis::Y, ModeOperator::Momentum, -1.0),
    };
    JointState st = state;
    for (int c = 0; c < cycles; ++c)
        for (const auto& h : legs) st = evolve(st, h, dT, dT);  // one group each: exact
    return st;
}

HamiltonianSpec squeeze_effective_hamiltonian(int n) {
    // U_cycle ~ exp(dT^2 [A, B]) with [A, B] = i sigma_z (x) (xp + px), i.e.
    // exp(-i t H) with H = -sigma_z (x) (xp + px) and t = cycles dT^2.
    HamiltonianSpec h{n, {}};
    for (int j = 0; j < n; ++j) h.terms.push_back({j, PauliAxis::Z, ModeOperator::Dilation, -1.0});
    return h;
}

namespace {

using Dense = Eigen::MatrixXcd;

Dense dense_position(const Grid& g) {
    Dense x = Dense::Zero(static_cast<Eigen::Index>(g.num_points), static_cast<Eigen::Index>(g.num_points));
    for (std::size_t i = 0; i < g.num_points; ++i) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = g.x(i);
    return x;
}

// p = F^dagger diag(k) F with the same wavenumbers as the spectral kernels.
Dense dense_momentum(const Grid& g) {
    const auto M = static_cast<Eigen::Index>(g.num_points);
    Dense f(M, M);
    for (Eigen::Index m = 0; m < M; ++m)
        for (Eigen::Index i = 0; i < M; ++i)
            f(m, i) = std::polar(1.0 / std::sqrt(static_cast<double>(M)), -2.0 * kPi * static_cast<double>(m * i) / static_cast<double>(M));
    Dense k = Dense::Zero(M, M);
    for (Eigen::Index m = 0; m < M; ++m) k(m, m) = g.momentum(static_cast<std::size_t>(m));
    return f.adjoint() * k * f;
}

Dense kron(const GateMatrix& a, const Dense& b) {
    const auto M = b.rows();
    Dense out(2 * M, 2 * M);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block(r * M, c * M, M, M) = a(r, c) * b;
    return out;
}

}  // namespace

cplx measured_commutator_constant(std::size_t grid_points, double half_box) {
    const Grid g = make_grid(-half_box, half_box, grid_points);
    const Dense x = dense_position(g);
    const Dense p = dense_momentum(g);
    const Dense a = kron(gates::pauli_x(), x);
    const Dense b = kron(gates::pauli_y(), p);
    const Dense comm = a * b - b * a;
    const Dense gen = kron(gates::pauli_z(), Dense(x * p + p * x));
    return (gen.adjoint() * comm).trace() / (gen.adjoint() * gen).trace();
}

double squeeze_conjugation_scale(double r, int k, const ConjugationProbe& probe) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "squeeze_conjugation_scale", "k must be >= 0");
    const Grid g = make_grid(-probe.half_box, probe.half_box, probe.grid_points);
    const ModeState phi = sample_wave(WaveSpec::gaussian(1.0, probe.center, probe.width), g);
    Eigen::Map<const Eigen::VectorXcd> v(phi.amp.data(), static_cast<Eigen::Index>(phi.amp.size()));

    // sigma_z = +1 sector; the qubit factor is inert under the conjugation.
    const Dense x = dense_position(g);
    const Dense p = dense_momentum(g);
    const Dense gen = x * p + p * x;
    const cplx i1(0.0, 1.0);
    const Dense s_fwd = (i1 * (r * k) * gen).exp();
    const Dense s_bwd = (-i1 * (r * k) * gen).exp();
    Eigen::VectorXcd evo(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) evo(i) = std::polar(1.0, -probe.theta * g.x(static_cast<std::size_t>(i)));
    const Eigen::VectorXcd out = s_fwd * evo.asDiagonal() * s_bwd * v;

    // out = exp(-i theta f x) phi: weighted least-squares slope of the phase.
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double w = std::norm(v(i));
        if (w < 1e-12) continue;
        const double xi = g.x(static_cast<std::size_t>(i));
        const double ph = std::arg(out(i) * std::conj(v(i)));
        num += w * xi * ph;
        den += w * xi * xi;
    }
    return -num / (probe.theta * den);
}

std::vector<JointState> random_probe_states(int n, const Grid& grid, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> center(-1.5, 1.5), width(0.7, 1.0), kick(-1.0, 1.0);
    std::vector<JointState> out;
    const std::size_t dim = std::size_t{1} << n;
    for (int s = 0; s < count; ++s) {
        RegisterState reg{n, std::vector<cplx>(dim)};
        for (auto& a : reg.amp) a = cplx(normal(rng), normal(rng));
        const double rn = std::sqrt(reg.norm_sq());
        for (auto& a : reg.amp) a /= rn;
        const double c = center(rng), w = width(rng), k0 = kick(rng);
        ModeState mode = position_phase(sample_wave(WaveSpec::gaussian(1.0, c, w), grid), k0);
        out.push_back(tensor(reg, mode));
    }
    return out;
}

double state_distance(const JointState& a, const JointState& b) {
    if (a.amp.size() != b.amp.size()) throw Error(ErrorCode::DimensionMismatch, "state_distance", "size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::norm(a.amp[i] - b.amp[i]);
    return std::sqrt(s * a.grid.dx);
}

std::vector<BchRow> bch_scan(const BchScanConfig& cfg, std::span<const double> dts) {
    if (cfg.n_qubits < 1 || cfg.n_qubits > 4) {
        throw Error(ErrorCode::InvalidArgument, "pulse", "physical-time simulation needs 1 <= n <= 4");
    }
    if (cfg.grid_points > 256) throw Error(ErrorCode::InvalidArgument, "pulse", "grid_points must be <= 256");
    const Grid grid = make_grid(-cfg.half_box, cfg.half_box, cfg.grid_points);
    const auto probes = random_probe_states(cfg.n_qubits, grid, cfg.samples, cfg.seed);
    const HamiltonianSpec natural = jaynes_cummings(cfg.n_qubits, cfg.coupling);
    HamiltonianSpec target{cfg.n_qubits, {}};
    for (int j = 0; j < cfg.n_qubits; ++j) target.terms.push_back({j, PauliAxis::Y, ModeOperator::Momentum, -cfg.coupling});

    std::vector<JointState> exact;
    for (const auto& p : probes) exact.push_back(evolve(p, target, cfg.total_time, cfg.total_time));

    std::vector<BchRow> rows;
    for (double dt : dts) {
        const PulseSequence keep = decoupling_sequence(cfg.n_qubits, {DecouplingGoal::KeepMomentumAll}, dt, cfg.total_time);
        const PulseSequence off = decoupling_sequence(cfg.n_qubits, {DecouplingGoal::DecoupleAll}, dt, cfg.total_time);
        BchRow row;
        row.dt = dt;
        for (std::size_t s = 0; s < probes.size(); ++s) {
            row.error_bt += state_distance(run_sequence(probes[s], keep, natural, cfg.substeps), exact[s]);
            row.error_decouple += state_distance(run_sequence(probes[s], off, natural, cfg.substeps), probes[s]);
        }
        row.error_bt /= static_cast<double>(probes.size());
        row.error_decouple /= static_cast<double>(probes.size());
        row.ratio = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().error_bt / row.error_bt;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qadc
