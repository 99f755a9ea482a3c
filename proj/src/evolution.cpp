// Copyright 2026 The holosim Authors
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

#include "holosim/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "holosim/kernels.hpp"

namespace holosim {
namespace {

double smooth_ramp(double u) {
    if (u <= 0) {
        return 0;
    }
    if (u >= 1) {
        return 1;
    }
    double a = std::exp(-1 / u);
    double b = std::exp(-1 / (1 - u));
    return a / (a + b);
}

std::vector<int> union_of(const std::vector<std::vector<int>> &sectors) {
    std::vector<int> all;
    for (const auto &s : sectors) {
        all.insert(all.end(), s.begin(), s.end());
    }
    std::sort(all.begin(), all.end());
    return all;
}

double spectral_norm(const CMatrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

SubspaceBasis resolve_anchor(const BlockModel &model, const ParameterLoop &loop, const std::optional<SubspaceBasis> &anchor) {
    return anchor ? *anchor : default_anchor(model, loop.at(0.0));
}

void check_schedule(const ParameterLoop &loop, const Schedule &schedule) {
    if (schedule.segments != loop.segments().size()) {
        throw ValidationError("schedule was built for a loop with a different number of segments");
    }
    if (!(schedule.total_time > 0) || schedule.time_steps < 100) {
        throw ValidationError("schedule needs total_time > 0 and at least 100 time steps");
    }
}

}  // namespace

const char *ramp_profile_name(RampProfile p) {
    switch (p) {
        case RampProfile::Smooth:
            return "smooth";
        case RampProfile::CosinePerSegment:
            return "cosine-segment";
        case RampProfile::CosineGlobal:
            return "cosine-global";
        case RampProfile::Linear:
            return "linear";
    }
    return "?";
}

RampProfile parse_ramp_profile(const std::string &name) {
    for (auto p : {RampProfile::Smooth, RampProfile::CosinePerSegment, RampProfile::CosineGlobal, RampProfile::Linear}) {
        if (name == ramp_profile_name(p)) {
            return p;
        }
    }
    throw ValidationError("unknown ramp profile '" + name + "'");
}

double Schedule::position(double tau) const {
    tau = std::clamp(tau, 0.0, 1.0);
    switch (profile) {
        case RampProfile::Linear:
            return tau;
        case RampProfile::CosineGlobal:
            return 0.5 * (1 - std::cos(kPi * tau));
        case RampProfile::Smooth:
        case RampProfile::CosinePerSegment:
            break;
    }
    const auto k_count = static_cast<double>(segments);
    double k = std::min(std::floor(tau * k_count), k_count - 1);
    double u = tau * k_count - k;
    double r = profile == RampProfile::Smooth ? smooth_ramp(u) : 0.5 * (1 - std::cos(kPi * u));
    return (k + r) / k_count;
}

LoopProfile measure_loop(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const SubspaceBasis &anchor,
    const ScheduleOptions &options) {
    BlockModel model(block);
    auto sectors = model.sectors_touching(anchor.vectors);
    auto all = union_of(sectors);
    Schedule probe;
    probe.profile = options.profile;
    probe.segments = loop.segments().size();

    auto h_at = [&](double tau) {
        ControlSettings c = loop.at(probe.position(tau));
        return model.assemble_from(model.term_couplings(c), c.h, all);
    };
    const int n = std::max(8, options.probe_points_per_segment) * static_cast<int>(probe.segments);
    LoopProfile out;
    out.gap = std::numeric_limits<double>::infinity();
    const double delta = 1e-6;
    for (int i = 0; i <= n; ++i) {
        double tau = static_cast<double>(i) / n;
        ControlSettings c = loop.at(probe.position(tau));
        out.gap = std::min(out.gap, sector_band(model, c, sectors, anchor.energy).gap);
        if (i < n) {
            double tm = (i + 0.5) / n;
            CMatrix d = (h_at(tm + delta) - h_at(tm - delta)) / (2 * delta);
            out.max_slope = std::max(out.max_slope, spectral_norm(d));
        }
    }
    if (!std::isfinite(out.gap) || !(out.gap > 0)) {
        throw NumericalError("no finite gap separates the computational band along the loop");
    }
    return out;
}

Schedule make_schedule(
    const BlockLayout &block,
    const ParameterLoop &loop,
    double eta,
    const ScheduleOptions &options,
    const std::optional<SubspaceBasis> &anchor) {
    if (!(eta > 0)) {
        throw ValidationError("adiabaticity eta must be > 0");
    }
    if (!(options.dt_max > 0)) {
        throw ValidationError("dt_max must be > 0");
    }
    BlockModel model(block);
    SubspaceBasis a = resolve_anchor(model, loop, anchor);
    LoopProfile lp = measure_loop(block, loop, a, options);
    Schedule s;
    s.profile = options.profile;
    s.segments = loop.segments().size();
    s.eta = eta;
    s.gap = lp.gap;
    s.max_slope = lp.max_slope;
    s.total_time = lp.max_slope > 0 ? lp.max_slope / (eta * lp.gap) : 1.0 / eta;
    double steps = std::ceil(s.total_time / options.dt_max);
    s.time_steps = std::max(options.min_steps, static_cast<int>(std::min(steps, 1e9)));
    return s;
}

Schedule make_schedule_for_ratio(
    const BlockLayout &block,
    const ParameterLoop &loop,
    double ratio,
    const ScheduleOptions &options,
    const std::optional<SubspaceBasis> &anchor) {
    if (!(ratio > 0)) {
        throw ValidationError("gap/eta ratio must be > 0");
    }
    BlockModel model(block);
    SubspaceBasis a = resolve_anchor(model, loop, anchor);
    LoopProfile lp = measure_loop(block, loop, a, options);
    Schedule s = make_schedule(block, loop, lp.gap / ratio, options, a);
    return s;
}

Schedule with_steps(Schedule s, int steps) {
    if (steps < 100) {
        throw ValidationError("a schedule needs at least 100 time steps");
    }
    s.time_steps = steps;
    return s;
}

double realized_eta(const BlockLayout &block, const ParameterLoop &loop, const Schedule &schedule, const SubspaceBasis &anchor) {
    check_schedule(loop, schedule);
    BlockModel model(block);
    auto all = union_of(model.sectors_touching(anchor.vectors));
    const int n = std::min(schedule.time_steps, 20000);
    double best = 0;
    CMatrix prev;
    for (int i = 0; i <= n; ++i) {
        ControlSettings c = loop.at(schedule.position(static_cast<double>(i) / n));
        CMatrix h = model.assemble_from(model.term_couplings(c), c.h, all);
        if (i > 0) {
            double dt = schedule.total_time / n;
            best = std::max(best, spectral_norm(h - prev) / dt);
        }
        prev = std::move(h);
    }
    return best / schedule.gap;
}

Propagation propagate(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const Schedule &schedule,
    const CMatrix &initial,
    const kernels::KernelTable *table) {
    check_schedule(loop, schedule);
    BlockModel model(block);
    if (initial.rows() != static_cast<Eigen::Index>(model.dimension())) {
        throw ValidationError("initial states do not live on the block basis");
    }
    auto sectors = model.sectors_touching(initial, 0.0);
    // each sector state is carried as a hi + lo pair of doubles
    std::vector<CMatrix> blocks, blocks_lo;
    for (const auto &s : sectors) {
        CMatrix b(static_cast<Eigen::Index>(s.size()), initial.cols());
        for (std::size_t r = 0; r < s.size(); ++r) {
            b.row(static_cast<Eigen::Index>(r)) = initial.row(s[r]);
        }
        blocks_lo.push_back(CMatrix::Zero(b.rows(), b.cols()));
        blocks.push_back(std::move(b));
    }

    const auto &k = table ? *table : kernels::active();
    const double dt = schedule.total_time / schedule.time_steps;
    using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    LMatrix vl, gram, step;
    CMatrix u_hi, u_lo;
    CVector y_hi, y_lo;
    // stepping happens in the frame of the computational energy; its phase is applied once at the end
    long double frame_phase = 0;
    for (int n = 0; n < schedule.time_steps; ++n) {
        ControlSettings c = loop.at(schedule.position((n + 0.5) / schedule.time_steps));
        auto terms = model.term_couplings(c);
        const double shift = computational_energy(block.kind, c.h);
        frame_phase += static_cast<long double>(shift) * dt;
        for (std::size_t s = 0; s < sectors.size(); ++s) {
            CMatrix h = model.assemble_from(terms, c.h, sectors[s]);
            h.diagonal().array() -= shift;
            Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
            const auto m = es.eigenvectors().rows();
            const auto dim = static_cast<std::size_t>(m);
            // exp(-i H dt) = V e^{-i L dt} V^H in long double after one Newton-Schulz pass on V
            vl = es.eigenvectors().cast<std::complex<long double>>();
            gram.noalias() = vl.adjoint() * vl;
            vl = vl * (1.5L * LMatrix::Identity(m, m) - 0.5L * gram);
            gram = vl.adjoint();
            for (Eigen::Index i = 0; i < m; ++i) {
                long double a = -static_cast<long double>(es.eigenvalues()(i)) * dt;
                gram.row(i) *= std::complex<long double>(std::cos(a), std::sin(a));
            }
            step.noalias() = vl * gram;
            u_hi = step.cast<cplx>();
            u_lo = (step - u_hi.cast<std::complex<long double>>()).cast<cplx>();
            CMatrix &psi = blocks[s];
            CMatrix &psi_lo = blocks_lo[s];
            y_hi.resize(m);
            y_lo.resize(m);
            for (Eigen::Index j = 0; j < psi.cols(); ++j) {
                k.gemv_dd(u_hi.data(), u_lo.data(), dim, dim, dim, psi.col(j).data(), psi_lo.col(j).data(), y_hi.data(), y_lo.data());
                psi.col(j) = y_hi;
                psi_lo.col(j) = y_lo;
            }
        }
    }

    Propagation out;
    out.states = CMatrix::Zero(initial.rows(), initial.cols());
    std::vector<long double> norm2(static_cast<std::size_t>(initial.cols()), 0.0L);
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        for (std::size_t r = 0; r < sectors[s].size(); ++r) {
            const auto row = static_cast<Eigen::Index>(r);
            out.states.row(sectors[s][r]) = blocks[s].row(row) + blocks_lo[s].row(row);
            for (Eigen::Index j = 0; j < initial.cols(); ++j) {
                std::complex<long double> z = std::complex<long double>(blocks[s](row, j)) + std::complex<long double>(blocks_lo[s](row, j));
                norm2[static_cast<std::size_t>(j)] += std::norm(z);
            }
        }
    }
    out.frame_phase = -static_cast<double>(frame_phase);
    out.states *= std::polar(1.0, out.frame_phase);
    for (Eigen::Index j = 0; j < initial.cols(); ++j) {
        const long double want = static_cast<long double>(initial.col(j).norm());
        out.max_norm_error = std::max(out.max_norm_error, static_cast<double>(std::abs(std::sqrt(norm2[static_cast<std::size_t>(j)]) - want)));
    }
    return out;
}

CVector propagate(const BlockLayout &block, const ParameterLoop &loop, const Schedule &schedule, const CVector &initial) {
    if (std::abs(initial.norm() - 1) > 1e-12) {
        throw ValidationError("initial state must have unit norm");
    }
    CMatrix m = initial;
    return propagate(block, loop, schedule, m).states.col(0);
}

GateEstimate adiabatic_gate(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const Schedule &schedule,
    const std::optional<SubspaceBasis> &anchor) {
    if (!loop.closed()) {
        throw ValidationError("adiabatic_gate needs a closed loop");
    }
    BlockModel model(block);
    GateEstimate g;
    g.anchor = resolve_anchor(model, loop, anchor);
    g.schedule = schedule;
    Propagation p = propagate(block, loop, schedule, g.anchor.vectors);
    g.max_norm_error = p.max_norm_error;

    const ControlSettings end = loop.at(1.0);
    const double energy = computational_energy(block.kind, end.h);
    g.dynamic_phase = p.frame_phase;
    g.transfer = kernels::adjoint_times(g.anchor.vectors, p.states) * std::polar(1.0, -g.dynamic_phase);
    g.unitary = polar_factor(g.transfer).unitary;

    SectorBand band = sector_band(model, end, model.sectors_touching(g.anchor.vectors), energy);
    CMatrix inside = kernels::adjoint_times(band.band, p.states);
    double leak = 0;
    for (Eigen::Index j = 0; j < p.states.cols(); ++j) {
        leak += std::max(0.0, p.states.col(j).squaredNorm() - inside.col(j).squaredNorm());
    }
    g.leakage = leak / static_cast<double>(p.states.cols());
    return g;
}

LzScan landau_zener_scan(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const std::vector<double> &etas,
    const ScheduleOptions &options,
    const std::optional<SubspaceBasis> &anchor) {
    if (etas.empty()) {
        throw ValidationError("landau_zener_scan needs at least one eta");
    }
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (!(etas[i] > 0)) {
            throw ValidationError("eta values must be positive");
        }
        if (i > 0 && !(etas[i] < etas[i - 1])) {
            throw ValidationError("eta values must be sorted descending");
        }
    }
    BlockModel model(block);
    SubspaceBasis a = resolve_anchor(model, loop, anchor);
    LoopProfile lp = measure_loop(block, loop, a, options);

    LzScan scan;
    scan.gap = lp.gap;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (double eta : etas) {
        Schedule s;
        s.profile = options.profile;
        s.segments = loop.segments().size();
        s.eta = eta;
        s.gap = lp.gap;
        s.max_slope = lp.max_slope;
        s.total_time = lp.max_slope / (eta * lp.gap);
        s.time_steps = std::max(options.min_steps, static_cast<int>(std::ceil(s.total_time / options.dt_max)));
        GateEstimate g = adiabatic_gate(block, loop, s, a);
        LzRow row;
        row.eta = eta;
        row.eta_over_gap = eta / lp.gap;
        row.total_time = s.total_time;
        row.steps = s.time_steps;
        row.leakage = g.leakage;
        row.in_fit = g.leakage >= kLeakageFloor;
        if (row.in_fit) {
            double x = 1 / eta, y = std::log(g.leakage);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            syy += y * y;
            ++scan.fit_points;
        }
        scan.rows.push_back(row);
    }
    if (scan.fit_points >= 2) {
        auto n = static_cast<double>(scan.fit_points);
        double vxx = sxx - sx * sx / n;
        double vxy = sxy - sx * sy / n;
        double vyy = syy - sy * sy / n;
        scan.slope = vxy / vxx;
        scan.intercept = (sy - scan.slope * sx) / n;
        scan.r_squared = vyy > 0 ? vxy * vxy / (vxx * vyy) : 1.0;
    }
    return scan;
}

}  // namespace holosim
