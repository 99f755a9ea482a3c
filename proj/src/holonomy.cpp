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

#include "holosim/holonomy.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <Eigen/QR>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "holosim/kernels.hpp"

namespace holosim {
namespace {

constexpr double kMinOverlap = 0.5;

CMatrix random_unitary(Eigen::Index n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            z(i, j) = cplx(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    }
    return q;
}

// Frame in span(band) closest to `frame`.
CMatrix transport(const CMatrix &band, const CMatrix &frame, std::size_t at) {
    PolarFactor p = polar_factor(kernels::adjoint_times(band, frame));
    if (p.min_singular < kMinOverlap) {
        throw NumericalError(
            "subspace tracking lost the band at sample " + std::to_string(at) + " (overlap singular value " +
            std::to_string(p.min_singular) + ")");
    }
    return kernels::times(band, p.unitary);
}

double integrate(const std::function<double(double)> &f, double a, double b) {
    if (a == b) {
        return 0.0;
    }
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-12, &err);
    if (!std::isfinite(v) || err > 1e-10) {
        throw NumericalError("adaptive quadrature did not reach 1e-10 (error estimate " + std::to_string(err * 1e10) + "e-10" + ")");
    }
    return v;
}

ControlSettings shifted(const ControlSettings &c, const ControlTangent &d, double t) {
    ControlSettings out = c;
    for (const auto &[label, v] : d.dphi) {
        auto it = out.phis.find(label);
        if (it == out.phis.end()) {
            throw ValidationError("tangent names unknown junction " + label);
        }
        it->second += t * v;
    }
    out.h += t * d.dh;
    out.n_g.reset();
    return out;
}

}  // namespace

SubspaceBasis default_anchor(const BlockModel &model, const ControlSettings &start) {
    try {
        return analytic_subspace(model, start);
    } catch (const DomainError &) {
        if (model.layout().kind != BlockKind::X) {
            throw;
        }
    }
    // J1 = J2 = 0 on the X block: the dark pair is the two-box encoding (|01>_12, |10>_12).
    SubspaceBasis s;
    s.energy = computational_energy(BlockKind::X, start.h);
    s.vectors = CMatrix::Zero(16, 2);
    s.vectors(2, 0) = 1;
    s.vectors(4, 1) = 1;
    return s;
}

CMatrix wilson_loop(const std::vector<CMatrix> &bands, const CMatrix &anchor) {
    if (bands.size() < 2) {
        throw ValidationError("wilson_loop needs at least two bands");
    }
    CMatrix frame = transport(bands[0], anchor, 0);
    for (std::size_t j = 1; j < bands.size(); ++j) {
        frame = transport(bands[j], frame, j);
    }
    return kernels::adjoint_times(anchor, frame);
}

HolonomyResult loop_holonomy(
    const BlockLayout &block,
    const ParameterLoop &loop,
    double energy_selector,
    const HolonomyOptions &options) {
    loop.validate(block);
    BlockModel model(block);
    auto pts = loop.sample_points();

    HolonomyResult res;
    res.gauge_anchor = options.anchor ? *options.anchor : default_anchor(model, pts.front());
    res.subspace_dim = res.gauge_anchor.dimension();
    res.samples = pts.size() - 1;
    auto sectors = model.sectors_touching(res.gauge_anchor.vectors);

    std::mt19937_64 rng(options.scramble_seed.value_or(0));
    std::vector<CMatrix> bands;
    bands.reserve(pts.size());
    res.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        SectorBand sb = sector_band(model, pts[j], sectors, energy_selector);
        if (j == 0) {
            res.band_dim = static_cast<std::size_t>(sb.band.cols());
            if (res.band_dim < res.subspace_dim) {
                throw NumericalError("band at the loop start is smaller than the anchor subspace");
            }
        } else if (static_cast<std::size_t>(sb.band.cols()) != res.band_dim) {
            throw NumericalError(
                "degenerate subspace changes dimension along the loop at sample " + std::to_string(j) + " (" +
                std::to_string(res.band_dim) + " -> " + std::to_string(sb.band.cols()) + ")");
        }
        res.min_gap = std::min(res.min_gap, sb.gap);
        if (options.scramble_seed) {
            sb.band = sb.band * random_unitary(sb.band.cols(), rng);
        }
        bands.push_back(std::move(sb.band));
    }

    CMatrix raw = wilson_loop(bands, res.gauge_anchor.vectors);
    const auto k = raw.rows();
    res.unitarity_defect = (raw.adjoint() * raw - CMatrix::Identity(k, k)).norm();
    res.unitary = polar_factor(raw).unitary;

    if (options.estimate_error && bands.size() >= 5) {
        std::vector<CMatrix> half;
        for (std::size_t j = 0; j < bands.size(); j += 2) {
            half.push_back(bands[j]);
        }
        if ((bands.size() - 1) % 2 != 0) {
            half.push_back(bands.back());
        }
        CMatrix coarse = polar_factor(wilson_loop(half, res.gauge_anchor.vectors)).unitary;
        res.discretization_error_estimate = (coarse - res.unitary).norm();
    }
    return res;
}

ConnectionResult wilczek_zee_connection(
    const BlockLayout &block,
    const ControlSettings &controls,
    const ControlTangent &direction,
    double energy_selector,
    double step) {
    if (!(step > 0)) {
        throw ValidationError("connection step must be > 0");
    }
    BlockModel model(block);
    auto frame_at = [&](const ControlSettings &c) {
        SubspaceBasis gauge = analytic_subspace(model, c);
        auto sectors = model.sectors_touching(gauge.vectors);
        SectorBand sb = sector_band(model, c, sectors, energy_selector);
        PolarFactor p = procrustes_align(sb.band, gauge.vectors);
        if (p.min_singular < kMinOverlap) {
            throw NumericalError("gauge alignment failed: band and analytic basis are nearly orthogonal");
        }
        return p.unitary;
    };
    CMatrix f0 = frame_at(controls);
    CMatrix fp = frame_at(shifted(controls, direction, step));
    CMatrix fm = frame_at(shifted(controls, direction, -step));
    CMatrix a = f0.adjoint() * (fp - fm) / (2 * step);
    ConnectionResult out;
    out.a = 0.5 * (a - a.adjoint());
    out.hermitian_residual = (0.5 * (a + a.adjoint())).norm();
    return out;
}

double berry_phase_z(double gamma2, double phi1_star, double phi2_star) {
    if (!(gamma2 > 0)) {
        throw DomainError("berry_phase_z: gamma2 must be > 0");
    }
    for (double v : {phi1_star, phi2_star}) {
        if (!(v >= 0 && v <= kHalfPi)) {
            throw DomainError("berry_phase_z: angles must lie in [0, pi/2]");
        }
    }
    if (gamma2 == 1) {
        return 0.0;
    }
    double c1 = phi1_star == kHalfPi ? 0.0 : std::cos(phi1_star);
    double c1sq = c1 * c1;
    auto f = [&](double p2) {
        double a2 = amplitude(gamma2, p2);
        double a2sq = a2 * a2;
        return 1.0 / (c1sq + a2sq) - 1.0 / a2sq;
    };
    return (1 - gamma2 * gamma2) / 4 * integrate(f, 0.0, phi2_star);
}

RotationAngles rotation_angle_x(double phi_star, const JunctionParams &junction3) {
    validate(junction3);
    if (junction3.gamma == 1) {
        throw DomainError("rotation_angle_x requires gamma_3 != 1");
    }
    if (!(phi_star >= 0 && phi_star <= kHalfPi)) {
        throw DomainError("rotation_angle_x: phi* must lie in [0, pi/2]");
    }
    double c = phi_star == kHalfPi ? 0.0 : std::cos(phi_star);
    double a3 = amplitude(junction3.gamma, junction3.phi);
    double a3sq = a3 * a3;
    auto f = [&](double x) {
        double r = x * x + c * c;
        return c / (r * std::sqrt(1 + r / a3sq));
    };
    RotationAngles out;
    out.phi = c == 0 ? 0.0 : 2 * integrate(f, c, 1.0);
    out.phi_prime = phase_shift(junction3.gamma, junction3.phi) / 2 - kPi / 4;
    return out;
}

}  // namespace holosim
