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

#include "holosim/loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holosim {
namespace {

double lerp(double a, double b, double u) {
    if (u <= 0) {
        return a;
    }
    if (u >= 1) {
        return b;
    }
    return a + (b - a) * u;
}

double max_difference(const ControlSettings &a, const ControlSettings &b) {
    double d = std::abs(a.h - b.h);
    for (const auto &[label, phi] : a.phis) {
        auto it = b.phis.find(label);
        if (it == b.phis.end()) {
            return std::numeric_limits<double>::infinity();
        }
        d = std::max(d, std::abs(phi - it->second));
    }
    if (a.phis.size() != b.phis.size()) {
        return std::numeric_limits<double>::infinity();
    }
    return d;
}

}  // namespace

ControlSettings LoopSegment::at(double u) const {
    ControlSettings c = from;
    c.h = lerp(from.h, to.h, u);
    if (from.n_g && to.n_g) {
        c.n_g = lerp(*from.n_g, *to.n_g, u);
    }
    for (auto &[label, phi] : c.phis) {
        double a = from.phis.at(label);
        double b = to.phis.at(label);
        if (a == b) {
            phi = a;
        } else if (interp == Interp::Flux) {
            phi = lerp(a, b, u);
        } else {
            phi = std::acos(std::clamp(lerp(std::cos(a), std::cos(b), u), -1.0, 1.0));
            if (u >= 1) {
                phi = b;
            }
        }
    }
    return c;
}

ParameterLoop::ParameterLoop(std::vector<LoopSegment> segments, std::string name, std::string orientation)
    : segments_(std::move(segments)), name_(std::move(name)), orientation_(std::move(orientation)) {
    if (segments_.empty()) {
        throw ValidationError("a parameter loop needs at least one segment");
    }
    for (const auto &s : segments_) {
        if (s.samples < 1) {
            throw ValidationError("segment sample count must be positive");
        }
        if (s.from.phis.size() != s.to.phis.size()) {
            throw ValidationError("segment endpoints control different junctions");
        }
        for (const auto &[label, phi] : s.from.phis) {
            (void)phi;
            if (!s.to.phis.count(label)) {
                throw ValidationError("segment endpoints control different junctions");
            }
        }
        if (s.interp == Interp::Cosine) {
            for (const auto &[label, phi] : s.from.phis) {
                if (phi < 0 || s.to.phis.at(label) < 0) {
                    throw ValidationError("cosine interpolation requires non-negative fluxes");
                }
            }
        }
    }
    for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
        if (max_difference(segments_[k].to, segments_[k + 1].from) > 1e-12) {
            throw ValidationError("loop segments are not contiguous at segment " + std::to_string(k + 1));
        }
    }
}

bool ParameterLoop::closed() const {
    return max_difference(segments_.back().to, segments_.front().from) <= 1e-12;
}

std::size_t ParameterLoop::total_samples() const {
    std::size_t n = 0;
    for (const auto &s : segments_) {
        n += static_cast<std::size_t>(s.samples);
    }
    return n;
}

ControlSettings ParameterLoop::at(double s) const {
    s = std::clamp(s, 0.0, 1.0);
    const auto k_count = static_cast<double>(segments_.size());
    auto k = static_cast<std::size_t>(std::min(std::floor(s * k_count), k_count - 1));
    double u = s * k_count - static_cast<double>(k);
    return segments_[k].at(u);
}

std::vector<ControlSettings> ParameterLoop::sample_points() const {
    std::vector<ControlSettings> pts;
    pts.reserve(total_samples() + 1);
    for (const auto &seg : segments_) {
        for (int i = 0; i < seg.samples; ++i) {
            pts.push_back(seg.at(static_cast<double>(i) / seg.samples));
        }
    }
    pts.push_back(segments_.back().at(1.0));
    if (closed()) {
        pts.back() = pts.front();
    }
    return pts;
}

ParameterLoop ParameterLoop::reversed() const {
    std::vector<LoopSegment> segs;
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        segs.push_back({it->to, it->from, it->interp, it->samples});
    }
    std::string o = orientation_.empty() ? "" : "reverse of: " + orientation_;
    return ParameterLoop(std::move(segs), name_, o);
}

ParameterLoop ParameterLoop::with_samples(int samples) const {
    auto per = samples / static_cast<int>(segments_.size());
    if (per < 1) {
        throw ValidationError("too few samples for the loop's segments");
    }
    std::vector<LoopSegment> segs = segments_;
    for (auto &s : segs) {
        s.samples = per;
    }
    return ParameterLoop(std::move(segs), name_, orientation_);
}

void ParameterLoop::validate(const BlockLayout &layout, double max_step) const {
    if (!closed()) {
        throw ValidationError("parameter loop is not closed");
    }
    auto pts = sample_points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        holosim::validate(layout, pts[i]);
        if (i > 0 && max_difference(pts[i - 1], pts[i]) >= max_step) {
            throw ValidationError("adjacent loop samples differ by more than the step bound at sample " + std::to_string(i));
        }
    }
}

const char *loop_kind_name(LoopKind kind) {
    switch (kind) {
        case LoopKind::ZRect:
            return "Z_RECT";
        case LoopKind::XPath:
            return "X_PATH";
        case LoopKind::CZRect:
            return "CZ_RECT";
    }
    return "?";
}

ParameterLoop standard_loop(
    LoopKind kind,
    LoopCorners corners,
    int samples,
    const ControlSettings &base,
    std::pair<std::string, std::string> labels) {
    for (double v : {corners.phi1_star, corners.phi2_star}) {
        if (!(v >= 0 && v <= kHalfPi)) {
            throw ValidationError("loop corner angles must lie in [0, pi/2]");
        }
    }
    const int per = samples / 4;
    if (per < 16) {
        throw ValidationError("standard loops need at least 16 samples per segment (64 in total)");
    }
    const auto &[a, b] = labels;
    auto point = [&](double pa, double pb) {
        ControlSettings c = base;
        c.phis[a] = pa;
        c.phis[b] = pb;
        if (kind == LoopKind::CZRect) {
            c.phis["J1'"] = 0;
            c.phis["J2'"] = 0;
        }
        return c;
    };
    const double p1 = corners.phi1_star;
    const double p2 = corners.phi2_star;
    std::vector<LoopSegment> segs;
    std::string orientation;
    if (kind == LoopKind::XPath) {
        auto o = point(kHalfPi, kHalfPi);
        auto c1 = point(0, p2);
        auto c2 = point(p1, p2);
        auto c3 = point(p1, 0);
        segs = {{o, c1, Interp::Cosine, per}, {c1, c2, Interp::Flux, per}, {c2, c3, Interp::Flux, per}, {c3, o, Interp::Cosine, per}};
        orientation = "(" + a + "," + b + "): (pi/2,pi/2) -ray-> (0,phi2*) -> (phi1*,phi2*) -> (phi1*,0) -ray-> (pi/2,pi/2)";
    } else {
        auto o = point(kHalfPi, 0);
        auto c1 = point(kHalfPi, p2);
        auto c2 = point(p1, p2);
        auto c3 = point(p1, 0);
        segs = {{o, c1, Interp::Flux, per}, {c1, c2, Interp::Flux, per}, {c2, c3, Interp::Flux, per}, {c3, o, Interp::Flux, per}};
        orientation = "(" + a + "," + b + "): (pi/2,0) -> (pi/2,phi2*) -> (phi1*,phi2*) -> (phi1*,0) -> (pi/2,0)";
    }
    return ParameterLoop(std::move(segs), loop_kind_name(kind), orientation);
}

}  // namespace holosim
