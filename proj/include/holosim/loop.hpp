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

#ifndef HOLOSIM_LOOP_HPP
#define HOLOSIM_LOOP_HPP

#include <string>
#include <utility>
#include <vector>

#include "holosim/network.hpp"

namespace holosim {

/// How fluxes move along a segment: linearly in phi, or linearly in cos(phi).
enum class Interp { Flux, Cosine };

struct LoopSegment {
    ControlSettings from;
    ControlSettings to;
    Interp interp = Interp::Flux;
    int samples = 16;

    ControlSettings at(double u) const;
};

class ParameterLoop {
   public:
    ParameterLoop() = default;
    ParameterLoop(std::vector<LoopSegment> segments, std::string name = "explicit", std::string orientation = "");

    const std::vector<LoopSegment> &segments() const {
        return segments_;
    }
    const std::string &name() const {
        return name_;
    }
    const std::string &orientation() const {
        return orientation_;
    }

    bool closed() const;
    std::size_t total_samples() const;

    /// Global parameter s in [0,1]; every segment covers an equal share.
    ControlSettings at(double s) const;
    /// total_samples() + 1 points; the last repeats the first for a closed loop.
    std::vector<ControlSettings> sample_points() const;

    ParameterLoop reversed() const;
    /// Same geometry with `samples` spread evenly over the segments.
    ParameterLoop with_samples(int samples) const;

    /// Closed, all points admissible for `layout`, adjacent samples closer than `max_step` rad.
    void validate(const BlockLayout &layout, double max_step = 0.5) const;

   private:
    std::vector<LoopSegment> segments_;
    std::string name_;
    std::string orientation_;
};

enum class LoopKind { ZRect, XPath, CZRect };

const char *loop_kind_name(LoopKind kind);

struct LoopCorners {
    double phi1_star = kPi / 3;
    double phi2_star = kPi / 3;
};

/// Rectilinear loops through the switch-off point.
///   Z_RECT / CZ_RECT (labels a, b), base (a, b) = (pi/2, 0):
///     (b: 0 -> phi2*), (a: pi/2 -> phi1*), (b: phi2* -> 0), (a: phi1* -> pi/2).
///   X_PATH (labels a, b), base (pi/2, pi/2): straight ray in (cos a, cos b) to (0, phi2*),
///     (a: 0 -> phi1*), (b: phi2* -> 0), straight ray back to the base.
/// `samples` is the total count over the loop; `base` supplies h and the parked fluxes.
ParameterLoop standard_loop(
    LoopKind kind,
    LoopCorners corners,
    int samples,
    const ControlSettings &base,
    std::pair<std::string, std::string> labels = {"J1", "J2"});

}  // namespace holosim

#endif
