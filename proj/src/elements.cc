// Copyright 2026 The wsim Authors
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

#include "wsim/elements.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "wsim/errors.h"

namespace wsim {

namespace {

std::vector<ModeLabel> both_colors(std::set<int> channels) {
    std::vector<ModeLabel> modes;
    for (int c : channels) {
        modes.push_back({c, Color::Red});
        modes.push_back({c, Color::Blue});
    }
    return modes;
}

void set_entry(Eigen::MatrixXcd &m, const ModeTransform &layout, ModeLabel in, ModeLabel out, Complex v) {
    m((Eigen::Index)*layout.index_of(in), (Eigen::Index)*layout.index_of(out)) = v;
}

}  // namespace

DirectionalCoupler DirectionalCoupler::from_reflection(int in_a, int in_b, double r, double phi) {
    DirectionalCoupler dc;
    dc.in_a = in_a;
    dc.in_b = in_b;
    dc.r = r;
    dc.t = std::sqrt(std::max(0.0, 1.0 - r * r));
    dc.phi = phi;
    return dc;
}

ModeTransform coupler_transform(const DirectionalCoupler &dc) {
    if (dc.r < 0.0 || dc.r > 1.0 || dc.t < 0.0 || dc.t > 1.0) {
        throw ParamOutOfRange("Coupler coefficients must lie in [0, 1].");
    }
    double norm2 = dc.r * dc.r + dc.t * dc.t;
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw NotUnitary("Coupler has r^2 + t^2 = " + std::to_string(norm2) + ".");
    }
    double scale = 1.0 / std::sqrt(norm2);
    double r = dc.r * scale;
    double t = dc.t * scale;
    Complex cross = r * std::polar(1.0, dc.phi);
    Complex back = -std::conj(cross);

    int oa = dc.out_a();
    int ob = dc.out_b();
    bool in_place = oa == dc.in_a && ob == dc.in_b;
    std::set<int> channels{dc.in_a, dc.in_b, oa, ob};
    if (dc.in_a == dc.in_b || oa == ob || (!in_place && channels.size() != 4)) {
        throw ChannelCollision("Directional coupler channels must be distinct.");
    }

    ModeTransform layout = ModeTransform::identity(both_colors(channels));
    auto n = (Eigen::Index)layout.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Color c : {Color::Red, Color::Blue}) {
        set_entry(m, layout, {dc.in_a, c}, {oa, c}, t);
        set_entry(m, layout, {dc.in_a, c}, {ob, c}, cross);
        set_entry(m, layout, {dc.in_b, c}, {oa, c}, back);
        set_entry(m, layout, {dc.in_b, c}, {ob, c}, t);
        if (!in_place) {
            set_entry(m, layout, {oa, c}, {dc.in_a, c}, 1.0);
            set_entry(m, layout, {ob, c}, {dc.in_b, c}, 1.0);
        }
    }
    return ModeTransform(layout.modes(), std::move(m));
}

ModeTransform adddrop_transform(const AddDropFilter &ad) {
    if (ad.input == ad.through || ad.input == ad.drop || ad.through == ad.drop) {
        throw ChannelCollision("Add-drop filter needs three distinct channels.");
    }
    if (!(ad.extinction >= 0.0 && ad.extinction <= 1.0)) {
        throw ParamOutOfRange("Add-drop extinction must lie in [0, 1].");
    }
    ModeTransform layout = ModeTransform::identity(both_colors({ad.input, ad.through, ad.drop}));
    auto n = (Eigen::Index)layout.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    double leak = std::sqrt(ad.extinction);
    double pass = std::sqrt(1.0 - ad.extinction);
    for (Color c : {Color::Red, Color::Blue}) {
        if (c == ad.resonant_color) {
            set_entry(m, layout, {ad.input, c}, {ad.through, c}, leak);
            set_entry(m, layout, {ad.input, c}, {ad.drop, c}, pass);
            // The drop port used as an input acts as the add port.
            set_entry(m, layout, {ad.drop, c}, {ad.through, c}, pass);
            set_entry(m, layout, {ad.drop, c}, {ad.drop, c}, -leak);
        } else {
            set_entry(m, layout, {ad.input, c}, {ad.through, c}, 1.0);
            set_entry(m, layout, {ad.drop, c}, {ad.drop, c}, 1.0);
        }
        set_entry(m, layout, {ad.through, c}, {ad.input, c}, 1.0);
    }
    return ModeTransform(layout.modes(), std::move(m));
}

namespace {

PureState pair_power(int channel, int pairs) {
    PureState s = PureState::vacuum();
    for (int k = 0; k < pairs; ++k) {
        s = apply_creation(s, {channel, Color::Blue});
        s = apply_creation(s, {channel, Color::Red});
    }
    return s;
}

void check_source(const SourceSpec &src) {
    if (src.max_order < 0 || src.max_order > 2) {
        throw OrderOutOfRange("Source max_order must be 0, 1 or 2; got " + std::to_string(src.max_order) + ".");
    }
    if (std::norm(src.beta) > 1.0) {
        throw ParamOutOfRange("Source |beta|^2 must not exceed 1.");
    }
}

}  // namespace

PureState source_state(const SourceSpec &src) {
    check_source(src);
    const Complex beta = src.beta;
    PureState s = PureState::vacuum() * (1.0 - 0.5 * beta * beta);
    if (src.max_order >= 1) {
        s = s + pair_power(src.channel, 1) * beta;
    }
    if (src.max_order >= 2) {
        s = s + pair_power(src.channel, 2) * (0.5 * beta * beta);
    }
    s.prune();
    return s;
}

PureState two_pair_state(const SourceSpec &src) {
    check_source(src);
    return pair_power(src.channel, 2).normalized().with_weight(src.beta * src.beta);
}

}  // namespace wsim
