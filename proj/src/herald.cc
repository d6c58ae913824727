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

#include "wsim/herald.h"

#include <algorithm>
#include <cmath>

#include "wsim/errors.h"

namespace wsim {

namespace {

constexpr int kHeraldPhotons = 4;

DetectionPattern herald_pattern(int detector, std::optional<Color> color, const HeraldLayout &layout) {
    DetectionPattern p;
    p.rest_empty = true;
    p.require(detector, 1, color);
    for (int c : layout.outputs) {
        p.require(c, 1);
    }
    return p;
}

int detector_of(Branch b, const HeraldLayout &layout) {
    return b == Branch::T1 ? layout.t1 : layout.t2;
}

Color herald_color(Branch b) {
    return b == Branch::T1 ? Color::Red : Color::Blue;
}

double matched_norm(const PureState &s, const DetectionPattern &p) {
    double n = 0.0;
    for (const auto &[b, amp] : s.terms()) {
        if (b.total_photons() == kHeraldPhotons && p.matches(b)) {
            n += std::norm(amp);
        }
    }
    return n;
}

double sector_norm(const PureState &s) {
    double n = 0.0;
    for (const auto &[b, amp] : s.terms()) {
        if (b.total_photons() == kHeraldPhotons) {
            n += std::norm(amp);
        }
    }
    return n;
}

PureState strip_detector(const PureState &s, const DetectionPattern &p, int detector, std::optional<Color> color) {
    PureState out;
    for (const auto &[b, amp] : s.terms()) {
        if (b.total_photons() == kHeraldPhotons && p.matches(b) && (!color || b.count({detector, *color}) == 1)) {
            out.add(b.without_channel(detector), amp);
        }
    }
    return out;
}

}  // namespace

std::string branch_name(Branch b) {
    return b == Branch::T1 ? "T1" : "T2";
}

HeraldResult herald(const PureState &state, Branch branch, const HeraldLayout &layout) {
    HeraldResult result;
    double total = sector_norm(state);
    if (total == 0.0) {
        return result;
    }
    int detector = detector_of(branch, layout);
    DetectionPattern mine = herald_pattern(detector, herald_color(branch), layout);
    DetectionPattern t1 = herald_pattern(layout.t1, Color::Red, layout);
    DetectionPattern t2 = herald_pattern(layout.t2, Color::Blue, layout);

    double part = matched_norm(state, mine);
    result.probability = part / total;
    double rest = 1.0 - (matched_norm(state, t1) + matched_norm(state, t2)) / total;
    result.residual_weight = std::sqrt(std::max(0.0, rest));
    if (part > 0.0) {
        result.heralded_state = strip_detector(state, mine, detector, std::nullopt).normalized();
    }
    return result;
}

HeraldEnsemble herald_colorblind(const PureState &state, Branch branch, const HeraldLayout &layout) {
    HeraldEnsemble result;
    double total = sector_norm(state);
    if (total == 0.0) {
        return result;
    }
    int detector = detector_of(branch, layout);
    DetectionPattern any = herald_pattern(detector, std::nullopt, layout);
    double part = matched_norm(state, any);
    result.probability = part / total;
    if (part == 0.0) {
        return result;
    }
    for (Color c : {Color::Red, Color::Blue}) {
        PureState member = strip_detector(state, any, detector, c);
        double n = member.norm_squared();
        if (n > 0.0) {
            result.members.emplace_back(n / part, member.normalized());
        }
    }
    return result;
}

PureState w_state(WTarget target, const std::array<int, 3> &outputs) {
    Color major = target == WTarget::W_T1 ? Color::Blue : Color::Red;
    Color minor = target == WTarget::W_T1 ? Color::Red : Color::Blue;
    PureState w;
    // Minority photon in the last, middle and first channel.
    for (int odd = 2; odd >= 0; --odd) {
        PureState term = PureState::vacuum();
        for (int k = 0; k < 3; ++k) {
            term = apply_creation(term, {outputs[k], k == odd ? minor : major});
        }
        w = w + term * (1.0 / std::sqrt(3.0));
    }
    return w;
}

double w_fidelity(const PureState &state3, WTarget target, const std::array<int, 3> &outputs) {
    double n = state3.norm_squared();
    if (std::abs(n - 1.0) > 1e-9) {
        throw NotNormalized("Fidelity needs a normalized state; norm^2 = " + std::to_string(n) + ".");
    }
    return std::clamp(std::norm(inner_product(w_state(target, outputs), state3)), 0.0, 1.0);
}

double w_fidelity(const HeraldEnsemble &ensemble, WTarget target, const std::array<int, 3> &outputs) {
    double f = 0.0;
    for (const auto &[p, s] : ensemble.members) {
        f += p * w_fidelity(s, target, outputs);
    }
    return std::clamp(f, 0.0, 1.0);
}

namespace {

std::map<std::string, double> empty_distribution() {
    std::map<std::string, double> d;
    for (int bits = 0; bits < 8; ++bits) {
        std::string key;
        for (int k = 2; k >= 0; --k) {
            key += (bits >> k) & 1 ? 'R' : 'B';
        }
        d[key] = 0.0;
    }
    return d;
}

}  // namespace

std::map<std::string, double> coincidence_distribution(const PureState &state3, const std::array<int, 3> &outputs) {
    auto dist = empty_distribution();
    double total = state3.norm_squared();
    if (total == 0.0) {
        throw EmptyState("Coincidence statistics of a zero state are undefined.");
    }
    for (const auto &[b, amp] : state3.terms()) {
        std::string key;
        for (int c : outputs) {
            if (b.channel_count(c) != 1) {
                throw PatternMismatch("Expected one photon in channel " + std::to_string(c) + "; found " + b.str());
            }
            key += b.count({c, Color::Blue}) == 1 ? 'B' : 'R';
        }
        dist[key] += std::norm(amp) / total;
    }
    return dist;
}

std::map<std::string, double> coincidence_distribution(const ThreePhotonRho &rho) {
    auto dist = empty_distribution();
    auto d = rho.diagonal();
    dist["BBR"] = d[0];
    dist["BRB"] = d[1];
    dist["RBB"] = d[2];
    return dist;
}

ThreePhotonRho rho_w() {
    return ThreePhotonRho::from_coefficients(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
}

ThreePhotonRho rho_incoherent() {
    return ThreePhotonRho::from_coefficients(0.0, 0.0, 0.0);
}

ThreePhotonRho rho_biseparable() {
    const std::array<int, 3> ch{0, 1, 2};
    Eigen::Matrix3cd sum = Eigen::Matrix3cd::Zero();
    for (int blue = 0; blue < 3; ++blue) {
        int p = blue == 0 ? 1 : 0;
        int q = blue == 2 ? 1 : 2;
        PureState bell;
        for (auto [cp, cq] : {std::pair{Color::Blue, Color::Red}, std::pair{Color::Red, Color::Blue}}) {
            FockBasisState b({{{ch[blue], Color::Blue}, 1}, {{ch[p], cp}, 1}, {{ch[q], cq}, 1}});
            bell.add(b, 1.0 / std::sqrt(2.0));
        }
        sum += reduce_to_triple(bell, ch).m;
    }
    return ThreePhotonRho::from_matrix(sum / 3.0);
}

}  // namespace wsim
