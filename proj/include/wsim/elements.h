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

#ifndef WSIM_ELEMENTS_H
#define WSIM_ELEMENTS_H

#include <optional>
#include <utility>

#include "wsim/fock.h"

namespace wsim {

/// Integrated beam splitter between two waveguides.
///
/// The input operators expand as
///     a†_in_a = t a†_out_a + r e^{iφ} a†_out_b
///     a†_in_b = -r e^{-iφ} a†_out_a + t a†_out_b
/// identically for both colors. The second row is the unitary completion of
/// the first; at φ = π/2 the matrix is the symmetric [[t, ir], [ir, t]]. Without explicit outputs the coupler acts in
/// place (out = in). With distinct outputs, the output channels used as
/// inputs map back onto the input channels so the transform stays unitary.
struct DirectionalCoupler {
    int in_a = 0;
    int in_b = 1;
    std::optional<std::pair<int, int>> out;
    double r = 0.0;
    double t = 1.0;
    double phi = 0.0;

    /// Fills t = sqrt(1 - r^2).
    static DirectionalCoupler from_reflection(int in_a, int in_b, double r, double phi = 0.0);

    int out_a() const { return out ? out->first : in_a; }
    int out_b() const { return out ? out->second : in_b; }
};

/// Ring filter that drops its resonant color and passes the other color.
/// `extinction` is the amplitude-squared leak of the resonant color into the
/// through port (0 is an ideal filter, 1 disables it).
struct AddDropFilter {
    int input = 0;
    int through = 1;
    int drop = 2;
    Color resonant_color = Color::Blue;
    double extinction = 0.0;
};

/// Pair source at `channel` with pair amplitude `beta`, truncated after
/// `max_order` pairs.
struct SourceSpec {
    int channel = 0;
    Complex beta = 0.0;
    int max_order = 2;
};

ModeTransform coupler_transform(const DirectionalCoupler &dc);
ModeTransform adddrop_transform(const AddDropFilter &ad);

/// (1 - β²/2)|vac> + β a†_B a†_R |vac> + (β²/2)(a†_B a†_R)² |vac>, keeping
/// orders up to max_order. The returned weight is 1.
PureState source_state(const SourceSpec &src);

/// The two-pair emission alone: normalized |2_B, 2_R> at the source channel
/// with weight β² (so the event probability is |β|⁴).
PureState two_pair_state(const SourceSpec &src);

}  // namespace wsim

#endif
