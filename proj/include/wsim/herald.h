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

#ifndef WSIM_HERALD_H
#define WSIM_HERALD_H

#include <array>
#include <map>
#include <string>
#include <vector>

#include "wsim/circuit.h"
#include "wsim/density.h"
#include "wsim/fock.h"

namespace wsim {

/// Which filter output announces the three-photon state: a Red photon at T1
/// heralds the two-Blue W state, a Blue photon at T2 the two-Red one.
enum class Branch { T1, T2 };
enum class WTarget { W_T1, W_T2 };

std::string branch_name(Branch b);

/// Detector channels of a heralding setup.
struct HeraldLayout {
    int t1 = canonical::kT1;
    int t2 = canonical::kT2;
    std::array<int, 3> outputs{canonical::kOut2, canonical::kOut3, canonical::kOut4};
};

struct HeraldResult {
    /// Probability of the herald event given a two-pair emission.
    double probability = 0.0;
    /// Normalized state over the output channels; empty when probability is 0.
    PureState heralded_state;
    /// Norm of the four-photon component outside both herald events.
    Complex residual_weight = 0.0;
};

/// Color-resolved herald: conditions the four-photon sector of `state` on
/// the branch photon (Red at T1 or Blue at T2) plus exactly one photon in
/// each output channel. A state without a four-photon component gives
/// probability 0.
HeraldResult herald(const PureState &state, Branch branch, const HeraldLayout &layout = {});

/// Herald with a color-blind detector at T1 or T2: the conditional state is
/// an ensemble over the color of the detected photon.
struct HeraldEnsemble {
    double probability = 0.0;
    /// (conditional weight, normalized output state), weights summing to 1.
    std::vector<std::pair<double, PureState>> members;
};
HeraldEnsemble herald_colorblind(const PureState &state, Branch branch, const HeraldLayout &layout = {});

/// Normalized W state over the three output channels: two Blue and one Red
/// for W_T1, two Red and one Blue for W_T2.
PureState w_state(WTarget target, const std::array<int, 3> &outputs = HeraldLayout{}.outputs);

/// |<W_target|state3>|². Throws NotNormalized when |norm² - 1| > 1e-9.
double w_fidelity(const PureState &state3, WTarget target,
                  const std::array<int, 3> &outputs = HeraldLayout{}.outputs);
double w_fidelity(const HeraldEnsemble &ensemble, WTarget target,
                  const std::array<int, 3> &outputs = HeraldLayout{}.outputs);

/// Probability of each of the 8 color patterns ("BBB" ... "RRR", letters in
/// output-channel order) for one photon per output channel. Other channels
/// are traced out. Throws PatternMismatch for any other photon content.
std::map<std::string, double> coincidence_distribution(const PureState &state3,
                                                       const std::array<int, 3> &outputs = HeraldLayout{}.outputs);
std::map<std::string, double> coincidence_distribution(const ThreePhotonRho &rho);

/// |W_T1><W_T1| in the {BBR, BRB, RBB} basis.
ThreePhotonRho rho_w();
/// Equal incoherent mixture of |BBR>, |BRB>, |RBB>.
ThreePhotonRho rho_incoherent();
/// Equal mixture of a Blue photon in one channel times the Bell state
/// (|BR> + |RB>)/√2 on the other two, over the three choices of channel.
ThreePhotonRho rho_biseparable();

}  // namespace wsim

#endif
