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

#ifndef WSIM_TOMOGRAPHY_H
#define WSIM_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsim/density.h"
#include "wsim/fock.h"
#include "wsim/herald.h"

namespace wsim {

inline constexpr std::uint64_t kDefaultSeed = 20260214;

/// One interferometric setting: a projective measurement on the pair in the
/// {|BR> ± e^{iφ}|RB>}/√2 basis, given a Blue photon in `conditioned_on`.
struct TomoSetting {
    std::pair<int, int> channel_pair{3, 4};
    double phase = 0.0;
    int conditioned_on = 2;

    void validate() const;
};

struct OutcomeProbabilities {
    double plus = 0.0;
    double minus = 0.0;
};

struct MeasurementRecord {
    TomoSetting setting;
    std::int64_t n_plus = 0;
    std::int64_t n_minus = 0;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;

    double frequency_plus() const { return (double)n_plus / (double)shots; }
};

/// p± = ½(ρ00 + ρ11) ± Re(e^{iφ} ρ01).
OutcomeProbabilities setting_probabilities(const PairRho &rho, double phase);

/// Binomial draw of the + outcome. Deterministic in `seed`.
MeasurementRecord sample_record(const TomoSetting &setting, OutcomeProbabilities probs, std::int64_t shots,
                                std::uint64_t seed);

/// ρ01 from the + frequencies at φ = 0 and φ = π/2 of a unit-trace pair.
Complex offdiagonal_from_frequencies(double f0, double f90);
/// Same, from records; throws SettingMismatch unless the records share the
/// pair and conditioning and sit at phases 0 and π/2.
Complex reconstruct_offdiagonal(const MeasurementRecord &rec0, const MeasurementRecord &rec90);

/// Seed for setting number `index` derived from a run seed.
std::uint64_t setting_seed(std::uint64_t seed, std::uint64_t index);

struct TomoOptions {
    /// Shots per setting; unset means exact outcome probabilities.
    std::optional<std::int64_t> shots;
    std::uint64_t seed = kDefaultSeed;
    /// Accepted deviation of each counted diagonal from 1/3.
    double diagonal_tolerance = 0.02;
    std::array<int, 3> channels = HeraldLayout{}.outputs;
};

struct TomoResult {
    ThreePhotonRho rho;
    /// a, b, c from conditioning on a Blue photon in channels[0], [1], [2].
    std::array<Complex, 3> coefficients{};
    std::array<double, 3> standard_errors{};
    /// Counted BBR, BRB, RBB frequencies.
    std::array<double, 3> observed_diagonals{};
    double min_eigenvalue = 0.0;
    std::vector<MeasurementRecord> records;
};

/// Three-conditioning pair tomography followed by linear inversion into the
/// uniform-diagonal three-photon matrix. Throws DiagonalsNotUniform when a
/// counted diagonal deviates from 1/3 by more than the tolerance.
TomoResult reconstruct_rho234(const ThreePhotonRho &source, const TomoOptions &options = {});
/// Reduces a heralded state over options.channels first.
TomoResult reconstruct_rho234(const PureState &heralded, const TomoOptions &options = {});

struct DiscriminationReport {
    double fidelity_w = 0.0;
    double trace_distance_to_rho_s = 0.0;
    double trace_distance_to_rho_b = 0.0;
    bool w_consistent = false;
};

double trace_distance(const ThreePhotonRho &x, const ThreePhotonRho &y);
DiscriminationReport discriminate(const ThreePhotonRho &rho, double w_threshold = 0.9);

}  // namespace wsim

#endif
