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

#include "wsim/tomography.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wsim/errors.h"

namespace wsim {

namespace {

constexpr double kPhaseTol = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::int64_t draw_binomial(std::int64_t n, double p, std::mt19937_64 &rng) {
    if (n <= 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    std::binomial_distribution<std::int64_t> dist(n, p);
    return dist(rng);
}

}  // namespace

void TomoSetting::validate() const {
    if (channel_pair.first == channel_pair.second || conditioned_on == channel_pair.first ||
        conditioned_on == channel_pair.second) {
        throw SettingMismatch("Conditioning channel must lie outside a pair of distinct channels.");
    }
}

OutcomeProbabilities setting_probabilities(const PairRho &rho, double phase) {
    rho.validate();
    double half_pop = 0.5 * (rho.m(0, 0).real() + rho.m(1, 1).real());
    double coherence = (std::polar(1.0, phase) * rho.m(0, 1)).real();
    return {half_pop + coherence, half_pop - coherence};
}

MeasurementRecord sample_record(const TomoSetting &setting, OutcomeProbabilities probs, std::int64_t shots,
                                std::uint64_t seed) {
    setting.validate();
    if (shots < 1) {
        throw BadProbability("Sampling needs at least one shot.");
    }
    if (probs.plus < -1e-12 || probs.minus < -1e-12 || std::abs(probs.plus + probs.minus - 1.0) > 1e-9) {
        throw BadProbability(
            "Outcome probabilities (" + std::to_string(probs.plus) + ", " + std::to_string(probs.minus) +
            ") do not form a distribution.");
    }
    std::mt19937_64 rng(seed);
    MeasurementRecord rec;
    rec.setting = setting;
    rec.shots = shots;
    rec.seed = seed;
    rec.n_plus = draw_binomial(shots, std::clamp(probs.plus, 0.0, 1.0), rng);
    rec.n_minus = shots - rec.n_plus;
    return rec;
}

Complex offdiagonal_from_frequencies(double f0, double f90) {
    return {f0 - 0.5, -(f90 - 0.5)};
}

Complex reconstruct_offdiagonal(const MeasurementRecord &rec0, const MeasurementRecord &rec90) {
    const auto &s0 = rec0.setting;
    const auto &s90 = rec90.setting;
    if (s0.channel_pair != s90.channel_pair || s0.conditioned_on != s90.conditioned_on) {
        throw SettingMismatch("Records belong to different pairs or conditionings.");
    }
    if (std::abs(s0.phase) > kPhaseTol || std::abs(s90.phase - std::numbers::pi / 2) > kPhaseTol) {
        throw SettingMismatch("Records must be taken at phases 0 and pi/2.");
    }
    if (rec0.shots < 1 || rec90.shots < 1) {
        throw SettingMismatch("Records without shots carry no frequency.");
    }
    return offdiagonal_from_frequencies(rec0.frequency_plus(), rec90.frequency_plus());
}

std::uint64_t setting_seed(std::uint64_t seed, std::uint64_t index) {
    return seed ^ splitmix64(index);
}

TomoResult reconstruct_rho234(const ThreePhotonRho &source, const TomoOptions &options) {
    source.validate();
    if (options.shots && *options.shots < 1) {
        throw BadProbability("Tomography needs at least one shot per setting.");
    }
    TomoResult result;

    // Counting: BBR, BRB, RBB coincidences.
    auto diag = source.diagonal();
    if (options.shots) {
        std::int64_t n = *options.shots;
        std::mt19937_64 rng(setting_seed(options.seed, 0));
        std::int64_t left = n;
        double p_left = 1.0;
        for (int k = 0; k < 3; ++k) {
            std::int64_t c = k == 2 ? left : draw_binomial(left, p_left > 0 ? diag[k] / p_left : 0.0, rng);
            result.observed_diagonals[k] = (double)c / (double)n;
            left -= c;
            p_left -= diag[k];
        }
    } else {
        result.observed_diagonals = diag;
    }
    for (double d : result.observed_diagonals) {
        if (std::abs(d - 1.0 / 3.0) > options.diagonal_tolerance) {
            std::ostringstream msg;
            msg << "Counted diagonals (" << result.observed_diagonals[0] << ", " << result.observed_diagonals[1]
                << ", " << result.observed_diagonals[2] << ") deviate from 1/3 by more than "
                << options.diagonal_tolerance << ".";
            throw DiagonalsNotUniform(msg.str());
        }
    }

    const auto &ch = options.channels;
    const std::array<std::pair<int, int>, 3> pairs{{{ch[1], ch[2]}, {ch[0], ch[2]}, {ch[0], ch[1]}}};
    for (int k = 0; k < 3; ++k) {
        PairRho pair = source.conditional_pair(k);
        std::array<double, 2> freq{};
        for (int p = 0; p < 2; ++p) {
            TomoSetting setting{pairs[k], p == 0 ? 0.0 : std::numbers::pi / 2, ch[k]};
            auto probs = setting_probabilities(pair, setting.phase);
            if (options.shots) {
                auto rec = sample_record(setting, probs, *options.shots, setting_seed(options.seed, 1 + 2 * k + p));
                freq[p] = rec.frequency_plus();
                result.records.push_back(rec);
            } else {
                freq[p] = probs.plus;
            }
        }
        // With 1/3 diagonals the conditioned pair carries 3/2 of the coherence.
        result.coefficients[k] = offdiagonal_from_frequencies(freq[0], freq[1]) * (2.0 / 3.0);
        if (options.shots) {
            double n = (double)*options.shots;
            double var = freq[0] * (1 - freq[0]) / n + freq[1] * (1 - freq[1]) / n;
            result.standard_errors[k] = (2.0 / 3.0) * std::sqrt(var);
        }
    }
    result.rho = ThreePhotonRho::from_coefficients(result.coefficients[0], result.coefficients[1],
                                                   result.coefficients[2]);
    result.min_eigenvalue = result.rho.min_eigenvalue();
    return result;
}

TomoResult reconstruct_rho234(const PureState &heralded, const TomoOptions &options) {
    return reconstruct_rho234(reduce_to_triple(heralded, options.channels), options);
}

double trace_distance(const ThreePhotonRho &x, const ThreePhotonRho &y) {
    Eigen::Matrix3cd d = x.m - y.m;
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DiscriminationReport discriminate(const ThreePhotonRho &rho, double w_threshold) {
    DiscriminationReport r;
    r.fidelity_w = rho.m.sum().real() / 3.0;
    r.trace_distance_to_rho_s = trace_distance(rho, rho_incoherent());
    r.trace_distance_to_rho_b = trace_distance(rho, rho_biseparable());
    r.w_consistent = r.fidelity_w > w_threshold;
    return r;
}

}  // namespace wsim
