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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.h"
#include "wsim/circuit.h"
#include "wsim/errors.h"
#include "wsim/herald.h"
#include "wsim/serialize.h"
#include "wsim/tomography.h"

using namespace wsim;

namespace {

constexpr double kPi = std::numbers::pi;

PairRho pair(double p00, double p11, Complex off) {
    Eigen::Matrix2cd m;
    m << p00, off, std::conj(off), p11;
    return PairRho::from_matrix(m);
}

TomoOptions sampled(std::int64_t shots, std::uint64_t seed = kDefaultSeed, double diagonal_tolerance = 0.02) {
    TomoOptions o;
    o.shots = shots;
    o.seed = seed;
    o.diagonal_tolerance = diagonal_tolerance;
    return o;
}

ThreePhotonRho random_uniform_diagonal_rho(std::mt19937_64 &rng) {
    // |a|, |b|, |c| < 1/6 keeps the 1/3 diagonal dominant, hence PSD.
    std::uniform_real_distribution<double> mag(0.0, 1.0 / 6.0);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    return ThreePhotonRho::from_coefficients(std::polar(mag(rng), ph(rng)), std::polar(mag(rng), ph(rng)),
                                             std::polar(mag(rng), ph(rng)));
}

}  // namespace

TEST(SettingProbabilities, MaximallyMixedPair) {
    for (double phi : {0.0, 0.3, kPi / 2, 2.0}) {
        auto p = setting_probabilities(pair(0.5, 0.5, 0.0), phi);
        EXPECT_NEAR(p.plus, 0.5, 1e-15);
        EXPECT_NEAR(p.minus, 0.5, 1e-15);
    }
}

TEST(SettingProbabilities, BellStateIsEigenstate) {
    auto p = setting_probabilities(pair(0.5, 0.5, 0.5), 0.0);
    EXPECT_NEAR(p.plus, 1.0, 1e-15);
    EXPECT_NEAR(p.minus, 0.0, 1e-15);
}

TEST(SettingProbabilities, WConditionedPairAtQuarterPhase) {
    PairRho rho = reduce_to_pair(w_state(WTarget::W_T1), {3, 4}, 2);
    auto p = setting_probabilities(rho, kPi / 2);
    EXPECT_NEAR(p.plus, 0.5, 1e-12);
    EXPECT_NEAR(p.minus, 0.5, 1e-12);
}

TEST(SettingProbabilities, MatchesProjectorExpectation) {
    // <±|ρ|±> with |±> = (|BR> ± e^{iφ}|RB>)/√2, evaluated directly.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        double p00 = u(rng);
        double bound = std::sqrt(p00 * (1 - p00));
        PairRho rho = pair(p00, 1 - p00, std::polar(bound * u(rng), 6.28 * u(rng)));
        double phi = 6.28 * u(rng);
        Eigen::Vector2cd plus(1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phi));
        double want = (plus.adjoint() * rho.m * plus)(0, 0).real();
        auto p = setting_probabilities(rho, phi);
        EXPECT_NEAR(p.plus, want, 1e-14);
        EXPECT_NEAR(p.plus + p.minus, 1.0, 1e-14);
    }
}

TEST(SettingProbabilities, InvalidRho) {
    EXPECT_THROW(setting_probabilities(pair(0.7, 0.7, 0.0), 0.0), InvalidRho);
    EXPECT_THROW(setting_probabilities(pair(0.5, 0.5, 0.9), 0.0), InvalidRho);
}

TEST(SampleRecord, CertainOutcome) {
    auto rec = sample_record({}, {1.0, 0.0}, 12345, 9);
    EXPECT_EQ(rec.n_plus, 12345);
    EXPECT_EQ(rec.n_minus, 0);
}

TEST(SampleRecord, FairCoinAtDefaultSeed) {
    auto rec = sample_record({}, {0.5, 0.5}, 100000, kDefaultSeed);
    EXPECT_NEAR(rec.frequency_plus(), 0.5, 5e-3);
    EXPECT_EQ(rec.n_plus + rec.n_minus, rec.shots);
}

TEST(SampleRecord, Deterministic) {
    auto a = sample_record({}, {0.3, 0.7}, 5000, 77);
    auto b = sample_record({}, {0.3, 0.7}, 5000, 77);
    EXPECT_EQ(a.n_plus, b.n_plus);
    EXPECT_EQ(record_to_json(a).dump(), record_to_json(b).dump());
}

TEST(SampleRecord, BadInputs) {
    EXPECT_THROW(sample_record({}, {0.6, 0.6}, 10, 1), BadProbability);
    EXPECT_THROW(sample_record({}, {0.5, 0.5}, 0, 1), BadProbability);
    TomoSetting bad{{3, 4}, 0.0, 4};
    EXPECT_THROW(sample_record(bad, {0.5, 0.5}, 10, 1), SettingMismatch);
}

TEST(ReconstructOffdiagonal, ExactWPair) {
    PairRho rho = reduce_to_pair(w_state(WTarget::W_T1), {3, 4}, 2);
    Complex z = offdiagonal_from_frequencies(setting_probabilities(rho, 0.0).plus,
                                             setting_probabilities(rho, kPi / 2).plus);
    EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(z * (2.0 / 3.0) - 1.0 / 3.0), 0.0, 1e-12);
}

TEST(ReconstructOffdiagonal, ExactIncoherentPair) {
    PairRho rho = rho_incoherent().conditional_pair(0);
    Complex z = offdiagonal_from_frequencies(setting_probabilities(rho, 0.0).plus,
                                             setting_probabilities(rho, kPi / 2).plus);
    EXPECT_NEAR(std::abs(z), 0.0, 1e-15);
}

TEST(ReconstructOffdiagonal, ComplexCoherenceRecovered) {
    Complex off = std::polar(0.3, 1.2);
    PairRho rho = pair(0.5, 0.5, off);
    Complex z = offdiagonal_from_frequencies(setting_probabilities(rho, 0.0).plus,
                                             setting_probabilities(rho, kPi / 2).plus);
    EXPECT_NEAR(std::abs(z - off), 0.0, 1e-15);
}

TEST(ReconstructOffdiagonal, SampledWPair) {
    PairRho rho = reduce_to_pair(w_state(WTarget::W_T1), {3, 4}, 2);
    TomoSetting s0{{3, 4}, 0.0, 2}, s90{{3, 4}, kPi / 2, 2};
    auto r0 = sample_record(s0, setting_probabilities(rho, 0.0), 100000, setting_seed(kDefaultSeed, 1));
    auto r90 = sample_record(s90, setting_probabilities(rho, kPi / 2), 100000, setting_seed(kDefaultSeed, 2));
    EXPECT_LT(std::abs(reconstruct_offdiagonal(r0, r90) - 0.5), 0.01);
}

TEST(ReconstructOffdiagonal, SettingMismatch) {
    TomoSetting s0{{3, 4}, 0.0, 2}, s90{{2, 4}, kPi / 2, 3}, wrong{{3, 4}, 1.0, 2};
    auto r0 = sample_record(s0, {0.5, 0.5}, 10, 1);
    auto r90 = sample_record(s90, {0.5, 0.5}, 10, 1);
    auto rw = sample_record(wrong, {0.5, 0.5}, 10, 1);
    EXPECT_THROW(reconstruct_offdiagonal(r0, r90), SettingMismatch);
    EXPECT_THROW(reconstruct_offdiagonal(r0, rw), SettingMismatch);
}

TEST(ReconstructRho234, IdealWExact) {
    TomoResult r = reconstruct_rho234(rho_w());
    for (Complex z : r.coefficients) {
        EXPECT_NEAR(std::abs(z - 1.0 / 3.0), 0.0, 1e-10);
    }
    EXPECT_TRUE(r.records.empty());
}

TEST(ReconstructRho234, HeraldedCircuitStateExact) {
    CanonicalParams p;
    p.phi1 = 0.8;
    PureState out = propagate(two_pair_state({canonical::kSource, 0.1, 2}), canonical_w_circuit(p));
    TomoResult r = reconstruct_rho234(herald(out, Branch::T1).heralded_state);
    for (Complex z : r.coefficients) {
        EXPECT_NEAR(std::abs(z - 1.0 / 3.0), 0.0, 1e-10);
    }
}

TEST(ReconstructRho234, IncoherentMixtureWithinShotNoise) {
    TomoResult r = reconstruct_rho234(rho_incoherent(), sampled(100000));
    for (int k = 0; k < 3; ++k) {
        EXPECT_LT(std::abs(r.coefficients[k]), 0.01);
        EXPECT_LT(std::abs(r.coefficients[k]), 4.0 * std::sqrt(2.0) * r.standard_errors[k]);
    }
    EXPECT_EQ(r.records.size(), 6u);
}

TEST(ReconstructRho234, BiseparableMatchesOracleWithinThreeSigma) {
    Eigen::Matrix3cd want = oracle::biseparable_by_tensor_products();
    std::array<Complex, 3> coeffs{want(0, 1), want(0, 2), want(1, 2)};
    TomoResult r = reconstruct_rho234(rho_biseparable(), sampled(100000));
    for (int k = 0; k < 3; ++k) {
        // each component independently within 3 sigma (real and imaginary
        // parts share the reported per-coefficient error)
        EXPECT_LT(std::abs(r.coefficients[k].real() - coeffs[k].real()), 3.0 * r.standard_errors[k]) << k;
        EXPECT_LT(std::abs(r.coefficients[k].imag() - coeffs[k].imag()), 3.0 * r.standard_errors[k]) << k;
        EXPECT_GT(std::abs(r.coefficients[k] - 1.0 / 3.0), 0.1);
        EXPECT_GT(std::abs(r.coefficients[k]), 0.1);
    }
}

TEST(ReconstructRho234, DiagonalsNotUniformReportsObservations) {
    ThreePhotonRho skew = ThreePhotonRho::from_matrix(
        (Eigen::Matrix3cd() << 0.5, 0, 0, 0, 0.25, 0, 0, 0, 0.25).finished());
    try {
        reconstruct_rho234(skew, sampled(100000));
        FAIL() << "expected DiagonalsNotUniform";
    } catch (const DiagonalsNotUniform &e) {
        EXPECT_NE(std::string(e.what()).find("Counted diagonals (0.4"), std::string::npos) << e.what();
    }
    EXPECT_THROW(reconstruct_rho234(skew), DiagonalsNotUniform);
    TomoOptions loose;
    loose.diagonal_tolerance = 0.2;
    EXPECT_NO_THROW(reconstruct_rho234(skew, loose));
}

TEST(ReconstructRho234, RoundTripOnRandomUniformDiagonalStates) {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 30; ++k) {
        ThreePhotonRho rho = random_uniform_diagonal_rho(rng);
        TomoResult r = reconstruct_rho234(rho);
        EXPECT_NEAR(std::abs(r.coefficients[0] - rho.a()), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(r.coefficients[1] - rho.b()), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(r.coefficients[2] - rho.c()), 0.0, 1e-10);
    }
}

TEST(ReconstructRho234, HermitianUnitTraceAndPsdAtTenThousandShots) {
    for (const ThreePhotonRho &src : {rho_w(), rho_incoherent(), rho_biseparable()}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            TomoResult r = reconstruct_rho234(src, sampled(10000, seed));
            EXPECT_LT((r.rho.m - r.rho.m.adjoint()).norm(), 1e-15);
            EXPECT_NEAR(r.rho.trace(), 1.0, 1e-15);
            // statistical tolerance: a few standard errors below zero
            double se = *std::max_element(r.standard_errors.begin(), r.standard_errors.end());
            EXPECT_GT(r.min_eigenvalue, -6.0 * se) << seed;
        }
    }
}

TEST(ReconstructRho234, ShotNoiseScalesAsInverseRootShots) {
    const int kSeeds = 60;
    std::vector<double> spreads;
    for (std::int64_t shots : {1000, 10000, 100000}) {
        double sum = 0.0, sum2 = 0.0;
        for (int s = 0; s < kSeeds; ++s) {
            double a = reconstruct_rho234(rho_biseparable(), sampled(shots, 1000 + s, 1.0)).coefficients[0].real();
            sum += a;
            sum2 += a * a;
        }
        double mean = sum / kSeeds;
        spreads.push_back(std::sqrt(std::max(0.0, sum2 / kSeeds - mean * mean)));
    }
    for (int k = 0; k + 1 < 3; ++k) {
        double ratio = spreads[k] / spreads[k + 1];
        EXPECT_GT(ratio, std::sqrt(10.0) / 2.0) << k;
        EXPECT_LT(ratio, std::sqrt(10.0) * 2.0) << k;
    }
    // the reported error follows the same law
    double se3 = reconstruct_rho234(rho_biseparable(), sampled(1000, kDefaultSeed, 1.0)).standard_errors[0];
    double se5 = reconstruct_rho234(rho_biseparable(), sampled(100000)).standard_errors[0];
    EXPECT_NEAR(se3 / se5, 10.0, 2.0);
}

TEST(ReconstructRho234, ExactModeIgnoresSeed) {
    TomoOptions a, b;
    b.seed = 99;
    EXPECT_EQ(reconstruct_rho234(rho_biseparable(), a).coefficients,
              reconstruct_rho234(rho_biseparable(), b).coefficients);
}

TEST(PairEmbedding, CircuitStatesHaveNoSameColorPairs) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 10; ++k) {
        CanonicalParams p;
        p.r1 = u(rng);
        p.r2 = u(rng);
        p.r3 = u(rng);
        PureState out = propagate(two_pair_state({canonical::kSource, 0.1, 2}), canonical_w_circuit(p));
        PureState h = herald(out, Branch::T1).heralded_state;
        for (auto [pa, blue] : {std::pair{std::pair{3, 4}, 2}, {{2, 4}, 3}, {{2, 3}, 4}}) {
            Eigen::Matrix4cd full = reduce_pair_full(h, pa, blue);
            for (int i = 0; i < 4; ++i) {
                EXPECT_LT(std::abs(full(0, i)), 1e-15);
                EXPECT_LT(std::abs(full(i, 0)), 1e-15);
                EXPECT_LT(std::abs(full(3, i)), 1e-15);
                EXPECT_LT(std::abs(full(i, 3)), 1e-15);
            }
            PairRho small = reduce_to_pair(h, pa, blue);
            EXPECT_LT((small.embed4() - full).norm(), 1e-14);
        }
    }
}

TEST(Discriminate, Examples) {
    DiscriminationReport w = discriminate(rho_w());
    EXPECT_NEAR(w.fidelity_w, 1.0, 1e-15);
    EXPECT_TRUE(w.w_consistent);
    DiscriminationReport s = discriminate(rho_incoherent());
    EXPECT_NEAR(s.fidelity_w, 1.0 / 3.0, 1e-12);
    EXPECT_FALSE(s.w_consistent);
    EXPECT_NEAR(s.trace_distance_to_rho_s, 0.0, 1e-15);
    DiscriminationReport b = discriminate(rho_biseparable());
    EXPECT_GT(b.fidelity_w, 1.0 / 3.0 + 1e-6);
    EXPECT_LT(b.fidelity_w, 1.0 - 1e-6);
    EXPECT_NEAR(b.fidelity_w, 2.0 / 3.0, 1e-12);
    EXPECT_FALSE(b.w_consistent);
    EXPECT_TRUE(discriminate(rho_biseparable(), 0.5).w_consistent);
}

TEST(Discriminate, TraceDistanceOracle) {
    // ρ_W - ρ_S has eigenvalues (2/3, -1/3, -1/3): distance 2/3.
    EXPECT_NEAR(trace_distance(rho_w(), rho_incoherent()), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(trace_distance(rho_w(), rho_biseparable()), 1.0 / 3.0, 1e-12);
}

TEST(Serialize, RecordRoundTrip) {
    auto rec = sample_record({{2, 3}, kPi / 2, 4}, {0.25, 0.75}, 1000, 42);
    MeasurementRecord back = record_from_json(record_to_json(rec));
    EXPECT_EQ(back.n_plus, rec.n_plus);
    EXPECT_EQ(back.shots, rec.shots);
    EXPECT_EQ(back.seed, rec.seed);
    EXPECT_EQ(back.setting.channel_pair, rec.setting.channel_pair);
    EXPECT_EQ(back.setting.phase, rec.setting.phase);
    EXPECT_THROW(record_from_json(nlohmann::json::object()), ValidationError);
}

TEST(Serialize, MatrixCsvIsRowMajorReImPairs) {
    Eigen::MatrixXcd m(2, 2);
    m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
    EXPECT_EQ(matrix_to_csv(m), "re_0,im_0,re_1,im_1\n1,2,3,4\n5,6,7,8\n");
    auto j = matrix_to_json(m);
    EXPECT_EQ(j[1][0]["re"].get<double>(), 5.0);
}

TEST(Serialize, ShortestRoundTripDoubles) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
