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
#include <random>

#include <gtest/gtest.h>

#include "oracle.h"
#include "wsim/circuit.h"
#include "wsim/errors.h"
#include "wsim/herald.h"

using namespace wsim;
using namespace wsim::canonical;

namespace {

PureState triple(Color a, Color b, Color c) {
    return PureState::basis(FockBasisState({{{kOut2, a}, 1}, {{kOut3, b}, 1}, {{kOut4, c}, 1}}));
}

constexpr Color kB = Color::Blue;
constexpr Color kR = Color::Red;

CanonicalParams draw(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::uniform_real_distribution<double> ph(-M_PI, M_PI);
    CanonicalParams p;
    p.r1 = u(rng);
    p.r2 = u(rng);
    p.r3 = u(rng);
    p.phi1 = ph(rng);
    p.phi2 = ph(rng);
    p.phi3 = ph(rng);
    return p;
}

PureState circuit_output(const CanonicalParams &p) {
    return propagate(two_pair_state({kSource, 0.1, 2}), canonical_w_circuit(p));
}

}  // namespace

TEST(Herald, VacuumHasZeroProbability) {
    HeraldResult h = herald(PureState::vacuum(), Branch::T1);
    EXPECT_EQ(h.probability, 0.0);
    EXPECT_TRUE(h.heralded_state.empty());
}

TEST(Herald, IdealCircuitYieldsExactWStates) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 20; ++k) {
        PureState out = circuit_output(draw(rng));
        HeraldResult t1 = herald(out, Branch::T1);
        HeraldResult t2 = herald(out, Branch::T2);
        EXPECT_NEAR(w_fidelity(t1.heralded_state, WTarget::W_T1), 1.0, 1e-12);
        EXPECT_NEAR(w_fidelity(t2.heralded_state, WTarget::W_T2), 1.0, 1e-12);
        EXPECT_NEAR(t1.heralded_state.norm_squared(), 1.0, 1e-12);
        EXPECT_GE(t1.probability, 0.0);
        EXPECT_LE(t1.probability, 1.0);
    }
}

TEST(Herald, HeraldedStateIndependentOfParameters) {
    std::mt19937_64 rng(42);
    PureState reference = herald(circuit_output(draw(rng)), Branch::T1).heralded_state;
    for (int k = 0; k < 10; ++k) {
        PureState s = herald(circuit_output(draw(rng)), Branch::T1).heralded_state;
        EXPECT_NEAR(std::norm(inner_product(reference, s)), 1.0, 1e-12);
    }
}

TEST(Herald, BranchesEquallyLikelyAtOptimum) {
    PureState out = circuit_output({});
    double p1 = herald(out, Branch::T1).probability;
    double p2 = herald(out, Branch::T2).probability;
    EXPECT_GT(p1, 0.0);
    EXPECT_NEAR(p1, p2, 1e-15);
    // 12 (r1 t1^3 r2 t2^2 r3 t3)^2 with the prefactor equal to 1/16 at the optimum.
    EXPECT_NEAR(p1, 3.0 / 64.0, 1e-15);
}

TEST(Herald, BranchSymmetryAndPrefactorRatio) {
    std::mt19937_64 rng(43);
    std::vector<double> ratios;
    for (int k = 0; k < 50; ++k) {
        CanonicalParams p = draw(rng);
        PureState out = circuit_output(p);
        double p1 = herald(out, Branch::T1).probability;
        double p2 = herald(out, Branch::T2).probability;
        EXPECT_NEAR(p1, p2, 1e-12);
        double pre = oracle::herald_prefactor(p.r1, p.r2, p.r3);
        ratios.push_back(p1 / (pre * pre));
    }
    auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    EXPECT_LT((*hi - *lo) / *lo, 1e-9);
    EXPECT_NEAR(ratios.front(), 12.0, 1e-9);
}

TEST(Herald, ResidualWeightAccountsForOtherEvents) {
    PureState out = circuit_output({});
    HeraldResult h = herald(out, Branch::T1);
    double p2 = herald(out, Branch::T2).probability;
    EXPECT_NEAR(std::norm(h.residual_weight) + h.probability + p2, 1.0, 1e-12);
}

TEST(Herald, ColorblindEnsembleIsPureWhenFilterIsIdeal) {
    HeraldEnsemble e = herald_colorblind(circuit_output({}), Branch::T1);
    EXPECT_NEAR(w_fidelity(e, WTarget::W_T1), 1.0, 1e-12);
    double total = 0.0;
    for (const auto &[w, s] : e.members) {
        total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Herald, LeakyFilterLowersColorblindFidelity) {
    CanonicalParams p;
    p.ad2_extinction = 0.1;
    HeraldEnsemble e = herald_colorblind(circuit_output(p), Branch::T1);
    double f = w_fidelity(e, WTarget::W_T1);
    EXPECT_LT(f, 1.0 - 1e-6);
    EXPECT_GT(f, 0.5);
}

TEST(WFidelity, Examples) {
    EXPECT_NEAR(w_fidelity(w_state(WTarget::W_T1), WTarget::W_T1), 1.0, 1e-15);
    EXPECT_NEAR(w_fidelity(triple(kB, kB, kR), WTarget::W_T1), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(w_fidelity(w_state(WTarget::W_T2), WTarget::W_T1), 0.0, 1e-15);
}

TEST(WFidelity, RejectsUnnormalizedInput) {
    EXPECT_THROW(w_fidelity(triple(kB, kB, kR) * 2.0, WTarget::W_T1), NotNormalized);
    EXPECT_NO_THROW(w_fidelity(triple(kB, kB, kR) * (1.0 + 1e-11), WTarget::W_T1));
}

TEST(Coincidence, WStateIsUniformOverAllowedPatterns) {
    auto d = coincidence_distribution(w_state(WTarget::W_T1));
    ASSERT_EQ(d.size(), 8u);
    double total = 0.0;
    for (const auto &[k, v] : d) {
        total += v;
        bool allowed = k == "BBR" || k == "BRB" || k == "RBB";
        EXPECT_NEAR(v, allowed ? 1.0 / 3.0 : 0.0, 1e-12) << k;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Coincidence, BasisTermIsCertain) {
    auto d = coincidence_distribution(triple(kB, kB, kR));
    EXPECT_NEAR(d.at("BBR"), 1.0, 1e-15);
    EXPECT_NEAR(d.at("RBB"), 0.0, 1e-15);
}

TEST(Coincidence, MixturesShareTheWDiagonal) {
    auto w = coincidence_distribution(rho_w());
    auto s = coincidence_distribution(rho_incoherent());
    auto b = coincidence_distribution(rho_biseparable());
    for (const auto &[k, v] : w) {
        EXPECT_NEAR(s.at(k), v, 1e-12) << k;
        EXPECT_NEAR(b.at(k), v, 1e-12) << k;
    }
    EXPECT_NEAR(b.at("BRB"), 1.0 / 3.0, 1e-12);
}

TEST(Coincidence, PatternMismatch) {
    PureState two = PureState::basis(FockBasisState({{{kOut2, kB}, 1}, {{kOut3, kB}, 1}}));
    EXPECT_THROW(coincidence_distribution(two), PatternMismatch);
    PureState doubled = PureState::basis(FockBasisState({{{kOut2, kB}, 2}, {{kOut4, kR}, 1}}));
    EXPECT_THROW(coincidence_distribution(doubled), PatternMismatch);
}

TEST(MixedStates, IncoherentMixture) {
    ThreePhotonRho s = rho_incoherent();
    for (double d : s.diagonal()) {
        EXPECT_NEAR(d, 1.0 / 3.0, 1e-15);
    }
    EXPECT_EQ(s.a(), Complex(0.0));
    EXPECT_EQ(s.b(), Complex(0.0));
    EXPECT_EQ(s.c(), Complex(0.0));
    EXPECT_NEAR(s.trace(), 1.0, 1e-15);
}

TEST(MixedStates, BiseparableMatchesTensorProductOracle) {
    Eigen::Matrix3cd want = oracle::biseparable_by_tensor_products();
    ThreePhotonRho b = rho_biseparable();
    EXPECT_LT((b.m - want).norm(), 1e-14);
    for (double d : b.diagonal()) {
        EXPECT_NEAR(d, 1.0 / 3.0, 1e-14);
    }
    EXPECT_NEAR(b.trace(), 1.0, 1e-14);
    // Frozen from the oracle: every coherence is 1/6.
    for (Complex z : {b.a(), b.b(), b.c()}) {
        EXPECT_NEAR(std::abs(z - 1.0 / 6.0), 0.0, 1e-14);
        EXPECT_LT(std::abs(z), 1.0 / 3.0);
    }
    EXPECT_NO_THROW(b.validate());
}

TEST(MixedStates, WProjectorHasAllEntriesOneThird) {
    ThreePhotonRho w = rho_w();
    EXPECT_LT((w.m - Eigen::Matrix3cd::Constant(1.0 / 3.0)).norm(), 1e-15);
    EXPECT_NEAR(w.min_eigenvalue(), 0.0, 1e-12);
}
