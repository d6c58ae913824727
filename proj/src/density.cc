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

#include "wsim/density.h"

#include <cmath>
#include <string>

#include "wsim/errors.h"

namespace wsim {

namespace {

template <typename M>
void validate_density(const M &m, const char *what) {
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) {
        throw InvalidRho(std::string(what) + " is not Hermitian (deviation " + std::to_string(herm) + ").");
    }
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) {
        throw InvalidRho(std::string(what) + " trace is " + std::to_string(tr) + ", expected 1.");
    }
    Eigen::SelfAdjointEigenSolver<M> es(m, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    if (lo < -1e-9) {
        throw InvalidRho(std::string(what) + " has negative eigenvalue " + std::to_string(lo) + ".");
    }
}

}  // namespace

PairRho PairRho::from_matrix(const Eigen::Matrix2cd &m) {
    PairRho r;
    r.m = m;
    return r;
}

Eigen::Matrix4cd PairRho::embed4() const {
    Eigen::Matrix4cd big = Eigen::Matrix4cd::Zero();
    big.block<2, 2>(1, 1) = m;
    return big;
}

void PairRho::validate() const {
    validate_density(m, "Pair density matrix");
}

ThreePhotonRho ThreePhotonRho::from_matrix(const Eigen::Matrix3cd &m) {
    ThreePhotonRho r;
    r.m = m;
    return r;
}

ThreePhotonRho ThreePhotonRho::from_coefficients(std::complex<double> a, std::complex<double> b, std::complex<double> c) {
    ThreePhotonRho r;
    r.m.diagonal().setConstant(1.0 / 3.0);
    r.m(0, 1) = a;
    r.m(1, 0) = std::conj(a);
    r.m(0, 2) = b;
    r.m(2, 0) = std::conj(b);
    r.m(1, 2) = c;
    r.m(2, 1) = std::conj(c);
    return r;
}

std::array<double, 3> ThreePhotonRho::diagonal() const {
    return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
}

double ThreePhotonRho::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

PairRho ThreePhotonRho::conditional_pair(int blue_position) const {
    // Basis states with a Blue photon at the conditioning position, listed as
    // (BR, RB) of the remaining pair.
    int i = 0;
    int j = 0;
    switch (blue_position) {
        case 0:
            i = 0, j = 1;
            break;
        case 1:
            i = 0, j = 2;
            break;
        case 2:
            i = 1, j = 2;
            break;
        default:
            throw std::invalid_argument("Conditioning position must be 0, 1 or 2.");
    }
    Eigen::Matrix2cd p;
    p << m(i, i), m(i, j), m(j, i), m(j, j);
    double tr = p.trace().real();
    if (tr <= 0.0) {
        throw InvalidRho("No population with a Blue photon at the conditioning position.");
    }
    return PairRho::from_matrix(p / tr);
}

void ThreePhotonRho::validate() const {
    validate_density(m, "Three-photon density matrix");
}

}  // namespace wsim
