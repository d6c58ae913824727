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

#ifndef WSIM_DENSITY_H
#define WSIM_DENSITY_H

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace wsim {

/// Two-photon density matrix for one channel pair in the {BR, RB} basis,
/// where the first letter is the color in the first channel of the pair.
struct PairRho {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();

    static PairRho from_matrix(const Eigen::Matrix2cd &m);

    std::complex<double> offdiagonal() const { return m(0, 1); }
    double trace() const { return m.trace().real(); }

    /// Embedding into the {BB, BR, RB, RR} basis.
    Eigen::Matrix4cd embed4() const;

    /// Throws InvalidRho unless Hermitian (1e-12), unit trace (1e-9) and
    /// PSD (eigenvalues >= -1e-9).
    void validate() const;
};

/// Three-photon density matrix in the {BBR, BRB, RBB} basis over an ordered
/// channel triple. Coefficients a, b, c are the (0,1), (0,2), (1,2) entries.
struct ThreePhotonRho {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();

    static ThreePhotonRho from_matrix(const Eigen::Matrix3cd &m);
    /// Uniform 1/3 diagonal with the given coherences.
    static ThreePhotonRho from_coefficients(std::complex<double> a, std::complex<double> b, std::complex<double> c);

    std::complex<double> a() const { return m(0, 1); }
    std::complex<double> b() const { return m(0, 2); }
    std::complex<double> c() const { return m(1, 2); }
    std::array<double, 3> diagonal() const;
    double trace() const { return m.trace().real(); }
    double min_eigenvalue() const;

    /// State of the two remaining photons given a Blue photon detected in
    /// position `blue_position` (0, 1 or 2) of the triple, renormalized.
    /// Position 0 yields the pair (1,2), position 1 the pair (0,2), position 2
    /// the pair (0,1).
    PairRho conditional_pair(int blue_position) const;

    /// Throws InvalidRho unless Hermitian (1e-12), unit trace (1e-9) and
    /// PSD (eigenvalues >= -1e-9).
    void validate() const;
};

}  // namespace wsim

#endif
