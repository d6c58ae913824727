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

#ifndef WSIM_FOCK_H
#define WSIM_FOCK_H

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/container/small_vector.hpp>

#include "wsim/density.h"

namespace wsim {

using Complex = std::complex<double>;

/// Amplitudes with magnitude below this are dropped after each transform.
inline constexpr double kPruneEpsilon = 1e-14;

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

char color_char(Color c);
Color color_from_char(char c);

/// One optical mode: a waveguide channel at one of the two resonance colors.
/// Ordered channel-major, then Red before Blue.
struct ModeLabel {
    int channel = 0;
    Color color = Color::Red;

    auto operator<=>(const ModeLabel &) const = default;
    /// Dense key with the same ordering as operator<=>.
    constexpr long key() const { return 2L * channel + (long)color; }
    std::string str() const;
};

/// Occupation-number basis state. Entries are kept sorted by ModeLabel and
/// never hold a zero count, so structural equality is state equality.
class FockBasisState {
   public:
    using Occupations = boost::container::small_vector<std::pair<ModeLabel, int>, 6>;

    FockBasisState() = default;
    explicit FockBasisState(std::vector<std::pair<ModeLabel, int>> occupations);

    static FockBasisState vacuum() { return {}; }

    int count(ModeLabel mode) const;
    int total_photons() const;
    /// Photons in `channel`, summed over colors.
    int channel_count(int channel) const;
    bool is_vacuum() const { return occupations_.empty(); }

    FockBasisState with_added(ModeLabel mode, int n = 1) const;
    /// Drops every mode in `channel`.
    FockBasisState without_channel(int channel) const;
    /// Keeps only the modes whose channel is in `channels`.
    FockBasisState restricted_to(const std::set<int> &channels) const;

    /// Product of n! over all occupied modes.
    double factorial_product() const;

    const Occupations &occupations() const { return occupations_; }

    bool operator==(const FockBasisState &other) const;
    /// Lexicographic over (mode, count) entries.
    bool operator<(const FockBasisState &other) const;
    std::string str() const;

   private:
    Occupations occupations_;
};

/// Sparse superposition of Fock basis states.
///
/// The physical vector is `weight() * Σ amplitude |basis⟩`. The weight is a
/// bookkeeping scalar (pump amplitude powers and similar) that never enters
/// normalized quantities such as fidelities or conditional probabilities.
class PureState {
   public:
    using Terms = std::map<FockBasisState, Complex>;

    PureState() = default;
    explicit PureState(Terms terms, Complex weight = 1.0);

    static PureState vacuum();
    static PureState basis(FockBasisState b, Complex amplitude = 1.0);

    const Terms &terms() const { return terms_; }
    Complex weight() const { return weight_; }
    PureState with_weight(Complex w) const;

    Complex amplitude(const FockBasisState &b) const;
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Σ|amplitude|², excluding the weight.
    double norm_squared() const;
    PureState normalized() const;

    /// Adds `amplitude` to the coefficient of `b`.
    void add(const FockBasisState &b, Complex amplitude);
    void prune(double epsilon = kPruneEpsilon);

    /// Terms whose total photon number equals n.
    PureState photon_sector(int n) const;
    /// Every mode index touched by a term.
    std::set<ModeLabel> occupied_modes() const;

    PureState operator+(const PureState &other) const;
    PureState operator*(Complex scale) const;

    std::string str() const;

   private:
    Terms terms_;
    Complex weight_ = 1.0;
};

/// One creation operator a†_mode applied to every term.
PureState apply_creation(const PureState &state, ModeLabel mode);

/// ⟨s1|s2⟩ over the terms; weights are not included.
Complex inner_product(const PureState &s1, const PureState &s2);

/// Linear map on creation operators.
///
/// Row convention: entry (i, j) is the coefficient of output operator j in the
/// expansion of input operator i, that is a†_in[i] = Σ_j M(i, j) a†_out[j].
/// Under this convention propagating through A and then B is the product A·B.
class ModeTransform {
   public:
    ModeTransform() = default;
    ModeTransform(std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix, bool lossless = true);

    static ModeTransform identity(std::vector<ModeLabel> modes);

    const std::vector<ModeLabel> &modes() const { return modes_; }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }
    bool lossless() const { return lossless_; }
    std::size_t dimension() const { return modes_.size(); }

    std::optional<std::size_t> index_of(ModeLabel mode) const;
    Complex coefficient(ModeLabel in, ModeLabel out) const;

    bool is_unitary(double tol = 1e-12) const;

    /// Embeds this transform into a larger mode list, acting as identity on
    /// the extra modes. Every mode of this transform must be present.
    ModeTransform embed(const std::vector<ModeLabel> &all_modes) const;

    /// Propagation through `*this` followed by `next`. Mode lists must match.
    ModeTransform then(const ModeTransform &next) const;
    /// Identity over `modes` followed by each local transform in turn. Each
    /// local transform acts on a subset of `modes`.
    static ModeTransform compose(std::vector<ModeLabel> modes, std::span<const ModeTransform> locals);

   private:
    struct Trusted {};
    ModeTransform(Trusted, std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix, bool lossless);

    std::vector<ModeLabel> modes_;
    Eigen::MatrixXcd matrix_;
    bool lossless_ = true;
    // Sorted by mode for binary search.
    std::vector<std::pair<ModeLabel, std::size_t>> index_;

    void build_index();
};

/// Substitutes every input creation operator by its row expansion and
/// re-expands. Throws UnknownMode when an occupied mode is not covered.
PureState apply_mode_transform(const PureState &state, const ModeTransform &xf);

/// Requirement on one channel of a detection event.
struct ChannelConstraint {
    int count = 0;
    /// When set, all `count` photons must have this color.
    std::optional<Color> color;
};

/// A set of per-channel photon-count requirements. With `rest_empty`, any
/// channel without a constraint must hold no photons.
struct DetectionPattern {
    std::map<int, ChannelConstraint> constraints;
    bool rest_empty = false;

    static DetectionPattern vacuum();
    DetectionPattern &require(int channel, int count, std::optional<Color> color = std::nullopt);

    bool matches(const FockBasisState &b) const;
};

struct Projection {
    PureState component;
    double probability = 0.0;
};

/// Component of `state` matching `pattern` (unnormalized) and its
/// probability. Throws EmptyState when the state has zero norm.
Projection project(const PureState &state, const DetectionPattern &pattern);

/// Density matrix of the photon pair in `pair` given one Blue photon detected
/// in `blue_channel`, in the {BB, BR, RB, RR} basis (first letter is the
/// color in pair.first). Remaining channels are traced out.
Eigen::Matrix4cd reduce_pair_full(const PureState &state, std::pair<int, int> pair, int blue_channel);

/// Same as reduce_pair_full, restricted to the {BR, RB} block. Throws
/// DimensionMismatch when the BB or RR populations are not negligible or when
/// terms do not carry exactly one photon per kept channel.
PairRho reduce_to_pair(const PureState &state, std::pair<int, int> pair, int blue_channel);

/// Three-photon density matrix over `channels` in the {BBR, BRB, RBB} basis,
/// tracing out every other channel. Throws DimensionMismatch when the content
/// is not one photon per channel with two Blue and one Red.
ThreePhotonRho reduce_to_triple(const PureState &state, std::array<int, 3> channels);

/// Exchanges Red and Blue on every mode.
PureState swap_colors(const PureState &state);

}  // namespace wsim

#endif
