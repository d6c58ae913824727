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

#include "wsim/fock.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wsim/errors.h"

namespace wsim {

char color_char(Color c) {
    return c == Color::Red ? 'R' : 'B';
}

Color color_from_char(char c) {
    switch (c) {
        case 'R':
        case 'r':
            return Color::Red;
        case 'B':
        case 'b':
            return Color::Blue;
        default:
            throw std::invalid_argument(std::string("Unknown color '") + c + "'.");
    }
}

std::string ModeLabel::str() const {
    return std::string(1, color_char(color)) + "," + std::to_string(channel);
}

FockBasisState::FockBasisState(std::vector<std::pair<ModeLabel, int>> occupations) {
    std::sort(occupations.begin(), occupations.end());
    for (const auto &[mode, n] : occupations) {
        if (n < 0) {
            throw std::invalid_argument("Negative occupation for mode " + mode.str());
        }
        if (n == 0) {
            continue;
        }
        if (!occupations_.empty() && occupations_.back().first == mode) {
            occupations_.back().second += n;
        } else {
            occupations_.emplace_back(mode, n);
        }
    }
}

int FockBasisState::count(ModeLabel mode) const {
    for (const auto &e : occupations_) {
        if (e.first == mode) {
            return e.second;
        }
    }
    return 0;
}

bool FockBasisState::operator==(const FockBasisState &other) const {
    if (occupations_.size() != other.occupations_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < occupations_.size(); ++k) {
        const auto &x = occupations_[k];
        const auto &y = other.occupations_[k];
        if (x.first.key() != y.first.key() || x.second != y.second) {
            return false;
        }
    }
    return true;
}

bool FockBasisState::operator<(const FockBasisState &other) const {
    std::size_t n = std::min(occupations_.size(), other.occupations_.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto &x = occupations_[k];
        const auto &y = other.occupations_[k];
        if (x.first.key() != y.first.key()) {
            return x.first.key() < y.first.key();
        }
        if (x.second != y.second) {
            return x.second < y.second;
        }
    }
    return occupations_.size() < other.occupations_.size();
}

int FockBasisState::total_photons() const {
    int total = 0;
    for (const auto &e : occupations_) {
        total += e.second;
    }
    return total;
}

int FockBasisState::channel_count(int channel) const {
    return count({channel, Color::Red}) + count({channel, Color::Blue});
}

FockBasisState FockBasisState::with_added(ModeLabel mode, int n) const {
    FockBasisState result = *this;
    auto &occ = result.occupations_;
    auto it = std::lower_bound(occ.begin(), occ.end(), mode, [](const auto &e, ModeLabel m) { return e.first < m; });
    if (it != occ.end() && it->first == mode) {
        it->second += n;
        if (it->second == 0) {
            occ.erase(it);
        }
    } else if (n != 0) {
        occ.insert(it, {mode, n});
    }
    return result;
}

FockBasisState FockBasisState::without_channel(int channel) const {
    FockBasisState result;
    for (const auto &e : occupations_) {
        if (e.first.channel != channel) {
            result.occupations_.push_back(e);
        }
    }
    return result;
}

FockBasisState FockBasisState::restricted_to(const std::set<int> &channels) const {
    FockBasisState result;
    for (const auto &e : occupations_) {
        if (channels.contains(e.first.channel)) {
            result.occupations_.push_back(e);
        }
    }
    return result;
}

double FockBasisState::factorial_product() const {
    double p = 1.0;
    for (const auto &e : occupations_) {
        for (int k = 2; k <= e.second; ++k) {
            p *= k;
        }
    }
    return p;
}

std::string FockBasisState::str() const {
    if (occupations_.empty()) {
        return "|vac>";
    }
    std::ostringstream out;
    out << '|';
    bool first = true;
    for (const auto &[mode, n] : occupations_) {
        if (!first) {
            out << ' ';
        }
        first = false;
        out << n << '_' << mode.str();
    }
    out << '>';
    return out.str();
}

PureState::PureState(Terms terms, Complex weight) : terms_(std::move(terms)), weight_(weight) {
}

PureState PureState::vacuum() {
    return basis(FockBasisState::vacuum());
}

PureState PureState::basis(FockBasisState b, Complex amplitude) {
    Terms t;
    t.emplace(std::move(b), amplitude);
    return PureState(std::move(t));
}

PureState PureState::with_weight(Complex w) const {
    PureState r = *this;
    r.weight_ = w;
    return r;
}

Complex PureState::amplitude(const FockBasisState &b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Complex{0.0} : it->second;
}

double PureState::norm_squared() const {
    double n = 0.0;
    for (const auto &e : terms_) {
        n += std::norm(e.second);
    }
    return n;
}

PureState PureState::normalized() const {
    double n = norm_squared();
    if (n == 0.0) {
        throw EmptyState("Cannot normalize a state with zero norm.");
    }
    PureState r = *this * (1.0 / std::sqrt(n));
    return r;
}

void PureState::add(const FockBasisState &b, Complex amplitude) {
    auto [it, inserted] = terms_.try_emplace(b, amplitude);
    if (!inserted) {
        it->second += amplitude;
    }
}

void PureState::prune(double epsilon) {
    std::erase_if(terms_, [epsilon](const auto &e) { return std::abs(e.second) < epsilon; });
}

PureState PureState::photon_sector(int n) const {
    Terms t;
    for (const auto &e : terms_) {
        if (e.first.total_photons() == n) {
            t.insert(e);
        }
    }
    return PureState(std::move(t), weight_);
}

std::set<ModeLabel> PureState::occupied_modes() const {
    std::set<ModeLabel> modes;
    for (const auto &e : terms_) {
        for (const auto &o : e.first.occupations()) {
            modes.insert(o.first);
        }
    }
    return modes;
}

PureState PureState::operator+(const PureState &other) const {
    PureState r = *this;
    for (const auto &e : other.terms_) {
        r.add(e.first, e.second);
    }
    return r;
}

PureState PureState::operator*(Complex scale) const {
    PureState r = *this;
    for (auto &e : r.terms_) {
        e.second *= scale;
    }
    return r;
}

std::string PureState::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &[b, amp] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << '(' << amp.real() << (amp.imag() < 0 ? "" : "+") << amp.imag() << "i)" << b.str();
    }
    if (first) {
        out << '0';
    }
    return out.str();
}

PureState apply_creation(const PureState &state, ModeLabel mode) {
    PureState::Terms t;
    for (const auto &[b, amp] : state.terms()) {
        double n = b.count(mode);
        t.emplace(b.with_added(mode), amp * std::sqrt(n + 1.0));
    }
    return PureState(std::move(t), state.weight());
}

Complex inner_product(const PureState &s1, const PureState &s2) {
    const auto &small = s1.size() <= s2.size() ? s1 : s2;
    const auto &large = s1.size() <= s2.size() ? s2 : s1;
    Complex acc = 0.0;
    for (const auto &[b, amp] : small.terms()) {
        Complex other = large.amplitude(b);
        if (&small == &s1) {
            acc += std::conj(amp) * other;
        } else {
            acc += std::conj(other) * amp;
        }
    }
    return acc;
}

ModeTransform::ModeTransform(std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix, bool lossless)
    : modes_(std::move(modes)), matrix_(std::move(matrix)), lossless_(lossless) {
    if (matrix_.rows() != (Eigen::Index)modes_.size() || matrix_.cols() != (Eigen::Index)modes_.size()) {
        throw DimensionMismatch(
            "Mode transform matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
            " but lists " + std::to_string(modes_.size()) + " modes.");
    }
    build_index();
    if (lossless_ && !is_unitary(1e-12)) {
        throw NotUnitary("Mode transform flagged lossless is not unitary.");
    }
}

ModeTransform::ModeTransform(Trusted, std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix, bool lossless)
    : modes_(std::move(modes)), matrix_(std::move(matrix)), lossless_(lossless) {
    build_index();
}

void ModeTransform::build_index() {
    index_.clear();
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        index_.emplace_back(modes_[k], k);
    }
    std::sort(index_.begin(), index_.end());
    for (std::size_t k = 1; k < index_.size(); ++k) {
        if (index_[k].first == index_[k - 1].first) {
            throw DimensionMismatch("Mode " + index_[k].first.str() + " listed twice in a mode transform.");
        }
    }
}

ModeTransform ModeTransform::identity(std::vector<ModeLabel> modes) {
    auto n = (Eigen::Index)modes.size();
    return ModeTransform(Trusted{}, std::move(modes), Eigen::MatrixXcd::Identity(n, n), true);
}

std::optional<std::size_t> ModeTransform::index_of(ModeLabel mode) const {
    auto it = std::lower_bound(
        index_.begin(), index_.end(), mode, [](const auto &e, ModeLabel m) { return e.first < m; });
    if (it == index_.end() || it->first != mode) {
        return std::nullopt;
    }
    return it->second;
}

Complex ModeTransform::coefficient(ModeLabel in, ModeLabel out) const {
    auto i = index_of(in);
    auto j = index_of(out);
    if (!i || !j) {
        throw UnknownMode("Mode not covered by transform.");
    }
    return matrix_((Eigen::Index)*i, (Eigen::Index)*j);
}

bool ModeTransform::is_unitary(double tol) const {
    auto n = matrix_.rows();
    Eigen::MatrixXcd g = matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(n, n);
    return n == 0 || g.cwiseAbs().maxCoeff() <= tol;
}

ModeTransform ModeTransform::embed(const std::vector<ModeLabel> &all_modes) const {
    ModeTransform big = identity(all_modes);
    std::vector<Eigen::Index> map(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        auto idx = big.index_of(modes_[k]);
        if (!idx) {
            throw UnknownMode("Cannot embed transform: mode " + modes_[k].str() + " is missing from the target set.");
        }
        map[k] = (Eigen::Index)*idx;
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        big.matrix_(map[i], map[i]) = 0.0;
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        for (std::size_t j = 0; j < modes_.size(); ++j) {
            big.matrix_(map[i], map[j]) = matrix_((Eigen::Index)i, (Eigen::Index)j);
        }
    }
    big.lossless_ = lossless_;
    return big;
}

ModeTransform ModeTransform::compose(std::vector<ModeLabel> modes, std::span<const ModeTransform> locals) {
    ModeTransform r = identity(std::move(modes));
    Eigen::MatrixXcd block;
    for (const auto &local : locals) {
        std::vector<Eigen::Index> cols(local.modes_.size());
        for (std::size_t k = 0; k < local.modes_.size(); ++k) {
            auto idx = r.index_of(local.modes_[k]);
            if (!idx) {
                throw UnknownMode("Cannot compose: mode " + local.modes_[k].str() + " is missing from the mode set.");
            }
            cols[k] = (Eigen::Index)*idx;
        }
        // Only the columns of the local modes change.
        auto k = (Eigen::Index)cols.size();
        block.resize(r.matrix_.rows(), k);
        for (Eigen::Index j = 0; j < k; ++j) {
            block.col(j) = r.matrix_.col(cols[(std::size_t)j]);
        }
        Eigen::MatrixXcd updated = block.lazyProduct(local.matrix_);
        for (Eigen::Index j = 0; j < k; ++j) {
            r.matrix_.col(cols[(std::size_t)j]) = updated.col(j);
        }
        r.lossless_ = r.lossless_ && local.lossless_;
    }
    return r;
}

ModeTransform ModeTransform::then(const ModeTransform &next) const {
    if (modes_ != next.modes_) {
        throw DimensionMismatch("Cannot compose transforms over different mode lists.");
    }
    ModeTransform r = *this;
    r.matrix_ = matrix_ * next.matrix_;
    r.lossless_ = lossless_ && next.lossless_;
    return r;
}

namespace {

using FlatTerms = std::vector<std::pair<FockBasisState, Complex>>;
using Row = std::vector<std::pair<ModeLabel, Complex>>;

// Multiplies every term by the linear form Σ_j row[j] a†_j, merging equal
// basis states.
FlatTerms apply_linear_creation(const FlatTerms &poly, const Row &row) {
    FlatTerms out;
    out.reserve(poly.size() * row.size());
    for (const auto &[b, amp] : poly) {
        for (const auto &[mode, coef] : row) {
            double n = b.count(mode);
            out.emplace_back(b.with_added(mode), amp * coef * std::sqrt(n + 1.0));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size(); ++r) {
        if (w > 0 && out[w - 1].first == out[r].first) {
            out[w - 1].second += out[r].second;
        } else {
            if (w != r) {
                out[w] = std::move(out[r]);
            }
            ++w;
        }
    }
    out.resize(w);
    return out;
}

}  // namespace

PureState apply_mode_transform(const PureState &state, const ModeTransform &xf) {
    const auto &m = xf.matrix();
    const auto &modes = xf.modes();
    std::vector<std::pair<ModeLabel, Row>> rows;
    auto row_of = [&](ModeLabel mode) -> const Row & {
        for (const auto &r : rows) {
            if (r.first == mode) {
                return r.second;
            }
        }
        auto idx = xf.index_of(mode);
        if (!idx) {
            throw UnknownMode("Occupied mode " + mode.str() + " is not covered by the mode transform.");
        }
        Row row;
        for (std::size_t j = 0; j < modes.size(); ++j) {
            Complex c = m((Eigen::Index)*idx, (Eigen::Index)j);
            if (c != Complex{0.0}) {
                row.emplace_back(modes[j], c);
            }
        }
        rows.emplace_back(mode, std::move(row));
        return rows.back().second;
    };

    PureState out;
    for (const auto &[b, amp] : state.terms()) {
        FlatTerms poly{{FockBasisState::vacuum(), Complex{1.0}}};
        for (const auto &[mode, n] : b.occupations()) {
            const Row &row = row_of(mode);
            for (int k = 0; k < n; ++k) {
                poly = apply_linear_creation(poly, row);
            }
        }
        // |n> = Π (a†)^n / sqrt(n!) |vac>
        Complex scale = amp / std::sqrt(b.factorial_product());
        for (const auto &[ob, oamp] : poly) {
            out.add(ob, oamp * scale);
        }
    }
    out.prune();
    return out.with_weight(state.weight());
}

DetectionPattern DetectionPattern::vacuum() {
    DetectionPattern p;
    p.rest_empty = true;
    return p;
}

DetectionPattern &DetectionPattern::require(int channel, int count, std::optional<Color> color) {
    if (count < 0) {
        throw std::invalid_argument("Detection counts must be non-negative.");
    }
    constraints[channel] = ChannelConstraint{count, color};
    return *this;
}

bool DetectionPattern::matches(const FockBasisState &b) const {
    for (const auto &[channel, c] : constraints) {
        int total = b.channel_count(channel);
        if (total != c.count) {
            return false;
        }
        if (c.color && b.count({channel, *c.color}) != c.count) {
            return false;
        }
    }
    if (rest_empty) {
        for (const auto &o : b.occupations()) {
            if (!constraints.contains(o.first.channel)) {
                return false;
            }
        }
    }
    return true;
}

Projection project(const PureState &state, const DetectionPattern &pattern) {
    double total = state.norm_squared();
    if (total == 0.0) {
        throw EmptyState("Cannot project a state with zero norm.");
    }
    PureState::Terms kept;
    double part = 0.0;
    for (const auto &e : state.terms()) {
        if (pattern.matches(e.first)) {
            kept.insert(e);
            part += std::norm(e.second);
        }
    }
    return {PureState(std::move(kept), state.weight()), part / total};
}

namespace {

// Index into {BB, BR, RB, RR} for a (first, second) color pair.
int pair_index(Color first, Color second) {
    return (first == Color::Red ? 2 : 0) + (second == Color::Red ? 1 : 0);
}

Color single_color(const FockBasisState &b, int channel) {
    return b.count({channel, Color::Blue}) == 1 ? Color::Blue : Color::Red;
}

template <int N>
Eigen::Matrix<Complex, N, N> accumulate_groups(const std::map<FockBasisState, Eigen::Matrix<Complex, N, 1>> &groups) {
    Eigen::Matrix<Complex, N, N> rho = Eigen::Matrix<Complex, N, N>::Zero();
    for (const auto &g : groups) {
        rho += g.second * g.second.adjoint();
    }
    double tr = rho.trace().real();
    if (tr <= 0.0) {
        throw EmptyState("No population matches the requested reduction.");
    }
    return rho / tr;
}

}  // namespace

Eigen::Matrix4cd reduce_pair_full(const PureState &state, std::pair<int, int> pair, int blue_channel) {
    auto [ci, cj] = pair;
    if (ci == cj || blue_channel == ci || blue_channel == cj) {
        throw DimensionMismatch("Pair channels and conditioning channel must be distinct.");
    }
    std::map<FockBasisState, Eigen::Vector4cd> groups;
    for (const auto &[b, amp] : state.terms()) {
        if (b.channel_count(blue_channel) != 1 || b.count({blue_channel, Color::Blue}) != 1) {
            continue;
        }
        if (b.channel_count(ci) != 1 || b.channel_count(cj) != 1) {
            throw DimensionMismatch(
                "Reduction to channels (" + std::to_string(ci) + "," + std::to_string(cj) +
                ") needs one photon per channel; found " + b.str());
        }
        FockBasisState rest = b.without_channel(ci).without_channel(cj);
        auto [it, inserted] = groups.try_emplace(rest, Eigen::Vector4cd::Zero());
        it->second(pair_index(single_color(b, ci), single_color(b, cj))) += amp;
    }
    return accumulate_groups<4>(groups);
}

PairRho reduce_to_pair(const PureState &state, std::pair<int, int> pair, int blue_channel) {
    Eigen::Matrix4cd full = reduce_pair_full(state, pair, blue_channel);
    if (std::abs(full(0, 0)) > 1e-12 || std::abs(full(3, 3)) > 1e-12) {
        throw DimensionMismatch("Pair state has BB or RR population; it does not fit the {BR, RB} block.");
    }
    return PairRho::from_matrix(full.block<2, 2>(1, 1));
}

ThreePhotonRho reduce_to_triple(const PureState &state, std::array<int, 3> channels) {
    std::map<FockBasisState, Eigen::Vector3cd> groups;
    for (const auto &[b, amp] : state.terms()) {
        std::array<Color, 3> colors{};
        int blues = 0;
        for (int k = 0; k < 3; ++k) {
            if (b.channel_count(channels[k]) != 1) {
                throw DimensionMismatch("Three-photon reduction needs one photon per channel; found " + b.str());
            }
            colors[k] = single_color(b, channels[k]);
            blues += colors[k] == Color::Blue;
        }
        if (blues != 2) {
            throw DimensionMismatch("Three-photon reduction needs two Blue and one Red photon; found " + b.str());
        }
        int red_position = 0;
        while (colors[red_position] != Color::Red) {
            ++red_position;
        }
        // BBR, BRB, RBB <=> red in position 2, 1, 0.
        int index = 2 - red_position;
        FockBasisState rest = b.without_channel(channels[0]).without_channel(channels[1]).without_channel(channels[2]);
        auto [it, inserted] = groups.try_emplace(rest, Eigen::Vector3cd::Zero());
        it->second(index) += amp;
    }
    return ThreePhotonRho::from_matrix(accumulate_groups<3>(groups));
}

PureState swap_colors(const PureState &state) {
    PureState::Terms t;
    for (const auto &[b, amp] : state.terms()) {
        std::vector<std::pair<ModeLabel, int>> occ;
        for (const auto &[mode, n] : b.occupations()) {
            occ.emplace_back(ModeLabel{mode.channel, mode.color == Color::Red ? Color::Blue : Color::Red}, n);
        }
        t.emplace(FockBasisState(std::move(occ)), amp);
    }
    return PureState(std::move(t), state.weight());
}

}  // namespace wsim
