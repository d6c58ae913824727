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

#include "wsim/circuit.h"

#include <cmath>

#include "wsim/errors.h"

namespace wsim {

ChannelRegistry::ChannelRegistry(std::vector<std::string> names) {
    for (const auto &n : names) {
        add(n);
    }
}

int ChannelRegistry::add(const std::string &name) {
    if (find(name)) {
        throw ValidationError("Channel '" + name + "' registered twice.");
    }
    names_.push_back(name);
    return (int)names_.size() - 1;
}

std::optional<int> ChannelRegistry::find(const std::string &name) const {
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (names_[k] == name) {
            return (int)k;
        }
    }
    return std::nullopt;
}

int ChannelRegistry::id(const std::string &name) const {
    auto k = find(name);
    if (!k) {
        throw ValidationError("Unknown channel '" + name + "'.");
    }
    return *k;
}

const std::string &ChannelRegistry::name(int id) const {
    if (id < 0 || id >= (int)names_.size()) {
        throw ValidationError("Channel id " + std::to_string(id) + " is not registered.");
    }
    return names_[(std::size_t)id];
}

std::vector<ModeLabel> ChannelRegistry::modes() const {
    std::vector<ModeLabel> modes;
    for (int c = 0; c < (int)names_.size(); ++c) {
        modes.push_back({c, Color::Red});
        modes.push_back({c, Color::Blue});
    }
    return modes;
}

namespace {

std::vector<int> element_channels(const Element &e) {
    return std::visit(
        [](const auto &el) -> std::vector<int> {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, DirectionalCoupler>) {
                return {el.in_a, el.in_b, el.out_a(), el.out_b()};
            } else if constexpr (std::is_same_v<T, AddDropFilter>) {
                return {el.input, el.through, el.drop};
            } else {
                return {el.channel};
            }
        },
        e);
}

ModeTransform local_transform(const Element &e) {
    return std::visit(
        [](const auto &el) -> ModeTransform {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, DirectionalCoupler>) {
                return coupler_transform(el);
            } else if constexpr (std::is_same_v<T, AddDropFilter>) {
                return adddrop_transform(el);
            } else {
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2) * std::polar(1.0, el.phi);
                return ModeTransform({{el.channel, Color::Red}, {el.channel, Color::Blue}}, m);
            }
        },
        e);
}

}  // namespace

namespace {

// Local transforms of every element, validated.
std::vector<ModeTransform> local_transforms(const CircuitSpec &spec) {
    std::vector<ModeTransform> out;
    for (std::size_t k = 0; k < spec.elements.size(); ++k) {
        for (int c : element_channels(spec.elements[k])) {
            if (c < 0 || c >= (int)spec.channels.size()) {
                throw ValidationError(
                    "Element " + std::to_string(k) + " references unregistered channel id " + std::to_string(c) + ".");
            }
        }
        try {
            out.push_back(local_transform(spec.elements[k]));
        } catch (const Error &ex) {
            throw ValidationError("Element " + std::to_string(k) + ": " + ex.what());
        }
    }
    return out;
}

}  // namespace

void CircuitSpec::validate() const {
    local_transforms(*this);
}

CircuitSpec canonical_w_circuit(const CanonicalParams &p) {
    for (double r : {p.r1, p.r2, p.r3}) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw ParamOutOfRange("Coupler reflection " + std::to_string(r) + " is outside [0, 1].");
        }
    }
    if (!(p.ad2_extinction >= 0.0 && p.ad2_extinction <= 1.0)) {
        throw ParamOutOfRange("Filter extinction " + std::to_string(p.ad2_extinction) + " is outside [0, 1].");
    }
    using namespace canonical;
    CircuitSpec spec;
    spec.channels = ChannelRegistry({"0", "1", "2", "3", "4", "T1", "T2", "1'", "2'", "v1", "v2", "v3"});

    auto tap = [](int bus_in, int vac, int bus_out, int tapped, double r, double phi) {
        DirectionalCoupler dc = DirectionalCoupler::from_reflection(bus_in, vac, r, phi);
        dc.out = std::pair{bus_out, tapped};
        return dc;
    };
    spec.elements.emplace_back(tap(kSource, kVac1, kBus1, kTap1, p.r1, p.phi1));
    spec.elements.emplace_back(tap(kBus1, kVac2, kBus2, kOut2, p.r2, p.phi2));
    spec.elements.emplace_back(tap(kBus2, kVac3, kOut4, kOut3, p.r3, p.phi3));
    spec.elements.emplace_back(AddDropFilter{kTap1, kT1, kT2, Color::Blue, p.ad2_extinction});
    return spec;
}

ModeTransform element_transform(const Element &e, const std::vector<ModeLabel> &all_modes) {
    return local_transform(e).embed(all_modes);
}

ModeTransform build_transform(const CircuitSpec &spec) {
    return ModeTransform::compose(spec.channels.modes(), local_transforms(spec));
}

PureState propagate(const PureState &input, const CircuitSpec &spec) {
    return apply_mode_transform(input, build_transform(spec));
}

PureState propagate(const SourceSpec &src, const CircuitSpec &spec) {
    if (src.channel < 0 || src.channel >= (int)spec.channels.size()) {
        throw ValidationError("Source channel id " + std::to_string(src.channel) + " is not registered.");
    }
    return propagate(source_state(src), spec);
}

PureState propagate_sequential(const PureState &input, const CircuitSpec &spec) {
    spec.validate();
    auto modes = spec.channels.modes();
    PureState s = input;
    for (const auto &e : spec.elements) {
        s = apply_mode_transform(s, element_transform(e, modes));
    }
    return s;
}

}  // namespace wsim
