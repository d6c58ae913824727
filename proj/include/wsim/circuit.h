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

#ifndef WSIM_CIRCUIT_H
#define WSIM_CIRCUIT_H

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wsim/elements.h"

namespace wsim {

/// Constant phase e^{iφ} on both colors of one channel.
struct PhaseShift {
    int channel = 0;
    double phi = 0.0;
};

using Element = std::variant<DirectionalCoupler, AddDropFilter, PhaseShift>;

/// Named channels. A channel's integer id is its position in the list.
class ChannelRegistry {
   public:
    ChannelRegistry() = default;
    explicit ChannelRegistry(std::vector<std::string> names);

    int add(const std::string &name);
    int id(const std::string &name) const;
    std::optional<int> find(const std::string &name) const;
    const std::string &name(int id) const;
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string> &names() const { return names_; }

    /// Red and Blue modes of every channel, in canonical order.
    std::vector<ModeLabel> modes() const;

   private:
    std::vector<std::string> names_;
};

/// Feed-forward optical circuit: elements are applied in list order.
struct CircuitSpec {
    ChannelRegistry channels;
    std::vector<Element> elements;

    /// Throws ValidationError naming the first offending element.
    void validate() const;
};

/// Parameters of the three-coupler W-state device. Each t_i = sqrt(1 - r_i²).
struct CanonicalParams {
    double r1 = 0.5;
    double r2 = 0.57735026918962576;
    double r3 = 0.70710678118654752;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;
    double ad2_extinction = 0.0;
};

/// Channel ids of canonical_w_circuit(). The source feeds channel 0; each
/// coupler taps one photon path off the bus, the last one splitting the bus
/// into channels 3 and 4. Channel 1 is routed by the filter, Red to T1 and
/// Blue to T2.
namespace canonical {
inline constexpr int kSource = 0;
inline constexpr int kTap1 = 1;
inline constexpr int kOut2 = 2;
inline constexpr int kOut3 = 3;
inline constexpr int kOut4 = 4;
inline constexpr int kT1 = 5;
inline constexpr int kT2 = 6;
inline constexpr int kBus1 = 7;
inline constexpr int kBus2 = 8;
inline constexpr int kVac1 = 9;
inline constexpr int kVac2 = 10;
inline constexpr int kVac3 = 11;
}  // namespace canonical

/// Throws ParamOutOfRange unless every r_i and the extinction lie in [0, 1].
CircuitSpec canonical_w_circuit(const CanonicalParams &p);

/// Ordered product of the element transforms over every registered mode.
ModeTransform element_transform(const Element &e, const std::vector<ModeLabel> &all_modes);
ModeTransform build_transform(const CircuitSpec &spec);

PureState propagate(const PureState &input, const CircuitSpec &spec);
PureState propagate(const SourceSpec &src, const CircuitSpec &spec);
/// Element-by-element propagation, without composing the transform first.
PureState propagate_sequential(const PureState &input, const CircuitSpec &spec);

/// Circuit plus an optional source, as stored in a circuit file.
struct CircuitDocument {
    CircuitSpec circuit;
    std::optional<SourceSpec> source;
};

/// Parses the JSON circuit schema (see docs/circuit_schema.md). Throws
/// ValidationError with the offending field path.
CircuitDocument circuit_from_json(const std::string &text);
std::string circuit_to_json(const CircuitDocument &doc);

}  // namespace wsim

#endif
