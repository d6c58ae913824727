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

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "wsim/circuit.h"
#include "wsim/errors.h"

namespace wsim {

using nlohmann::json;

namespace {

const json &field(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ValidationError("Missing field '" + path + key + "'.");
    }
    return obj.at(key);
}

double number(const json &obj, const std::string &key, const std::string &path) {
    const json &v = field(obj, key, path);
    if (!v.is_number()) {
        throw ValidationError("Field '" + path + key + "' must be a number.");
    }
    return v.get<double>();
}

// Channels are referenced by name; bare integers are read as their decimal name.
int channel_ref(const ChannelRegistry &reg, const json &v, const std::string &where) {
    std::string name;
    if (v.is_string()) {
        name = v.get<std::string>();
    } else if (v.is_number_integer()) {
        name = std::to_string(v.get<long long>());
    } else {
        throw ValidationError("Field '" + where + "' must be a channel name.");
    }
    auto id = reg.find(name);
    if (!id) {
        throw ValidationError("Field '" + where + "' references unknown channel '" + name + "'.");
    }
    return *id;
}

std::pair<int, int> channel_pair(const ChannelRegistry &reg, const json &obj, const std::string &key,
                                 const std::string &path) {
    const json &v = field(obj, key, path);
    if (!v.is_array() || v.size() != 2) {
        throw ValidationError("Field '" + path + key + "' must list two channels.");
    }
    return {channel_ref(reg, v[0], path + key + "[0]"), channel_ref(reg, v[1], path + key + "[1]")};
}

Color color_field(const json &v, const std::string &where) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "Red" || s == "R" || s == "red") {
            return Color::Red;
        }
        if (s == "Blue" || s == "B" || s == "blue") {
            return Color::Blue;
        }
    }
    throw ValidationError("Field '" + where + "' must be \"Red\" or \"Blue\".");
}

Complex complex_field(const json &v, const std::string &where) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_object() && v.contains("re") && v.contains("im") && v["re"].is_number() && v["im"].is_number()) {
        return {v["re"].get<double>(), v["im"].get<double>()};
    }
    throw ValidationError("Field '" + where + "' must be a number or {\"re\", \"im\"}.");
}

json complex_json(Complex c) {
    if (c.imag() == 0.0) {
        return c.real();
    }
    return json{{"re", c.real()}, {"im", c.imag()}};
}

Element parse_element(const ChannelRegistry &reg, const json &e, const std::string &path) {
    const json &type = field(e, "type", path);
    if (!type.is_string()) {
        throw ValidationError("Field '" + path + "type' must be a string.");
    }
    auto t = type.get<std::string>();
    if (t == "coupler") {
        auto [a, b] = channel_pair(reg, e, "channels", path);
        DirectionalCoupler dc;
        dc.in_a = a;
        dc.in_b = b;
        dc.r = number(e, "r", path);
        dc.t = e.contains("t") ? number(e, "t", path) : std::sqrt(std::max(0.0, 1.0 - dc.r * dc.r));
        dc.phi = e.contains("phi") ? number(e, "phi", path) : 0.0;
        if (e.contains("outputs")) {
            dc.out = channel_pair(reg, e, "outputs", path);
        }
        return dc;
    }
    if (t == "adddrop") {
        AddDropFilter ad;
        ad.input = channel_ref(reg, field(e, "input", path), path + "input");
        ad.through = channel_ref(reg, field(e, "through", path), path + "through");
        ad.drop = channel_ref(reg, field(e, "drop", path), path + "drop");
        ad.resonant_color = e.contains("resonant") ? color_field(e["resonant"], path + "resonant") : Color::Blue;
        ad.extinction = e.contains("extinction") ? number(e, "extinction", path) : 0.0;
        return ad;
    }
    if (t == "phase") {
        PhaseShift ps;
        ps.channel = channel_ref(reg, field(e, "channel", path), path + "channel");
        ps.phi = number(e, "phi", path);
        return ps;
    }
    throw ValidationError("Field '" + path + "type' has unknown element type '" + t + "'.");
}

}  // namespace

CircuitDocument circuit_from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &ex) {
        throw ValidationError(std::string("Circuit file is not valid JSON: ") + ex.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("Circuit document must be a JSON object.");
    }

    CircuitDocument out;
    const json &channels = field(doc, "channels", "");
    if (!channels.is_array() || channels.empty()) {
        throw ValidationError("Field 'channels' must be a non-empty array.");
    }
    for (std::size_t k = 0; k < channels.size(); ++k) {
        const json &c = channels[k];
        if (c.is_string()) {
            out.circuit.channels.add(c.get<std::string>());
        } else if (c.is_number_integer()) {
            out.circuit.channels.add(std::to_string(c.get<long long>()));
        } else {
            throw ValidationError("Field 'channels[" + std::to_string(k) + "]' must be a name.");
        }
    }

    const json &elements = field(doc, "elements", "");
    if (!elements.is_array()) {
        throw ValidationError("Field 'elements' must be an array.");
    }
    for (std::size_t k = 0; k < elements.size(); ++k) {
        out.circuit.elements.push_back(
            parse_element(out.circuit.channels, elements[k], "elements[" + std::to_string(k) + "]."));
    }
    out.circuit.validate();

    if (doc.contains("source")) {
        const json &s = doc["source"];
        SourceSpec src;
        src.channel = channel_ref(out.circuit.channels, field(s, "channel", "source."), "source.channel");
        src.beta = complex_field(field(s, "beta", "source."), "source.beta");
        if (s.contains("max_order")) {
            if (!s["max_order"].is_number_integer()) {
                throw ValidationError("Field 'source.max_order' must be an integer.");
            }
            src.max_order = s["max_order"].get<int>();
        }
        if (src.max_order < 0 || src.max_order > 2) {
            throw ValidationError("Field 'source.max_order' must be 0, 1 or 2.");
        }
        if (std::norm(src.beta) > 1.0) {
            throw ValidationError("Field 'source.beta' must satisfy |beta|^2 <= 1.");
        }
        out.source = src;
    }
    return out;
}

std::string circuit_to_json(const CircuitDocument &doc) {
    const auto &reg = doc.circuit.channels;
    json out;
    out["schema_version"] = 1;
    out["channels"] = reg.names();
    json elements = json::array();
    for (const auto &e : doc.circuit.elements) {
        elements.push_back(std::visit(
            [&](const auto &el) -> json {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, DirectionalCoupler>) {
                    json j{{"type", "coupler"},
                           {"channels", {reg.name(el.in_a), reg.name(el.in_b)}},
                           {"r", el.r},
                           {"t", el.t},
                           {"phi", el.phi}};
                    if (el.out) {
                        j["outputs"] = {reg.name(el.out->first), reg.name(el.out->second)};
                    }
                    return j;
                } else if constexpr (std::is_same_v<T, AddDropFilter>) {
                    return json{{"type", "adddrop"},
                                {"input", reg.name(el.input)},
                                {"through", reg.name(el.through)},
                                {"drop", reg.name(el.drop)},
                                {"resonant", el.resonant_color == Color::Red ? "Red" : "Blue"},
                                {"extinction", el.extinction}};
                } else {
                    return json{{"type", "phase"}, {"channel", reg.name(el.channel)}, {"phi", el.phi}};
                }
            },
            e));
    }
    out["elements"] = std::move(elements);
    if (doc.source) {
        out["source"] = {{"channel", reg.name(doc.source->channel)},
                         {"beta", complex_json(doc.source->beta)},
                         {"max_order", doc.source->max_order}};
    }
    return out.dump(2) + "\n";
}

}  // namespace wsim
