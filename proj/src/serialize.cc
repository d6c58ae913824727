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

#include "wsim/serialize.h"

#include <charconv>
#include <sstream>

#include "wsim/errors.h"

namespace wsim {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json complex_to_json(Complex c) {
    return json{{"re", c.real()}, {"im", c.imag()}};
}

json matrix_to_json(const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json state_to_json(const PureState &s, const ChannelRegistry &channels) {
    json terms = json::array();
    for (const auto &[b, amp] : s.terms()) {
        json modes = json::array();
        for (const auto &[mode, n] : b.occupations()) {
            std::string name = mode.channel >= 0 && mode.channel < (int)channels.size()
                                   ? channels.name(mode.channel)
                                   : std::to_string(mode.channel);
            modes.push_back({{"channel", name}, {"color", std::string(1, color_char(mode.color))}, {"count", n}});
        }
        terms.push_back({{"modes", std::move(modes)}, {"amplitude", complex_to_json(amp)}});
    }
    return json{{"weight", complex_to_json(s.weight())}, {"terms", std::move(terms)}};
}

json record_to_json(const MeasurementRecord &rec) {
    return json{{"channel_pair", {rec.setting.channel_pair.first, rec.setting.channel_pair.second}},
                {"phase", rec.setting.phase},
                {"conditioned_on", rec.setting.conditioned_on},
                {"n_plus", rec.n_plus},
                {"n_minus", rec.n_minus},
                {"shots", rec.shots},
                {"seed", rec.seed}};
}

MeasurementRecord record_from_json(const json &j) {
    try {
        MeasurementRecord rec;
        rec.setting.channel_pair = {j.at("channel_pair").at(0).get<int>(), j.at("channel_pair").at(1).get<int>()};
        rec.setting.phase = j.at("phase").get<double>();
        rec.setting.conditioned_on = j.at("conditioned_on").get<int>();
        rec.n_plus = j.at("n_plus").get<std::int64_t>();
        rec.n_minus = j.at("n_minus").get<std::int64_t>();
        rec.shots = j.at("shots").get<std::int64_t>();
        rec.seed = j.at("seed").get<std::uint64_t>();
        if (rec.n_plus + rec.n_minus != rec.shots || rec.n_plus < 0 || rec.n_minus < 0) {
            throw ValidationError("Measurement record counts do not add up to shots.");
        }
        return rec;
    } catch (const json::exception &ex) {
        throw ValidationError(std::string("Malformed measurement record: ") + ex.what());
    }
}

json report_to_json(const DiscriminationReport &r) {
    return json{{"fidelity_W", r.fidelity_w},
                {"trace_distance_to_rhoS", r.trace_distance_to_rho_s},
                {"trace_distance_to_rhoB", r.trace_distance_to_rho_b},
                {"W-consistent", r.w_consistent}};
}

std::string matrix_to_csv(const Eigen::MatrixXcd &m) {
    std::ostringstream out;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out << (j ? "," : "") << "re_" << j << ",im_" << j;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << (j ? "," : "") << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace wsim
