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

#ifndef WSIM_SERIALIZE_H
#define WSIM_SERIALIZE_H

#include <map>
#include <string>

#include "json.hpp"
#include "wsim/circuit.h"
#include "wsim/tomography.h"

namespace wsim {

/// Output documents carry this in their "schema_version" field.
inline constexpr int kSchemaVersion = 1;

/// Complex numbers serialize as {"re": x, "im": y}.
nlohmann::json complex_to_json(Complex c);
/// Row-major list of rows of complex entries.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd &m);
nlohmann::json state_to_json(const PureState &s, const ChannelRegistry &channels);
nlohmann::json record_to_json(const MeasurementRecord &rec);
MeasurementRecord record_from_json(const nlohmann::json &j);
nlohmann::json report_to_json(const DiscriminationReport &r);

/// Header row "re_0,im_0,...", then one line per matrix row.
std::string matrix_to_csv(const Eigen::MatrixXcd &m);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace wsim

#endif
