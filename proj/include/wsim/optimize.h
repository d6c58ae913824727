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

#ifndef WSIM_OPTIMIZE_H
#define WSIM_OPTIMIZE_H

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wsim/circuit.h"

namespace wsim {

enum class Metric { HeraldProbability, WFidelity };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string &name);

/// Probability of the T1 herald given a two-pair emission, measured by
/// propagating the canonical device. Phases do not enter. Throws
/// ParamOutOfRange outside [0, 1].
double herald_objective(double r1, double r2, double r3);

/// Objective on the canonical device with arbitrary parameters.
/// WFidelity uses a color-blind T1 detector, so filter leakage shows up as
/// a mixture with the other W state.
double evaluate_metric(const CanonicalParams &params, Metric metric);

struct Optimum {
    std::array<double, 3> r{};
    double value = 0.0;
    std::size_t evaluations = 0;
};

using Objective3 = std::function<double(double, double, double)>;

/// Coarse grid search with step 0.02 over [0, 1]³, then a bounded
/// Nelder-Mead refinement stopped once the simplex diameter drops below tol.
Optimum maximize(double tol = 1e-9, const Objective3 &objective = herald_objective);

/// `n` evenly spaced points from lo to hi inclusive (a single point is lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct SweepSpec {
    std::vector<double> r1{0.5};
    std::vector<double> r2{0.57735026918962576};
    std::vector<double> r3{0.70710678118654752};
    std::vector<double> ad2_extinction{0.0};
    Metric metric = Metric::HeraldProbability;
    std::size_t cell_cap = 1'000'000;

    std::size_t cells() const;
    /// Throws ValidationError on empty axes or values outside [0, 1], and
    /// GridTooLarge above cell_cap.
    void validate() const;
};

struct SweepRow {
    CanonicalParams params;
    double value = 0.0;
};

/// Rows in lexicographic grid order (r1 slowest, extinction fastest). Cells
/// are evaluated on `threads` workers (0 picks the hardware count).
std::vector<SweepRow> sweep(const SweepSpec &spec, unsigned threads = 0);
std::string sweep_to_csv(const SweepSpec &spec, const std::vector<SweepRow> &rows);

}  // namespace wsim

#endif
