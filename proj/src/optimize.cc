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

#include "wsim/optimize.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "wsim/errors.h"
#include "wsim/herald.h"
#include "wsim/serialize.h"

namespace wsim {

std::string metric_name(Metric m) {
    return m == Metric::HeraldProbability ? "herald_probability" : "w_fidelity";
}

Metric metric_from_name(const std::string &name) {
    if (name == "herald_probability") {
        return Metric::HeraldProbability;
    }
    if (name == "w_fidelity") {
        return Metric::WFidelity;
    }
    throw ValidationError("Unknown metric '" + name + "'; expected herald_probability or w_fidelity.");
}

double evaluate_metric(const CanonicalParams &params, Metric metric) {
    CircuitSpec spec = canonical_w_circuit(params);
    PureState out = propagate(two_pair_state({canonical::kSource, 1.0, 2}), spec);
    if (metric == Metric::HeraldProbability) {
        return herald(out, Branch::T1).probability;
    }
    auto ens = herald_colorblind(out, Branch::T1);
    return ens.probability > 0.0 ? w_fidelity(ens, WTarget::W_T1) : 0.0;
}

double herald_objective(double r1, double r2, double r3) {
    CanonicalParams p;
    p.r1 = r1;
    p.r2 = r2;
    p.r3 = r3;
    return evaluate_metric(p, Metric::HeraldProbability);
}

namespace {

constexpr double kGridStep = 0.02;

struct Vertex {
    std::array<double, 3> x;
    double f;
};

std::array<double, 3> clamp01(std::array<double, 3> x) {
    for (double &v : x) {
        v = std::clamp(v, 0.0, 1.0);
    }
    return x;
}

}  // namespace

Optimum maximize(double tol, const Objective3 &objective) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("maximize needs tol > 0.");
    }
    Optimum best;
    auto eval = [&](const std::array<double, 3> &x) {
        ++best.evaluations;
        return objective(x[0], x[1], x[2]);
    };

    const int n = (int)std::lround(1.0 / kGridStep);
    Vertex start{{0, 0, 0}, -INFINITY};
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= n; ++k) {
                std::array<double, 3> x{i * kGridStep, j * kGridStep, k * kGridStep};
                double f = eval(x);
                if (f > start.f) {
                    start = {x, f};
                }
            }
        }
    }

    // Nelder-Mead on -f, clamped to the unit cube.
    std::array<Vertex, 4> simplex;
    simplex[0] = start;
    for (int d = 0; d < 3; ++d) {
        auto x = start.x;
        x[d] += x[d] + kGridStep <= 1.0 ? kGridStep : -kGridStep;
        simplex[d + 1] = {x, eval(x)};
    }
    auto by_value = [](const Vertex &a, const Vertex &b) { return a.f > b.f; };
    for (int iter = 0; iter < 5000; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        double diameter = 0.0;
        for (int v = 1; v < 4; ++v) {
            for (int d = 0; d < 3; ++d) {
                diameter = std::max(diameter, std::abs(simplex[v].x[d] - simplex[0].x[d]));
            }
        }
        if (diameter < tol) {
            break;
        }
        std::array<double, 3> centroid{};
        for (int v = 0; v < 3; ++v) {
            for (int d = 0; d < 3; ++d) {
                centroid[d] += simplex[v].x[d] / 3.0;
            }
        }
        auto along = [&](double s) {
            std::array<double, 3> x;
            for (int d = 0; d < 3; ++d) {
                x[d] = centroid[d] + s * (simplex[3].x[d] - centroid[d]);
            }
            return clamp01(x);
        };
        auto xr = along(-1.0);
        double fr = eval(xr);
        if (fr > simplex[0].f) {
            auto xe = along(-2.0);
            double fe = eval(xe);
            simplex[3] = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr > simplex[2].f) {
            simplex[3] = {xr, fr};
        } else {
            auto xc = fr > simplex[3].f ? along(-0.5) : along(0.5);
            double fc = eval(xc);
            if (fc > std::max(fr, simplex[3].f)) {
                simplex[3] = {xc, fc};
            } else {
                for (int v = 1; v < 4; ++v) {
                    for (int d = 0; d < 3; ++d) {
                        simplex[v].x[d] = simplex[0].x[d] + 0.5 * (simplex[v].x[d] - simplex[0].x[d]);
                    }
                    simplex[v].f = eval(simplex[v].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    best.r = simplex[0].x;
    best.value = simplex[0].f;
    return best;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v;
    for (std::size_t k = 0; k < n; ++k) {
        v.push_back(n == 1 ? lo : lo + (hi - lo) * (double)k / (double)(n - 1));
    }
    return v;
}

std::size_t SweepSpec::cells() const {
    return r1.size() * r2.size() * r3.size() * ad2_extinction.size();
}

void SweepSpec::validate() const {
    for (const auto *axis : {&r1, &r2, &r3, &ad2_extinction}) {
        if (axis->empty()) {
            throw ValidationError("Sweep axes must be non-empty.");
        }
        for (double v : *axis) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ValidationError("Sweep value " + std::to_string(v) + " is outside [0, 1].");
            }
        }
    }
    // Overflow-safe product check.
    double n = (double)r1.size() * (double)r2.size() * (double)r3.size() * (double)ad2_extinction.size();
    if (n > (double)cell_cap) {
        throw GridTooLarge(
            "Sweep has " + format_double(n) + " cells; the cap is " + std::to_string(cell_cap) + ".");
    }
}

std::vector<SweepRow> sweep(const SweepSpec &spec, unsigned threads) {
    spec.validate();
    const std::size_t total = spec.cells();
    std::vector<SweepRow> rows(total);
    const std::size_t n2 = spec.r2.size(), n3 = spec.r3.size(), n4 = spec.ad2_extinction.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        std::size_t l = rest % n4;
        rest /= n4;
        std::size_t k = rest % n3;
        rest /= n3;
        std::size_t j = rest % n2;
        std::size_t i = rest / n2;
        CanonicalParams &p = rows[idx].params;
        p.r1 = spec.r1[i];
        p.r2 = spec.r2[j];
        p.r3 = spec.r3[k];
        p.ad2_extinction = spec.ad2_extinction[l];
    }

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = (unsigned)std::min<std::size_t>(threads, total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            rows[idx].value = evaluate_metric(rows[idx].params, spec.metric);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

std::string sweep_to_csv(const SweepSpec &spec, const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << "r1,r2,r3,ad2_extinction," << metric_name(spec.metric) << '\n';
    for (const auto &row : rows) {
        out << format_double(row.params.r1) << ',' << format_double(row.params.r2) << ','
            << format_double(row.params.r3) << ',' << format_double(row.params.ad2_extinction) << ','
            << format_double(row.value) << '\n';
    }
    return out.str();
}

}  // namespace wsim
