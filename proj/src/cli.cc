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

#include "wsim/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsim/circuit.h"
#include "wsim/errors.h"
#include "wsim/herald.h"
#include "wsim/optimize.h"
#include "wsim/serialize.h"
#include "wsim/tomography.h"

namespace wsim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> shots;
};

struct Setup {
    CircuitSpec circuit;
    SourceSpec source;
    HeraldLayout layout;
};

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("Cannot read file '" + path.string() + "'.");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_config(const std::string &path) {
    if (path.empty()) {
        return json::object();
    }
    std::string text = read_file(path);
    try {
        json cfg = json::parse(text);
        if (!cfg.is_object()) {
            throw ValidationError("Config '" + path + "' must hold a JSON object.");
        }
        return cfg;
    } catch (const json::parse_error &ex) {
        throw ValidationError("Config '" + path + "': " + ex.what());
    }
}

double get_number(const json &obj, const std::string &key, double fallback, const std::string &path = "") {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_number()) {
        throw ValidationError("Config field '" + path + key + "' must be a number.");
    }
    return obj[key].get<double>();
}

std::string get_string(const json &obj, const std::string &key, const std::string &fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_string()) {
        throw ValidationError("Config field '" + key + "' must be a string.");
    }
    return obj[key].get<std::string>();
}

std::optional<std::int64_t> get_int(const json &obj, const std::string &key) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    if (!obj[key].is_number_integer()) {
        throw ValidationError("Config field '" + key + "' must be an integer.");
    }
    return obj[key].get<std::int64_t>();
}

Complex get_beta(const json &v) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_object() && v.contains("re") && v.contains("im") && v["re"].is_number() && v["im"].is_number()) {
        return {v["re"].get<double>(), v["im"].get<double>()};
    }
    throw ValidationError("Config field 'beta' must be a number or {\"re\", \"im\"}.");
}

Setup resolve_setup(const json &cfg, const fs::path &base) {
    bool has_canonical = cfg.contains("canonical");
    bool has_file = cfg.contains("circuit_file");
    if (has_canonical == has_file) {
        throw ValidationError("Config needs exactly one of 'canonical' or 'circuit_file'.");
    }
    Setup s;
    std::optional<SourceSpec> file_source;
    if (has_canonical) {
        const json &c = cfg["canonical"];
        if (!c.is_object()) {
            throw ValidationError("Config field 'canonical' must be an object.");
        }
        CanonicalParams p;
        p.r1 = get_number(c, "r1", p.r1, "canonical.");
        p.r2 = get_number(c, "r2", p.r2, "canonical.");
        p.r3 = get_number(c, "r3", p.r3, "canonical.");
        p.phi1 = get_number(c, "phi1", p.phi1, "canonical.");
        p.phi2 = get_number(c, "phi2", p.phi2, "canonical.");
        p.phi3 = get_number(c, "phi3", p.phi3, "canonical.");
        p.ad2_extinction = get_number(c, "ad2_extinction", p.ad2_extinction, "canonical.");
        try {
            s.circuit = canonical_w_circuit(p);
        } catch (const ParamOutOfRange &ex) {
            throw ValidationError(std::string("Config block 'canonical': ") + ex.what());
        }
        s.source.channel = canonical::kSource;
    } else {
        if (!cfg["circuit_file"].is_string()) {
            throw ValidationError("Config field 'circuit_file' must be a path.");
        }
        fs::path file = cfg["circuit_file"].get<std::string>();
        if (file.is_relative()) {
            file = base / file;
        }
        CircuitDocument doc = circuit_from_json(read_file(file));
        s.circuit = doc.circuit;
        file_source = doc.source;
        const auto &reg = s.circuit.channels;
        auto need = [&](const char *name) {
            auto id = reg.find(name);
            if (!id) {
                throw ValidationError(std::string("Circuit file lacks the detector channel '") + name + "'.");
            }
            return *id;
        };
        s.layout = HeraldLayout{need("T1"), need("T2"), {need("2"), need("3"), need("4")}};
        s.source.channel = file_source ? file_source->channel : need("0");
    }

    if (cfg.contains("beta")) {
        s.source.beta = get_beta(cfg["beta"]);
    } else if (file_source) {
        s.source.beta = file_source->beta;
    } else {
        throw ValidationError("Missing config field 'beta'.");
    }
    s.source.max_order = (int)get_int(cfg, "max_order").value_or(file_source ? file_source->max_order : 2);
    if (s.source.max_order < 0 || s.source.max_order > 2) {
        throw ValidationError("Config field 'max_order' must be 0, 1 or 2.");
    }
    if (std::norm(s.source.beta) > 1.0) {
        throw ValidationError("Config field 'beta' must satisfy |beta|^2 <= 1.");
    }
    return s;
}

std::string resolve_format(const Flags &flags, const json &cfg, const std::string &fallback) {
    std::string f = flags.format.empty() ? get_string(cfg, "format", fallback) : flags.format;
    if (f != "json" && f != "csv") {
        throw ValidationError("Output format must be json or csv; got '" + f + "'.");
    }
    return f;
}

void emit(const std::string &text, const Flags &flags, const json &cfg, std::ostream &out) {
    std::string path = flags.out.empty() ? get_string(cfg, "output", "") : flags.out;
    if (path.empty()) {
        out << text;
        return;
    }
    fs::path p = path;
    if (const char *dir = std::getenv("WSIM_OUTPUT_DIR"); dir != nullptr && *dir != '\0' && p.is_relative()) {
        p = fs::path(dir) / p;
    }
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("Cannot open output file '" + p.string() + "'.");
    }
    f << text;
}

std::string dump(const json &doc) {
    return doc.dump(2) + "\n";
}

fs::path config_dir(const Flags &flags) {
    return flags.config.empty() ? fs::current_path() : fs::path(flags.config).parent_path();
}

json branch_summary(const PureState &out, Branch b, const Setup &s) {
    HeraldResult h = herald(out, b, s.layout);
    double sector = out.photon_sector(4).norm_squared();
    double total = out.norm_squared();
    json j;
    j["probability_given_two_pairs"] = h.probability;
    j["probability"] = total > 0.0 ? h.probability * sector / total : 0.0;
    if (h.probability > 0.0) {
        WTarget target = b == Branch::T1 ? WTarget::W_T1 : WTarget::W_T2;
        j["fidelity"] = w_fidelity(h.heralded_state, target, s.layout.outputs);
        j["coincidences"] = coincidence_distribution(h.heralded_state, s.layout.outputs);
    } else {
        j["fidelity"] = nullptr;
        j["coincidences"] = nullptr;
    }
    return j;
}

int cmd_simulate(const Flags &flags, std::ostream &out) {
    json cfg = load_config(flags.config);
    Setup s = resolve_setup(cfg, config_dir(flags));
    std::string format = resolve_format(flags, cfg, "json");
    PureState state = propagate(s.source, s.circuit);

    json t1 = branch_summary(state, Branch::T1, s);
    json t2 = branch_summary(state, Branch::T2, s);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "simulate";
    doc["beta"] = complex_to_json(s.source.beta);
    doc["herald_probability_T1"] = t1["probability_given_two_pairs"];
    doc["herald_probability_T2"] = t2["probability_given_two_pairs"];
    doc["absolute_probability_T1"] = t1["probability"];
    doc["absolute_probability_T2"] = t2["probability"];
    doc["fidelity_W_T1"] = t1["fidelity"];
    doc["fidelity_W_T2"] = t2["fidelity"];
    doc["coincidence_distribution_T1"] = t1["coincidences"];
    doc["coincidence_distribution_T2"] = t2["coincidences"];

    if (format == "json") {
        emit(dump(doc), flags, cfg, out);
        return kExitOk;
    }
    std::ostringstream csv;
    csv << "quantity,value\n";
    for (const char *key : {"herald_probability_T1", "herald_probability_T2", "absolute_probability_T1",
                            "absolute_probability_T2", "fidelity_W_T1", "fidelity_W_T2"}) {
        csv << key << ',' << (doc[key].is_null() ? std::string() : format_double(doc[key].get<double>())) << '\n';
    }
    for (const char *branch : {"T1", "T2"}) {
        const json &d = doc[std::string("coincidence_distribution_") + branch];
        if (d.is_null()) {
            continue;
        }
        for (const auto &[pattern, p] : d.items()) {
            csv << "coincidence_" << branch << '_' << pattern << ',' << format_double(p.get<double>()) << '\n';
        }
    }
    emit(csv.str(), flags, cfg, out);
    return kExitOk;
}

int cmd_herald(const Flags &flags, std::ostream &out) {
    json cfg = load_config(flags.config);
    Setup s = resolve_setup(cfg, config_dir(flags));
    std::string format = resolve_format(flags, cfg, "json");
    PureState state = propagate(s.source, s.circuit);

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "herald";
    for (Branch b : {Branch::T1, Branch::T2}) {
        HeraldResult h = herald(state, b, s.layout);
        json j;
        j["probability"] = h.probability;
        j["residual_weight"] = complex_to_json(h.residual_weight);
        j["heralded_state"] = state_to_json(h.heralded_state, s.circuit.channels);
        j["fidelity"] = h.probability > 0.0
                            ? json(w_fidelity(h.heralded_state, b == Branch::T1 ? WTarget::W_T1 : WTarget::W_T2,
                                              s.layout.outputs))
                            : json(nullptr);
        doc[branch_name(b)] = std::move(j);
    }
    if (format == "json") {
        emit(dump(doc), flags, cfg, out);
        return kExitOk;
    }
    std::ostringstream csv;
    csv << "branch,probability,fidelity\n";
    for (const char *b : {"T1", "T2"}) {
        const json &j = doc[b];
        csv << b << ',' << format_double(j["probability"].get<double>()) << ','
            << (j["fidelity"].is_null() ? std::string() : format_double(j["fidelity"].get<double>())) << '\n';
    }
    emit(csv.str(), flags, cfg, out);
    return kExitOk;
}

int cmd_tomo(const Flags &flags, std::ostream &out) {
    json cfg = load_config(flags.config);
    std::string format = resolve_format(flags, cfg, "json");

    TomoOptions opts;
    std::optional<std::int64_t> shots = flags.shots ? flags.shots : get_int(cfg, "shots");
    if (!shots) {
        throw ValidationError("Missing config field 'shots'.");
    }
    if (*shots < 1) {
        throw ValidationError("Config field 'shots' must be at least 1.");
    }
    opts.shots = shots;
    if (flags.seed) {
        opts.seed = *flags.seed;
    } else if (auto seed = get_int(cfg, "seed")) {
        opts.seed = (std::uint64_t)*seed;
    }
    opts.diagonal_tolerance = get_number(cfg, "diagonal_tolerance", opts.diagonal_tolerance);
    double threshold = get_number(cfg, "w_threshold", 0.9);

    std::string source = get_string(cfg, "tomo_source", "circuit");
    ThreePhotonRho rho;
    if (source == "circuit") {
        Setup s = resolve_setup(cfg, config_dir(flags));
        std::string branch = get_string(cfg, "branch", "T1");
        if (branch != "T1" && branch != "T2") {
            throw ValidationError("Config field 'branch' must be T1 or T2.");
        }
        Branch b = branch == "T1" ? Branch::T1 : Branch::T2;
        HeraldResult h = herald(propagate(s.source, s.circuit), b, s.layout);
        if (h.probability == 0.0) {
            throw Error("The configured device produces no herald events; nothing to reconstruct.");
        }
        // The two-Red state maps onto the same basis after exchanging colors.
        PureState heralded = b == Branch::T1 ? h.heralded_state : swap_colors(h.heralded_state);
        rho = reduce_to_triple(heralded, s.layout.outputs);
    } else if (source == "w") {
        rho = rho_w();
    } else if (source == "rho_s") {
        rho = rho_incoherent();
    } else if (source == "rho_b") {
        rho = rho_biseparable();
    } else {
        throw ValidationError("Config field 'tomo_source' must be circuit, w, rho_s or rho_b.");
    }

    TomoResult r = reconstruct_rho234(rho, opts);
    DiscriminationReport report = discriminate(r.rho, threshold);

    if (format == "csv") {
        emit(matrix_to_csv(r.rho.m), flags, cfg, out);
        return kExitOk;
    }
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "tomo";
    doc["tomo_source"] = source;
    doc["shots"] = *opts.shots;
    doc["seed"] = opts.seed;
    doc["observed_diagonals"] = r.observed_diagonals;
    json coeffs;
    const char *names[] = {"a", "b", "c"};
    for (int k = 0; k < 3; ++k) {
        coeffs[names[k]] = {{"value", complex_to_json(r.coefficients[k])}, {"standard_error", r.standard_errors[k]}};
    }
    doc["coefficients"] = coeffs;
    doc["rho"] = matrix_to_json(r.rho.m);
    doc["min_eigenvalue"] = r.min_eigenvalue;
    json records = json::array();
    for (const auto &rec : r.records) {
        records.push_back(record_to_json(rec));
    }
    doc["records"] = records;
    doc["report"] = report_to_json(report);
    emit(dump(doc), flags, cfg, out);
    return kExitOk;
}

int cmd_optimize(const Flags &flags, std::ostream &out) {
    json cfg = load_config(flags.config);
    std::string format = resolve_format(flags, cfg, "json");
    double tol = get_number(cfg, "tol", 1e-9);
    if (!(tol > 0.0)) {
        throw ValidationError("Config field 'tol' must be positive.");
    }
    Optimum opt = maximize(tol);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "r1,r2,r3,value\n"
            << format_double(opt.r[0]) << ',' << format_double(opt.r[1]) << ',' << format_double(opt.r[2]) << ','
            << format_double(opt.value) << '\n';
        emit(csv.str(), flags, cfg, out);
        return kExitOk;
    }
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "optimize";
    doc["argmax"] = {{"r1", opt.r[0]}, {"r2", opt.r[1]}, {"r3", opt.r[2]}};
    doc["value"] = opt.value;
    doc["evaluations"] = opt.evaluations;
    emit(dump(doc), flags, cfg, out);
    return kExitOk;
}

std::vector<double> axis_values(const json &sweep, const std::string &key, std::vector<double> fallback) {
    if (!sweep.contains(key)) {
        return fallback;
    }
    const json &v = sweep[key];
    std::string where = "sweep." + key;
    if (v.is_number()) {
        return {v.get<double>()};
    }
    if (v.is_array()) {
        std::vector<double> values;
        for (const auto &x : v) {
            if (!x.is_number()) {
                throw ValidationError("Config field '" + where + "' must list numbers.");
            }
            values.push_back(x.get<double>());
        }
        return values;
    }
    if (v.is_object() && v.contains("n")) {
        if (!v["n"].is_number_integer() || v["n"].get<long long>() < 1) {
            throw ValidationError("Config field '" + where + ".n' must be a positive integer.");
        }
        double lo = get_number(v, "lo", 0.0, where + ".");
        double hi = get_number(v, "hi", 1.0, where + ".");
        auto n = (std::size_t)v["n"].get<long long>();
        // Checked before allocating so huge axes report GridTooLarge.
        if (n > 1'000'000'000ULL) {
            throw GridTooLarge("Config field '" + where + ".n' is too large.");
        }
        return linspace(lo, hi, n);
    }
    throw ValidationError("Config field '" + where + "' must be a number, a list, or {lo, hi, n}.");
}

int cmd_sweep(const Flags &flags, std::ostream &out) {
    json cfg = load_config(flags.config);
    std::string format = resolve_format(flags, cfg, "csv");
    if (!cfg.contains("sweep") || !cfg["sweep"].is_object()) {
        throw ValidationError("Missing config block 'sweep'.");
    }
    const json &sw = cfg["sweep"];
    SweepSpec spec;
    spec.r1 = axis_values(sw, "r1", spec.r1);
    spec.r2 = axis_values(sw, "r2", spec.r2);
    spec.r3 = axis_values(sw, "r3", spec.r3);
    spec.ad2_extinction = axis_values(sw, "ad2_extinction", spec.ad2_extinction);
    spec.metric = metric_from_name(get_string(sw, "metric", "herald_probability"));
    if (auto cap = get_int(sw, "cell_cap")) {
        if (*cap < 1) {
            throw ValidationError("Config field 'sweep.cell_cap' must be positive.");
        }
        spec.cell_cap = (std::size_t)*cap;
    }
    auto rows = sweep(spec);
    if (format == "csv") {
        emit(sweep_to_csv(spec, rows), flags, cfg, out);
        return kExitOk;
    }
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "sweep";
    doc["metric"] = metric_name(spec.metric);
    json table = json::array();
    for (const auto &row : rows) {
        table.push_back({{"r1", row.params.r1},
                         {"r2", row.params.r2},
                         {"r3", row.params.r3},
                         {"ad2_extinction", row.params.ad2_extinction},
                         {"value", row.value}});
    }
    doc["rows"] = table;
    emit(dump(doc), flags, cfg, out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Linear-optical W-state circuit simulator", "wsim"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "Propagate the source and summarize both herald branches"},
        {"herald", "Print the heralded states of both branches"},
        {"tomo", "Simulate the pair tomography and reconstruct the three-photon matrix"},
        {"optimize", "Maximize the herald probability over the coupler reflections"},
        {"sweep", "Evaluate a metric over a parameter grid"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON config file");
        sub->add_option("--out", flags.out, "Output path (default stdout)");
        sub->add_option("--format", flags.format, "json or csv");
        sub->add_option("--seed", flags.seed, "Sampling seed");
        sub->add_option("--shots", flags.shots, "Shots per measurement setting");
    }

    std::vector<std::string> argv_store{"wsim"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "simulate") {
            return cmd_simulate(flags, out);
        }
        if (name == "herald") {
            return cmd_herald(flags, out);
        }
        if (name == "tomo") {
            return cmd_tomo(flags, out);
        }
        if (name == "optimize") {
            return cmd_optimize(flags, out);
        }
        return cmd_sweep(flags, out);
    } catch (const ValidationError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DiagonalsNotUniform &e) {
        err << "tomography: " << e.what() << '\n';
        return kExitDiagonals;
    } catch (const GridTooLarge &e) {
        err << "sweep: " << e.what() << '\n';
        return kExitGridTooLarge;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace wsim
