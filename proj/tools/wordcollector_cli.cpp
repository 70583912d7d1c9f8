#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wordcollector/approximations.hpp"
#include "wordcollector/report.hpp"

namespace {

using namespace wwc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadRequest = 1;
constexpr int kExitPartial = 2;

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOptions {
    std::string language;
    std::string weights;
    int theta = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--language", opts.language, "language family")
        ->required()
        ->check(CLI::IsMember({"sigma-star", "motzkin", "rna", "nc"}));
    cmd->add_option("--weights", opts.weights, "letter weights as k=v,... (e.g. b=1,a=1.2,abar=1.5)")
        ->required();
    cmd->add_option("--theta", opts.theta, "minimal enclosed length of a pair (rna only)");
}

WeightAssignment parse_weights(const std::string& spec) {
    WeightAssignment a;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidAssignmentError("malformed weight entry '" + item + "' (want letter=value)");
        const std::string letter = item.substr(0, eq);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item.substr(eq + 1), &used);
        } catch (const std::exception&) {
            throw InvalidAssignmentError("malformed weight value in '" + item + "'");
        }
        if (used != item.size() - eq - 1)
            throw InvalidAssignmentError("malformed weight value in '" + item + "'");
        a.letters.push_back(letter);
        a.weights.push_back(value);
    }
    if (a.letters.empty()) throw InvalidAssignmentError("empty --weights");
    return a;
}

Language language_from_name(const std::string& name) {
    if (name == "sigma-star") return Language::SigmaStar;
    if (name == "motzkin") return Language::Motzkin;
    if (name == "rna") return Language::Rna;
    return Language::NonConnected;
}

LanguageModel make_model(const CommonOptions& opts) {
    const Language kind = language_from_name(opts.language);
    WeightAssignment parsed = parse_weights(opts.weights);
    if (kind == Language::SigmaStar)
        return LanguageModel::make(kind, std::move(parsed));

    const std::vector<std::string> alphabet = {"a", "abar", "b"};
    WeightAssignment canonical{alphabet, {0, 0, 0}};
    std::vector<bool> found(3, false);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const auto it = std::find(alphabet.begin(), alphabet.end(), parsed.letters[i]);
        if (it == alphabet.end())
            throw InvalidAssignmentError("letter '" + parsed.letters[i] + "' is not in the " +
                                         opts.language + " alphabet {a, abar, b}");
        const auto idx = static_cast<std::size_t>(it - alphabet.begin());
        if (found[idx]) throw InvalidAssignmentError("duplicate letter '" + parsed.letters[i] + "'");
        found[idx] = true;
        canonical.weights[idx] = parsed.weights[i];
    }
    for (std::size_t i = 0; i < 3; ++i)
        if (!found[i])
            throw InvalidAssignmentError("missing weight for letter '" + alphabet[i] + "'");
    return LanguageModel::make(kind, std::move(canonical), opts.theta);
}

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty()) {
        std::cout << contents;
        if (!contents.empty() && contents.back() != '\n') std::cout << '\n';
    } else {
        write_file_atomically(out_path, contents);
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3)
        throw DomainError("malformed grid '" + spec + "' (want start:stop:step)");
    if (step <= 0 || stop < start || start < 0)
        throw DomainError("empty grid '" + spec + "'");
    std::vector<double> grid;
    for (double t = start; t <= stop + 1e-12 * step; t += step) grid.push_back(t);
    return grid;
}

int run_classes(const CommonOptions& opts, int n, const std::string& format,
                const std::string& out_path) {
    const LanguageModel model = make_model(opts);
    const ClassSpectrum spectrum = language_spectrum(model, n);

    std::ostringstream os;
    if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < spectrum.classes.size(); ++i) {
            const WeightClass& c = spectrum.classes[i];
            rows.push_back(json{{"rank", i + 1},
                                {"key", c.key.counts},
                                {"weight", std::exp(c.log_weight)},
                                {"log_weight", c.log_weight},
                                {"multiplicity", c.multiplicity.get_str()}});
        }
        json j{{"schema_version", 1},
               {"language", language_name(model.kind)},
               {"n", n},
               {"m", spectrum.m.get_str()},
               {"log_mu", spectrum.log_mu},
               {"collision_warnings", spectrum.collision_warnings},
               {"classes", rows}};
        os << j.dump(2);
    } else if (format == "csv") {
        os << "rank,key,weight,log_weight,multiplicity\n";
        for (std::size_t i = 0; i < spectrum.classes.size(); ++i) {
            const WeightClass& c = spectrum.classes[i];
            os << (i + 1) << ",\"(";
            for (std::size_t j = 0; j < c.key.counts.size(); ++j)
                os << (j ? "," : "") << c.key.counts[j];
            os << ")\"," << format_full(std::exp(c.log_weight)) << ","
               << format_full(c.log_weight) << "," << c.multiplicity.get_str() << "\n";
        }
    } else {
        os << "language " << language_name(model.kind) << "  n " << n << "  m "
           << spectrum.m.get_str() << "  log_mu " << format_full(spectrum.log_mu) << "\n";
        for (const std::string& w : spectrum.collision_warnings) os << "note: " << w << "\n";
        os << "rank  key  weight  multiplicity\n";
        for (std::size_t i = 0; i < spectrum.classes.size(); ++i) {
            const WeightClass& c = spectrum.classes[i];
            os << (i + 1) << "  (";
            for (std::size_t j = 0; j < c.key.counts.size(); ++j)
                os << (j ? "," : "") << c.key.counts[j];
            os << ")  " << std::exp(c.log_weight) << "  " << c.multiplicity.get_str() << "\n";
        }
    }
    emit(out_path, os.str());
    return kExitOk;
}

std::string report_to_text(const CollectionReport& r) {
    std::ostringstream os;
    os << "language " << r.request.language << "  n " << r.request.n << "\n";
    if (r.spectrum)
        os << "classes " << r.spectrum->num_classes << "  m " << r.spectrum->m << "  log_mu "
           << format_full(r.spectrum->log_mu) << "\n";
    if (r.spectrum_error)
        os << "spectrum error [" << r.spectrum_error->code << "] " << r.spectrum_error->message
           << "\n";
    if (r.exact)
        os << "exact " << (r.exact->value ? format_full(*r.exact->value) : "(overflows)")
           << "  log " << format_full(r.exact->log_value) << "\n";
    if (r.exact_error)
        os << "exact error [" << r.exact_error->code << "] " << r.exact_error->message << "\n";
    if (r.asymptotic) {
        os << "asymptotic t* " << format_full(r.asymptotic->t_star) << " at i "
           << r.asymptotic->arg_i << "  estimate "
           << (r.asymptotic->estimate ? format_full(*r.asymptotic->estimate) : "(overflows)")
           << "  log " << format_full(r.asymptotic->estimate_log) << "\n";
        if (r.asymptotic->exponents)
            os << "scale m^" << r.asymptotic->exponents->p << " (log m)^"
               << r.asymptotic->exponents->q << " (loglog m)^" << r.asymptotic->exponents->r
               << "\n";
    }
    if (r.asymptotic_error)
        os << "asymptotic error [" << r.asymptotic_error->code << "] "
           << r.asymptotic_error->message << "\n";
    if (r.u2) {
        os << "u2 " << (r.u2->value ? format_full(*r.u2->value) : "(overflows)");
        if (r.u2->bounds_satisfied)
            os << "  sandwich " << (*r.u2->bounds_satisfied ? "holds" : "VIOLATED");
        os << "\n";
    }
    if (r.u2_error) os << "u2 error [" << r.u2_error->code << "] " << r.u2_error->message << "\n";
    if (r.simulate)
        os << "simulate mean " << format_full(r.simulate->mean) << " +- "
           << format_full(r.simulate->std_error) << " (" << r.simulate->trials << " trials, seed "
           << r.simulate->seed << ")\n";
    if (r.simulate_error)
        os << "simulate error [" << r.simulate_error->code << "] " << r.simulate_error->message
           << "\n";
    return os.str();
}

std::string report_to_csv_rows(const std::vector<CollectionReport>& reports) {
    std::ostringstream os;
    os << "n,num_classes,m,log_mu,exact,exact_log,asymptotic_t_star,asymptotic_log,u2,"
          "sim_mean,sim_std_error,errors\n";
    for (const CollectionReport& r : reports) {
        os << r.request.n << ",";
        if (r.spectrum)
            os << r.spectrum->num_classes << "," << r.spectrum->m << ","
               << format_full(r.spectrum->log_mu);
        else
            os << ",,";
        os << ",";
        os << (r.exact && r.exact->value ? format_full(*r.exact->value) : "") << ",";
        os << (r.exact ? format_full(r.exact->log_value) : "") << ",";
        os << (r.asymptotic ? format_full(r.asymptotic->t_star) : "") << ",";
        os << (r.asymptotic ? format_full(r.asymptotic->estimate_log) : "") << ",";
        os << (r.u2 && r.u2->value ? format_full(*r.u2->value) : "") << ",";
        os << (r.simulate ? format_full(r.simulate->mean) : "") << ",";
        os << (r.simulate ? format_full(r.simulate->std_error) : "") << ",";
        int errors = 0;
        errors += r.spectrum_error.has_value();
        errors += r.exact_error.has_value();
        errors += r.asymptotic_error.has_value();
        errors += r.u2_error.has_value();
        errors += r.simulate_error.has_value();
        os << errors << "\n";
    }
    return os.str();
}

struct AnalyzeOptions {
    CommonOptions common;
    int n = 0;
    std::vector<int> n_list;
    std::string methods = "exact,asymptotic,u2";
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    std::uint64_t max_draws = 10000000000ULL;
    std::string out_path;
    std::string format = "json";
};

std::set<Method> parse_methods(const std::string& spec) {
    std::set<Method> methods;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) methods.insert(method_from_name(item));
    if (methods.empty()) throw DomainError("empty --methods");
    return methods;
}

int run_analyze_like(const AnalyzeOptions& opts, const std::vector<int>& ns) {
    const LanguageModel model = make_model(opts.common);
    const std::set<Method> methods = parse_methods(opts.methods);
    SimulationConfig sim;
    sim.trials = opts.trials;
    sim.seed = opts.seed;
    sim.max_draws_per_trial = opts.max_draws;

    std::vector<CollectionReport> reports;
    reports.reserve(ns.size());
    for (int n : ns) reports.push_back(analyze(model, n, methods, sim));

    std::ostringstream os;
    if (opts.format == "json") {
        if (reports.size() == 1) {
            os << to_json(reports.front()).dump(2);
        } else {
            json arr = json::array();
            for (const CollectionReport& r : reports) arr.push_back(to_json(r));
            os << arr.dump(2);
        }
    } else if (opts.format == "csv") {
        os << report_to_csv_rows(reports);
    } else {
        for (const CollectionReport& r : reports) os << report_to_text(r);
    }
    emit(opts.out_path, os.str());

    for (const CollectionReport& r : reports)
        if (r.any_error()) return kExitPartial;
    return kExitOk;
}

int run_psi(const CommonOptions& common, const std::vector<int>& ns, const std::string& grid_spec,
            const std::string& out_path) {
    const LanguageModel model = make_model(common);
    const std::vector<double> grid = parse_grid(grid_spec);
    for (int n : ns) {
        const ClassSpectrum spectrum = language_spectrum(model, n);
        const ParameterPack pack = parameter_pack(model, n);
        const auto curve = psi_curve(spectrum, pack, grid);
        std::ostringstream os;
        os << "t,psi\n";
        for (const auto& [t, psi] : curve)
            os << format_full(t) << "," << format_full(psi) << "\n";

        std::string path = out_path;
        if (!path.empty() && ns.size() > 1) {
            const auto dot = path.rfind('.');
            const std::string suffix = "_n" + std::to_string(n);
            if (dot == std::string::npos)
                path += suffix;
            else
                path.insert(dot, suffix);
        }
        emit(path, os.str());
    }
    return kExitOk;
}

int run_tstar(const CommonOptions& common, std::int64_t probe_limit, const std::string& format,
              const std::string& out_path) {
    const LanguageModel model = make_model(common);
    // t* and the exponent triple do not depend on n; the pack builder just
    // needs some length to fix the finite index ranges.
    const ParameterPack pack = parameter_pack(model, 64);
    const TStarResult ts = t_star(pack, probe_limit);

    std::optional<ScaleExponents> exponents;
    std::string note;
    try {
        exponents = m_scale_exponents(model);
    } catch (const std::exception& e) {
        note = e.what();
    }

    std::ostringstream os;
    if (format == "json") {
        json j{{"schema_version", 1},
               {"language", language_name(model.kind)},
               {"t_star", ts.value},
               {"arg_i", ts.argmax},
               {"pack", pack.description}};
        if (exponents)
            j["exponents"] = json{{"p", exponents->p}, {"q", exponents->q}, {"r", exponents->r}};
        else
            j["exponents"] = nullptr;
        if (!note.empty()) j["exponents_note"] = note;
        os << j.dump(2);
    } else {
        os << "t* " << format_full(ts.value) << "  argmax i " << ts.argmax << "  (" << pack.description
           << ")\n";
        if (exponents)
            os << "scale m^" << exponents->p << " (log m)^" << exponents->q << " (loglog m)^"
               << exponents->r << "\n";
        else
            os << "exponents: " << note << "\n";
    }
    emit(out_path, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted words collector: spectra, waiting times, and estimates"};
    app.require_subcommand(1);
    // global, given before the subcommand; keys live in [subcommand] sections
    app.set_config("--config");

    CommonOptions classes_opts;
    int classes_n = 0;
    std::string classes_format = "text";
    std::string classes_out;
    CLI::App* classes = app.add_subcommand("classes", "dump the weight classes of a language");
    add_common(classes, classes_opts);
    classes->add_option("--n", classes_n, "word length")->required();
    classes->add_option("--format", classes_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    classes->add_option("--out", classes_out, "output path (default stdout)");

    AnalyzeOptions analyze_opts;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "estimate the waiting time of the full collection");
    add_common(analyze_cmd, analyze_opts.common);
    analyze_cmd->add_option("--n", analyze_opts.n, "word length")->required();
    analyze_cmd->add_option("--methods", analyze_opts.methods,
                            "subset of exact,asymptotic,u2,simulate");
    analyze_cmd->add_option("--trials", analyze_opts.trials, "simulation trials");
    analyze_cmd->add_option("--seed", analyze_opts.seed, "simulation seed");
    analyze_cmd->add_option("--max-draws", analyze_opts.max_draws, "per-trial draw cap");
    analyze_cmd->add_option("--out", analyze_opts.out_path, "output path (default stdout)");
    analyze_cmd->add_option("--format", analyze_opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    AnalyzeOptions sweep_opts;
    std::string sweep_nlist;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "analyze a list of lengths");
    add_common(sweep_cmd, sweep_opts.common);
    sweep_cmd->add_option("--n-list", sweep_nlist, "comma-separated lengths")->required();
    sweep_cmd->add_option("--methods", sweep_opts.methods, "subset of exact,asymptotic,u2,simulate");
    sweep_cmd->add_option("--trials", sweep_opts.trials, "simulation trials");
    sweep_cmd->add_option("--seed", sweep_opts.seed, "simulation seed");
    sweep_cmd->add_option("--max-draws", sweep_opts.max_draws, "per-trial draw cap");
    sweep_cmd->add_option("--out", sweep_opts.out_path, "output path (default stdout)");
    sweep_cmd->add_option("--format", sweep_opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    CommonOptions psi_opts;
    int psi_n = 0;
    std::string psi_nlist, psi_grid = "0:2:0.01", psi_out;
    CLI::App* psi_cmd = app.add_subcommand("psi", "emit the rescaled survival curve as CSV");
    add_common(psi_cmd, psi_opts);
    psi_cmd->add_option("--n", psi_n, "word length");
    psi_cmd->add_option("--n-list", psi_nlist, "comma-separated lengths");
    psi_cmd->add_option("--grid", psi_grid, "t grid as start:stop:step");
    psi_cmd->add_option("--out", psi_out, "output path; _n<k> inserted per length");

    CommonOptions tstar_opts;
    std::int64_t tstar_probe = kDefaultProbeLimit;
    std::string tstar_format = "text", tstar_out;
    CLI::App* tstar_cmd = app.add_subcommand("tstar", "print the waiting-time constant t*");
    add_common(tstar_cmd, tstar_opts);
    tstar_cmd->add_option("--probe-limit", tstar_probe, "index scan limit");
    tstar_cmd->add_option("--format", tstar_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    tstar_cmd->add_option("--out", tstar_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadRequest;
    }

    try {
        if (classes->parsed()) return run_classes(classes_opts, classes_n, classes_format, classes_out);
        if (analyze_cmd->parsed()) return run_analyze_like(analyze_opts, {analyze_opts.n});
        if (sweep_cmd->parsed()) {
            std::vector<int> ns;
            std::stringstream ss(sweep_nlist);
            std::string item;
            while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
            if (ns.empty()) throw DomainError("empty --n-list");
            return run_analyze_like(sweep_opts, ns);
        }
        if (psi_cmd->parsed()) {
            std::vector<int> ns;
            if (!psi_nlist.empty()) {
                std::stringstream ss(psi_nlist);
                std::string item;
                while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
            } else {
                ns.push_back(psi_n);
            }
            if (ns.empty()) throw DomainError("no lengths given");
            return run_psi(psi_opts, ns, psi_grid, psi_out);
        }
        if (tstar_cmd->parsed()) return run_tstar(tstar_opts, tstar_probe, tstar_format, tstar_out);
    } catch (const EmptyLanguageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;  // valid request, empty result
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadRequest;
    }
    return kExitBadRequest;
}
