#include "wordcollector/report.hpp"

#include "wordcollector/approximations.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace wwc {

using nlohmann::json;

std::string method_name(Method m) {
    switch (m) {
        case Method::Exact: return "exact";
        case Method::Asymptotic: return "asymptotic";
        case Method::U2: return "u2";
        case Method::Simulate: return "simulate";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "exact") return Method::Exact;
    if (name == "asymptotic") return Method::Asymptotic;
    if (name == "u2") return Method::U2;
    if (name == "simulate") return Method::Simulate;
    throw DomainError("unknown method '" + name + "'");
}

bool CollectionReport::any_error() const {
    return spectrum_error || exact_error || asymptotic_error || u2_error || simulate_error;
}

namespace {

json number_or_null(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::optional<double> finite_or_null(double v) {
    if (!std::isfinite(v) || std::abs(v) > 1e308) return std::nullopt;
    return v;
}

json error_json(const MethodError& e) { return json{{"code", e.code}, {"message", e.message}}; }

MethodError error_from_json(const json& j) {
    return MethodError{j.at("code").get<std::string>(), j.at("message").get<std::string>()};
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

MethodError classify(const std::exception& e) {
    if (dynamic_cast<const UnsupportedConfigurationError*>(&e))
        return {"unsupported-configuration", e.what()};
    if (dynamic_cast<const EmptyLanguageError*>(&e)) return {"empty-language", e.what()};
    if (dynamic_cast<const OracleCapError*>(&e)) return {"oracle-cap", e.what()};
    if (dynamic_cast<const ConvergenceError*>(&e)) return {"convergence", e.what()};
    if (dynamic_cast<const NoConvergenceError*>(&e)) return {"no-convergence", e.what()};
    if (dynamic_cast<const NoRootError*>(&e)) return {"no-root", e.what()};
    if (dynamic_cast<const PrecisionError*>(&e)) return {"precision", e.what()};
    if (dynamic_cast<const TimeoutError*>(&e)) return {"timeout", e.what()};
    if (dynamic_cast<const PartialResultError*>(&e)) return {"partial-result", e.what()};
    if (dynamic_cast<const BoundUndefinedError*>(&e)) return {"bound-undefined", e.what()};
    if (dynamic_cast<const DomainError*>(&e)) return {"domain", e.what()};
    if (dynamic_cast<const InvalidAssignmentError*>(&e)) return {"invalid-assignment", e.what()};
    return {"error", e.what()};
}

}  // namespace

json to_json(const CollectionReport& r) {
    json j;
    j["schema_version"] = r.schema_version;

    json req;
    req["language"] = r.request.language;
    req["theta"] = r.request.theta ? json(*r.request.theta) : json(nullptr);
    json w = json::object();
    for (const auto& [letter, value] : r.request.weights) w[letter] = value;
    req["weights"] = w;
    req["n"] = r.request.n;
    req["methods"] = r.request.methods;
    req["trials"] = r.request.trials ? json(*r.request.trials) : json(nullptr);
    req["seed"] = r.request.seed ? json(*r.request.seed) : json(nullptr);
    j["request"] = req;

    if (r.spectrum) {
        j["spectrum"] = json{{"num_classes", r.spectrum->num_classes},
                             {"m", r.spectrum->m},
                             {"log_m", r.spectrum->log_m},
                             {"log_mu", r.spectrum->log_mu},
                             {"collision_warnings", r.spectrum->collision_warnings}};
    } else if (r.spectrum_error) {
        j["spectrum"] = json{{"error", error_json(*r.spectrum_error)}};
    }

    json results = json::object();
    if (r.exact) {
        results["exact"] = json{{"value", number_or_null(r.exact->value)},
                                {"log_value", r.exact->log_value},
                                {"error_bound", r.exact->error_bound},
                                {"time_ms", r.exact->time_ms}};
    } else if (r.exact_error) {
        results["exact"] = json{{"error", error_json(*r.exact_error)}};
    }
    if (r.asymptotic) {
        json a{{"t_star", r.asymptotic->t_star},
               {"arg_i", r.asymptotic->arg_i},
               {"estimate", number_or_null(r.asymptotic->estimate)},
               {"estimate_log", r.asymptotic->estimate_log},
               {"g1", r.asymptotic->g1},
               {"g_kind", r.asymptotic->g_kind}};
        if (r.asymptotic->exponents) {
            a["exponents"] = json{{"p", r.asymptotic->exponents->p},
                                  {"q", r.asymptotic->exponents->q},
                                  {"r", r.asymptotic->exponents->r}};
        } else {
            a["exponents"] = nullptr;
            if (r.asymptotic->exponents_note) a["exponents_note"] = *r.asymptotic->exponents_note;
        }
        a["time_ms"] = r.asymptotic->time_ms;
        results["asymptotic"] = a;
    } else if (r.asymptotic_error) {
        results["asymptotic"] = json{{"error", error_json(*r.asymptotic_error)}};
    }
    if (r.u2) {
        results["u2"] = json{{"value", number_or_null(r.u2->value)},
                             {"lower", number_or_null(r.u2->lower)},
                             {"upper", number_or_null(r.u2->upper)},
                             {"bounds_satisfied",
                              r.u2->bounds_satisfied ? json(*r.u2->bounds_satisfied) : json(nullptr)},
                             {"time_ms", r.u2->time_ms}};
    } else if (r.u2_error) {
        results["u2"] = json{{"error", error_json(*r.u2_error)}};
    }
    if (r.simulate) {
        results["simulate"] = json{{"mean", r.simulate->mean},
                                   {"std_error", r.simulate->std_error},
                                   {"trials", r.simulate->trials},
                                   {"seed", r.simulate->seed},
                                   {"degenerate_stats", r.simulate->degenerate_stats},
                                   {"time_ms", r.simulate->time_ms}};
    } else if (r.simulate_error) {
        results["simulate"] = json{{"error", error_json(*r.simulate_error)}};
    }
    j["results"] = results;
    return j;
}

namespace {

std::optional<double> opt_number(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

CollectionReport collection_report_from_json(const json& j) {
    CollectionReport r;
    r.schema_version = j.at("schema_version").get<int>();
    const json& req = j.at("request");
    r.request.language = req.at("language").get<std::string>();
    if (!req.at("theta").is_null()) r.request.theta = req.at("theta").get<int>();
    for (const auto& [key, value] : req.at("weights").items())
        r.request.weights.emplace_back(key, value.get<double>());
    r.request.n = req.at("n").get<int>();
    r.request.methods = req.at("methods").get<std::vector<std::string>>();
    if (!req.at("trials").is_null()) r.request.trials = req.at("trials").get<std::uint64_t>();
    if (!req.at("seed").is_null()) r.request.seed = req.at("seed").get<std::uint64_t>();

    if (j.contains("spectrum")) {
        const json& s = j.at("spectrum");
        if (s.contains("error")) {
            r.spectrum_error = error_from_json(s.at("error"));
        } else {
            SpectrumSummary sum;
            sum.num_classes = s.at("num_classes").get<std::int64_t>();
            sum.m = s.at("m").get<std::string>();
            sum.log_m = s.at("log_m").get<double>();
            sum.log_mu = s.at("log_mu").get<double>();
            sum.collision_warnings = s.at("collision_warnings").get<std::vector<std::string>>();
            r.spectrum = sum;
        }
    }

    const json& results = j.at("results");
    if (results.contains("exact")) {
        const json& e = results.at("exact");
        if (e.contains("error")) {
            r.exact_error = error_from_json(e.at("error"));
        } else {
            ExactReport er;
            er.value = opt_number(e, "value");
            er.log_value = e.at("log_value").get<double>();
            er.error_bound = e.at("error_bound").get<double>();
            er.time_ms = e.at("time_ms").get<double>();
            r.exact = er;
        }
    }
    if (results.contains("asymptotic")) {
        const json& a = results.at("asymptotic");
        if (a.contains("error")) {
            r.asymptotic_error = error_from_json(a.at("error"));
        } else {
            AsymptoticReport ar;
            ar.t_star = a.at("t_star").get<double>();
            ar.arg_i = a.at("arg_i").get<std::int64_t>();
            ar.estimate = opt_number(a, "estimate");
            ar.estimate_log = a.at("estimate_log").get<double>();
            ar.g1 = a.at("g1").get<double>();
            ar.g_kind = a.at("g_kind").get<std::string>();
            if (!a.at("exponents").is_null()) {
                ScaleExponents se;
                se.p = a.at("exponents").at("p").get<double>();
                se.q = a.at("exponents").at("q").get<double>();
                se.r = a.at("exponents").at("r").get<double>();
                ar.exponents = se;
            } else if (a.contains("exponents_note")) {
                ar.exponents_note = a.at("exponents_note").get<std::string>();
            }
            ar.time_ms = a.at("time_ms").get<double>();
            r.asymptotic = ar;
        }
    }
    if (results.contains("u2")) {
        const json& u = results.at("u2");
        if (u.contains("error")) {
            r.u2_error = error_from_json(u.at("error"));
        } else {
            U2Report ur;
            ur.value = opt_number(u, "value");
            ur.lower = opt_number(u, "lower");
            ur.upper = opt_number(u, "upper");
            if (!u.at("bounds_satisfied").is_null())
                ur.bounds_satisfied = u.at("bounds_satisfied").get<bool>();
            ur.time_ms = u.at("time_ms").get<double>();
            r.u2 = ur;
        }
    }
    if (results.contains("simulate")) {
        const json& s = results.at("simulate");
        if (s.contains("error")) {
            r.simulate_error = error_from_json(s.at("error"));
        } else {
            SimulateReport sr;
            sr.mean = s.at("mean").get<double>();
            sr.std_error = s.at("std_error").get<double>();
            sr.trials = s.at("trials").get<std::uint64_t>();
            sr.seed = s.at("seed").get<std::uint64_t>();
            sr.degenerate_stats = s.at("degenerate_stats").get<bool>();
            sr.time_ms = s.at("time_ms").get<double>();
            r.simulate = sr;
        }
    }
    return r;
}

CollectionReport analyze(const LanguageModel& model, int n, const std::set<Method>& methods,
                         const SimulationConfig& sim, const QuadratureSettings& quad) {
    CollectionReport report;
    report.request.language = language_name(model.kind);
    if (model.kind == Language::Rna) report.request.theta = model.theta;
    for (std::size_t i = 0; i < model.assignment.size(); ++i)
        report.request.weights.emplace_back(model.assignment.letters[i],
                                            model.assignment.weights[i]);
    report.request.n = n;
    for (Method m : methods) report.request.methods.push_back(method_name(m));
    if (methods.count(Method::Simulate)) {
        report.request.trials = sim.trials;
        report.request.seed = sim.seed;
    }

    ClassSpectrum spectrum;
    try {
        spectrum = language_spectrum(model, n);
        SpectrumSummary sum;
        sum.num_classes = static_cast<std::int64_t>(spectrum.num_classes());
        sum.m = spectrum.m.get_str();
        sum.log_m = spectrum.log_m;
        sum.log_mu = spectrum.log_mu;
        sum.collision_warnings = spectrum.collision_warnings;
        report.spectrum = sum;
    } catch (const std::exception& e) {
        report.spectrum_error = classify(e);
        return report;
    }

    if (methods.count(Method::Exact)) {
        const double t0 = now_ms();
        try {
            const ExactResult res = waiting_time_exact_detailed(spectrum, quad);
            ExactReport er;
            er.value = finite_or_null(res.value);
            er.log_value = res.log_value;
            er.error_bound = res.error_bound;
            er.time_ms = now_ms() - t0;
            report.exact = er;
        } catch (const std::exception& e) {
            report.exact_error = classify(e);
        }
    }
    if (methods.count(Method::Asymptotic)) {
        const double t0 = now_ms();
        try {
            const ParameterPack pack = parameter_pack(model, n);
            const AsymptoticEstimate est = asymptotic_waiting_time(pack, spectrum);
            AsymptoticReport ar;
            ar.t_star = est.t_star;
            ar.arg_i = est.arg_i;
            ar.estimate = finite_or_null(est.value);
            ar.estimate_log = est.estimate_log;
            ar.g1 = pack.g1;
            ar.g_kind = growth_kind_name(pack.g_kind);
            try {
                ar.exponents = m_scale_exponents(model);
            } catch (const std::exception& e) {
                ar.exponents_note = e.what();
            }
            ar.time_ms = now_ms() - t0;
            report.asymptotic = ar;
        } catch (const std::exception& e) {
            report.asymptotic_error = classify(e);
        }
    }
    if (methods.count(Method::U2)) {
        const double t0 = now_ms();
        try {
            U2Report ur;
            ur.value = finite_or_null(u2(spectrum));
            if (spectrum.m >= 16 && ur.value) {
                const double loglog_m = std::log(spectrum.log_m);
                ur.lower = finite_or_null(*ur.value / (3.0 * std::numbers::e * loglog_m));
                ur.upper = finite_or_null(2.0 * *ur.value);
                if (report.exact && report.exact->value && ur.lower && ur.upper)
                    ur.bounds_satisfied = *ur.lower <= *report.exact->value &&
                                          *report.exact->value <= *ur.upper;
            }
            ur.time_ms = now_ms() - t0;
            report.u2 = ur;
        } catch (const std::exception& e) {
            report.u2_error = classify(e);
        }
    }
    if (methods.count(Method::Simulate)) {
        const double t0 = now_ms();
        try {
            const SimulationResult res = run_trials(spectrum, sim);
            SimulateReport sr;
            sr.mean = res.mean;
            sr.std_error = res.std_error;
            sr.trials = sim.trials;
            sr.seed = res.seed;
            sr.degenerate_stats = res.degenerate_stats;
            sr.time_ms = now_ms() - t0;
            report.simulate = sr;
        } catch (const std::exception& e) {
            report.simulate_error = classify(e);
        }
    }
    return report;
}

void write_file_atomically(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out << contents;
        if (!out.flush()) throw Error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

}  // namespace wwc
