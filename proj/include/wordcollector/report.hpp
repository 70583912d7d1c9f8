#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wordcollector/asymptotics.hpp"
#include "wordcollector/exact.hpp"
#include "wordcollector/languages.hpp"
#include "wordcollector/simulate.hpp"

namespace wwc {

enum class Method { Exact, Asymptotic, U2, Simulate };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct MethodError {
    std::string code;
    std::string message;
};

struct ExactReport {
    std::optional<double> value;  // null when outside double range
    double log_value = 0.0;
    double error_bound = 0.0;
    double time_ms = 0.0;
};

struct AsymptoticReport {
    double t_star = 0.0;
    std::int64_t arg_i = 0;
    std::optional<double> estimate;
    double estimate_log = 0.0;
    double g1 = 0.0;
    std::string g_kind;
    std::optional<ScaleExponents> exponents;
    std::optional<std::string> exponents_note;  // set when no stated exponent applies
    double time_ms = 0.0;
};

struct U2Report {
    std::optional<double> value;
    std::optional<double> lower;   // present when m >= 16
    std::optional<double> upper;
    std::optional<bool> bounds_satisfied;  // present when exact also ran
    double time_ms = 0.0;
};

struct SimulateReport {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool degenerate_stats = false;
    double time_ms = 0.0;
};

struct SpectrumSummary {
    std::int64_t num_classes = 0;
    std::string m;  // exact decimal
    double log_m = 0.0;
    double log_mu = 0.0;
    std::vector<std::string> collision_warnings;
};

struct RequestEcho {
    std::string language;
    std::optional<int> theta;
    std::vector<std::pair<std::string, double>> weights;
    int n = 0;
    std::vector<std::string> methods;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
};

struct CollectionReport {
    int schema_version = 1;
    RequestEcho request;
    std::optional<SpectrumSummary> spectrum;
    std::optional<MethodError> spectrum_error;

    std::optional<ExactReport> exact;
    std::optional<MethodError> exact_error;
    std::optional<AsymptoticReport> asymptotic;
    std::optional<MethodError> asymptotic_error;
    std::optional<U2Report> u2;
    std::optional<MethodError> u2_error;
    std::optional<SimulateReport> simulate;
    std::optional<MethodError> simulate_error;

    bool any_error() const;
};

nlohmann::json to_json(const CollectionReport& report);
CollectionReport collection_report_from_json(const nlohmann::json& j);

// Runs the requested methods on one (model, n), catching per-method errors
// into the report.
CollectionReport analyze(const LanguageModel& model, int n, const std::set<Method>& methods,
                         const SimulationConfig& sim = {},
                         const QuadratureSettings& quad = {});

// Write-to-temp-then-rename; parent directory must exist.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace wwc
