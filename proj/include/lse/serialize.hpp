#pragma once

// CSV and JSON interchange for the library's value types.  Two float formats
// are used deliberately:
//  - format_double: shortest representation that parses back to the exact
//    same double (round-trip guarantee, used wherever parse(emit(x)) == x is
//    promised);
//  - format_sig9: fixed 9 significant digits for plot-data CSV columns.

#include <json.hpp>

#include <charconv>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "lse/rip_analysis.hpp"
#include "lse/signal_model.hpp"
#include "lse/vb_estimator.hpp"

namespace lse {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double value) {
    char buffer[64];
    const std::to_chars_result result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (result.ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buffer, result.ptr);
}

/// 9-significant-digit plot format.
inline std::string format_sig9(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

inline double parse_double(const std::string& text) {
    double value = 0.0;
    const std::from_chars_result result =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return value;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// JSON (nlohmann) for sample records, estimates, and solver options.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const SampleRecord& record) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : record.values) {
        values.push_back({v.real(), v.imag()});
    }
    return {{"indices", record.indices},
            {"values", std::move(values)},
            {"noise_variance", record.noise_variance}};
}

inline SampleRecord sample_record_from_json(const nlohmann::json& j) {
    SampleRecord record;
    record.indices = j.at("indices").get<std::vector<long long>>();
    for (const auto& pair : j.at("values")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw std::invalid_argument("sample values must be [re, im] pairs");
        }
        record.values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    record.noise_variance = j.value("noise_variance", 0.0);
    record.validate();
    return record;
}

inline nlohmann::json to_json(const SpectrumEstimate& estimate) {
    nlohmann::json detected = nlohmann::json::array();
    for (const auto& [freq, power] : estimate.detected) {
        detected.push_back({{"frequency", freq}, {"power", power}});
    }
    std::vector<double> grid_power(estimate.grid_power.data(),
                                   estimate.grid_power.data() + estimate.grid_power.size());
    std::vector<double> alpha(estimate.alpha_expect.data(),
                              estimate.alpha_expect.data() + estimate.alpha_expect.size());
    return {{"grid_n", estimate.grid_n},
            {"grid_power", std::move(grid_power)},
            {"alpha_expect", std::move(alpha)},
            {"beta_expect", estimate.beta_expect},
            {"detected", std::move(detected)},
            {"converged", estimate.converged},
            {"iterations_used", estimate.iterations_used},
            {"bound", estimate.bound}};
}

inline nlohmann::json to_json(const Hyperparams& hyper) {
    return {{"a", hyper.a}, {"b", hyper.b}, {"c", hyper.c}, {"d", hyper.d}};
}

inline Hyperparams hyperparams_from_json(const nlohmann::json& j) {
    Hyperparams hyper;
    hyper.a = j.value("a", hyper.a);
    hyper.b = j.value("b", hyper.b);
    hyper.c = j.value("c", hyper.c);
    hyper.d = j.value("d", hyper.d);
    return hyper;
}

inline nlohmann::json to_json(const VbOptions& options) {
    return {{"hyper", to_json(options.hyper)},
            {"max_iter", options.max_iter},
            {"tol", options.tol}};
}

inline VbOptions vb_options_from_json(const nlohmann::json& j) {
    VbOptions options;
    if (j.contains("hyper")) options.hyper = hyperparams_from_json(j.at("hyper"));
    options.max_iter = j.value("max_iter", options.max_iter);
    options.tol = j.value("tol", options.tol);
    return options;
}

// ---------------------------------------------------------------------------
// Plot-data CSV.
// ---------------------------------------------------------------------------

/// Spectrum CSV: grid_frequency, power, alpha_expect — one row per grid point.
inline std::string emit_spectrum_csv(const SpectrumEstimate& estimate) {
    std::string csv = "grid_frequency,power,alpha_expect\n";
    for (int i = 0; i < estimate.grid_n; ++i) {
        csv += format_sig9(static_cast<double>(i) / estimate.grid_n);
        csv += ',';
        csv += format_sig9(estimate.grid_power(i));
        csv += ',';
        csv += format_sig9(estimate.alpha_expect.size() == estimate.grid_n
                               ? estimate.alpha_expect(i)
                               : 0.0);
        csv += '\n';
    }
    return csv;
}

/// RIP CSV: k, avg_max, avg_min, extreme_max, extreme_min.
inline std::string emit_rip_csv(const RipReport& report) {
    std::string csv = "k,avg_max,avg_min,extreme_max,extreme_min\n";
    for (std::size_t i = 0; i < report.k_range.size(); ++i) {
        csv += std::to_string(report.k_range[i]);
        csv += ',';
        csv += format_sig9(report.avg_max_eig[i]);
        csv += ',';
        csv += format_sig9(report.avg_min_eig[i]);
        csv += ',';
        csv += format_sig9(report.extreme_max_eig[i]);
        csv += ',';
        csv += format_sig9(report.extreme_min_eig[i]);
        csv += '\n';
    }
    return csv;
}

} // namespace lse
