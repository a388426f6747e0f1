#pragma once

// End-to-end experiment drivers: seeded Monte-Carlo success-probability
// sweeps over SNR (success-curve experiments), and per-L power-spectrum
// demos (multitask-benefit panels).  Everything is deterministic given the
// master seed: each trial derives its seed as a pure function of
// (master seed, method, snr, trial index), so adding a method or an SNR point
// never perturbs the other streams.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lse/baselines.hpp"
#include "lse/rng.hpp"
#include "lse/sampling.hpp"
#include "lse/serialize.hpp"
#include "lse/signal_model.hpp"
#include "lse/vb_estimator.hpp"

#ifndef LSE_VERSION
#define LSE_VERSION "1.0.0"
#endif

namespace lse {

enum class Method { proposed, music, random_cs };

inline std::string_view method_name(Method method) {
    switch (method) {
        case Method::proposed: return "proposed";
        case Method::music: return "music";
        case Method::random_cs: return "random-cs";
    }
    throw std::invalid_argument("unknown method");
}

inline Method parse_method(std::string_view name) {
    if (name == "proposed") return Method::proposed;
    if (name == "music") return Method::music;
    if (name == "random-cs" || name == "random_cs") return Method::random_cs;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected proposed | music | random-cs)");
}

/// How each trial draws its component frequencies.
struct FrequencyPolicy {
    std::vector<double> fixed;     ///< non-empty: use exactly these every trial
    double min_separation = 0.02;  ///< random draws: pairwise circular floor
    bool on_grid = true;           ///< random draws: snap to the grid

    bool is_random() const noexcept { return fixed.empty(); }
};

/// How each trial draws its complex amplitudes (phases are always uniform).
struct AmplitudePolicy {
    std::vector<double> fixed_moduli;  ///< non-empty: per-component moduli
    double modulus_min = 0.5;          ///< otherwise uniform in [min, max]
    double modulus_max = 1.5;
};

/// Per-(method, snr) success statistics.
struct SuccessPoint {
    std::string method;
    double snr_db = 0.0;
    double success_rate = 0.0;
    int trials = 0;
    double mean_runtime_sec = 0.0;

    friend bool operator==(const SuccessPoint&, const SuccessPoint&) = default;
};

struct SuccessCurve {
    std::vector<SuccessPoint> points;

    friend bool operator==(const SuccessCurve&, const SuccessCurve&) = default;

    void validate(int expected_trials = -1) const {
        for (const SuccessPoint& point : points) {
            if (point.success_rate < 0.0 || point.success_rate > 1.0) {
                throw std::invalid_argument("success rate outside [0, 1]");
            }
            if (expected_trials >= 0 && point.trials != expected_trials) {
                throw std::invalid_argument("success point trial count mismatch");
            }
        }
    }
};

/// Monte-Carlo sweep configuration.
struct ExperimentConfig {
    CoprimeScheme scheme;
    int grid_n = 100;              ///< N
    int window_len = 0;            ///< M; 0 = auto via max_valid_window
    int task_count = 30;           ///< L
    int component_count = 3;       ///< K
    std::vector<double> snr_db = {20.0};
    int trials = 100;
    FrequencyPolicy frequencies;
    AmplitudePolicy amplitudes;
    std::uint64_t seed = 1;
    std::vector<Method> methods = {Method::proposed};
    std::string output_dir;        ///< empty: compute only, write nothing
    VbOptions solver;
    RandomSamplingMode random_mode = RandomSamplingMode::independent_windows;
    bool measure_runtime = false;  ///< off by default so emitted CSV bytes are
                                   ///< a pure function of the config

    int effective_window() const {
        return window_len > 0 ? window_len
                              : max_valid_window(scheme, grid_n, task_count);
    }

    /// Throws on hard errors; returns human-readable warnings for soft ones.
    std::vector<std::string> validate() const {
        scheme.validate();
        solver.validate();
        if (grid_n < 2) throw std::invalid_argument("experiment needs N >= 2");
        if (task_count < 1) throw std::invalid_argument("experiment needs L >= 1");
        if (trials < 1) throw std::invalid_argument("experiment needs trials >= 1");
        if (component_count < 1) throw std::invalid_argument("experiment needs K >= 1");
        if (methods.empty()) throw std::invalid_argument("experiment needs at least one method");
        if (snr_db.empty()) throw std::invalid_argument("experiment needs at least one SNR");
        if (window_len < 0 || window_len > grid_n) {
            throw std::invalid_argument("experiment needs 0 <= M <= N");
        }
        if (!frequencies.fixed.empty() &&
            static_cast<int>(frequencies.fixed.size()) != component_count) {
            throw std::invalid_argument("fixed frequency list must have K entries");
        }
        if (!amplitudes.fixed_moduli.empty() &&
            static_cast<int>(amplitudes.fixed_moduli.size()) != component_count) {
            throw std::invalid_argument("fixed moduli list must have K entries");
        }
        if (amplitudes.fixed_moduli.empty() &&
            !(amplitudes.modulus_min > 0.0 && amplitudes.modulus_max >= amplitudes.modulus_min)) {
            throw std::invalid_argument("amplitude modulus range must satisfy 0 < min <= max");
        }

        std::vector<std::string> warnings;
        if (scheme.two_ratio()) {
            warnings.push_back("two-ratio scheme " + scheme.to_string() +
                               ": index sets are sparser and windows shorter than with "
                               "three coprime ratios");
        }
        for (std::size_t i = 0; i < frequencies.fixed.size(); ++i) {
            for (std::size_t j = i + 1; j < frequencies.fixed.size(); ++j) {
                const double dist =
                    circular_distance(frequencies.fixed[i], frequencies.fixed[j]);
                if (dist < 2.0 / grid_n) {
                    warnings.push_back(
                        "fixed frequencies " + format_double(frequencies.fixed[i]) + " and " +
                        format_double(frequencies.fixed[j]) + " are separated by " +
                        format_double(dist) + " < 2/N; adjacent-bin peaks may merge");
                }
            }
        }
        return warnings;
    }
};

/// Success criterion: every estimated frequency matches a distinct true one
/// within 0.5/N circular distance, under the best possible pairing (optimal
/// assignment, brute-forced over permutations — sizes are small).  A count
/// mismatch is a caller error, not an estimation failure.
inline bool is_success(const std::vector<double>& true_freqs,
                       const std::vector<double>& est_freqs, int grid_n) {
    if (true_freqs.size() != est_freqs.size()) {
        throw std::invalid_argument("is_success needs equally many true and estimated values");
    }
    if (grid_n < 1) throw std::invalid_argument("is_success needs N >= 1");
    const std::size_t k = true_freqs.size();
    if (k == 0) return true;
    if (k > 9) throw std::invalid_argument("is_success supports at most 9 components");

    // The boundary |est - true| == 0.5/N counts as success.  Distances that
    // are exactly on the boundary in real arithmetic (e.g. 0.995 vs 0.99) can
    // land a few ulps above it in doubles, so the comparison carries an
    // epsilon that is negligible against any practical tolerance.
    const double tolerance = 0.5 / grid_n + 1e-12;
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    do {
        bool all_close = true;
        for (std::size_t i = 0; i < k && all_close; ++i) {
            all_close = circular_distance(true_freqs[i], est_freqs[order[i]]) <= tolerance;
        }
        if (all_close) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

namespace detail {

/// One trial's planted spectrum under the configured policies.
inline LineSpectrum draw_trial_spectrum(const ExperimentConfig& cfg, std::uint64_t seed) {
    SplitMix64 rng(seed);
    LineSpectrum spectrum;

    if (cfg.frequencies.is_random()) {
        RandomSpectrumConfig random_cfg;
        random_cfg.component_count = cfg.component_count;
        random_cfg.grid_n = cfg.grid_n;
        random_cfg.min_separation = cfg.frequencies.min_separation;
        random_cfg.on_grid = cfg.frequencies.on_grid;
        random_cfg.amp_min = cfg.amplitudes.modulus_min;
        random_cfg.amp_max = cfg.amplitudes.modulus_max;
        random_cfg.seed = rng.next();
        spectrum = random_spectrum(random_cfg);
        if (!cfg.amplitudes.fixed_moduli.empty()) {
            for (std::size_t i = 0; i < spectrum.amps.size(); ++i) {
                spectrum.amps[i] *= cfg.amplitudes.fixed_moduli[i] / std::abs(spectrum.amps[i]);
            }
        }
        return spectrum;
    }

    spectrum.freqs = cfg.frequencies.fixed;
    for (int i = 0; i < cfg.component_count; ++i) {
        const double modulus =
            cfg.amplitudes.fixed_moduli.empty()
                ? cfg.amplitudes.modulus_min +
                      (cfg.amplitudes.modulus_max - cfg.amplitudes.modulus_min) *
                          rng.next_double()
                : cfg.amplitudes.fixed_moduli[static_cast<std::size_t>(i)];
        const double phase = 2.0 * std::numbers::pi * rng.next_double();
        spectrum.amps.emplace_back(modulus * std::cos(phase), modulus * std::sin(phase));
    }
    spectrum.validate();
    return spectrum;
}

/// One method's frequency estimate for one trial.
inline std::vector<double> run_trial_method(const ExperimentConfig& cfg, Method method,
                                            const LineSpectrum& spectrum,
                                            double noise_variance, std::uint64_t method_seed,
                                            int window_len, SensingCache* cache) {
    const int total = cfg.task_count + window_len - 1;
    switch (method) {
        case Method::proposed: {
            const std::vector<long long> indices =
                first_indices(cfg.scheme, static_cast<std::size_t>(total));
            const SampleRecord record =
                synthesize(spectrum, indices, noise_variance, mix_seed(method_seed, 1));
            const TaskSet tasks = build_tasks(record, window_len, cfg.task_count, cfg.grid_n);
            const SpectrumEstimate estimate = run(tasks, cfg.solver, cache);
            return extract_peak_frequencies(estimate, cfg.component_count);
        }
        case Method::music: {
            std::vector<long long> indices(static_cast<std::size_t>(total));
            for (int i = 0; i < total; ++i) indices[static_cast<std::size_t>(i)] = 1 + i;
            const SampleRecord record =
                synthesize(spectrum, indices, noise_variance, mix_seed(method_seed, 1));
            MusicConfig music_cfg;
            music_cfg.grid_n = cfg.grid_n;
            music_cfg.component_count = cfg.component_count;
            return music_estimate(record.values, music_cfg);
        }
        case Method::random_cs: {
            SplitMix64 noise_rng(mix_seed(method_seed, 1));
            const SignalOracle oracle = [&](long long t) {
                return spectrum_value_at(spectrum, static_cast<double>(t)) +
                       noise_rng.next_complex_gaussian(noise_variance);
            };
            // No cache: random window patterns never repeat across trials, so
            // caching them would only grow memory for the whole sweep.
            const SpectrumEstimate estimate = random_sampling_estimate(
                oracle, window_len, cfg.task_count, cfg.grid_n, cfg.solver,
                mix_seed(method_seed, 2), cfg.random_mode, nullptr);
            return extract_peak_frequencies(estimate, cfg.component_count);
        }
    }
    throw std::invalid_argument("unknown method");
}

} // namespace detail

/// Success-curve CSV: method, snr_db, success_rate, trials, mean_runtime_sec.
/// Shortest round-trip float formatting so parse(emit(curve)) == curve.
inline std::string emit_success_curve_csv(const SuccessCurve& curve) {
    std::string csv = "method,snr_db,success_rate,trials,mean_runtime_sec\n";
    for (const SuccessPoint& point : curve.points) {
        csv += point.method;
        csv += ',';
        csv += format_double(point.snr_db);
        csv += ',';
        csv += format_double(point.success_rate);
        csv += ',';
        csv += std::to_string(point.trials);
        csv += ',';
        csv += format_double(point.mean_runtime_sec);
        csv += '\n';
    }
    return csv;
}

inline SuccessCurve parse_success_curve_csv(const std::string& csv) {
    std::istringstream stream(csv);
    std::string line;
    if (!std::getline(stream, line) || line != "method,snr_db,success_rate,trials,mean_runtime_sec") {
        throw std::invalid_argument("success curve CSV: bad or missing header");
    }
    SuccessCurve curve;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::invalid_argument("success curve CSV: expected 5 fields per row");
        }
        SuccessPoint point;
        point.method = fields[0];
        point.snr_db = parse_double(fields[1]);
        point.success_rate = parse_double(fields[2]);
        point.trials = std::stoi(fields[3]);
        point.mean_runtime_sec = parse_double(fields[4]);
        curve.points.push_back(std::move(point));
    }
    curve.validate();
    return curve;
}

inline nlohmann::json to_json(const ExperimentConfig& cfg);

/// Monte-Carlo sweep result: the success curve plus any per-trial errors
/// (which count as failures but never abort the sweep).
struct MonteCarloResult {
    SuccessCurve curve;
    std::vector<std::string> trial_errors;
    std::vector<std::string> warnings;
};

/// Runs the full (method x snr x trial) sweep.  Per-trial seeds derive purely
/// from (master seed, method, snr, trial); the planted spectrum additionally
/// uses a method-independent stream so every method faces the same spectra.
/// Writes success_curve.csv and manifest.json into cfg.output_dir when set.
inline MonteCarloResult run_monte_carlo_detailed(const ExperimentConfig& cfg) {
    MonteCarloResult result;
    result.warnings = cfg.validate();
    const int window_len = cfg.effective_window();
    SensingCache cache;

    for (const Method method : cfg.methods) {
        for (const double snr : cfg.snr_db) {
            int successes = 0;
            double runtime_total = 0.0;
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const LineSpectrum spectrum = detail::draw_trial_spectrum(
                    cfg, trial_seed(cfg.seed, "spectrum", snr, trial));
                const double noise_variance = noise_variance_for_snr(spectrum, snr);
                const std::uint64_t method_seed =
                    trial_seed(cfg.seed, method_name(method), snr, trial);
                try {
                    const auto start = std::chrono::steady_clock::now();
                    const std::vector<double> estimated = detail::run_trial_method(
                        cfg, method, spectrum, noise_variance, method_seed, window_len,
                        &cache);
                    if (cfg.measure_runtime) {
                        runtime_total +=
                            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                          start)
                                .count();
                    }
                    successes += is_success(spectrum.freqs, estimated, cfg.grid_n) ? 1 : 0;
                } catch (const std::exception& error) {
                    result.trial_errors.push_back(
                        std::string(method_name(method)) + " snr=" + format_double(snr) +
                        " trial=" + std::to_string(trial) + ": " + error.what());
                }
            }
            SuccessPoint point;
            point.method = std::string(method_name(method));
            point.snr_db = snr;
            point.success_rate = static_cast<double>(successes) / cfg.trials;
            point.trials = cfg.trials;
            point.mean_runtime_sec = cfg.measure_runtime ? runtime_total / cfg.trials : 0.0;
            result.curve.points.push_back(std::move(point));
        }
    }
    result.curve.validate(cfg.trials);

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        const std::filesystem::path dir(cfg.output_dir);
        write_text_file((dir / "success_curve.csv").string(),
                        emit_success_curve_csv(result.curve));
        nlohmann::json manifest = {{"version", std::string("lse ") + LSE_VERSION},
                                   {"config", to_json(cfg)}};
        write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    }
    return result;
}

inline SuccessCurve run_monte_carlo(const ExperimentConfig& cfg) {
    return run_monte_carlo_detailed(cfg).curve;
}

/// Spectrum-demo configuration: the base experiment (fixed frequencies, one
/// SNR) evaluated at several task counts L.
struct SpectrumDemoConfig {
    ExperimentConfig base;
    std::vector<int> task_counts;
};

struct SpectrumDemoPanel {
    Method method = Method::proposed;
    int task_count = 0;
    SpectrumEstimate estimate;
    std::vector<double> peak_freqs;   ///< top-K peaks of this panel
};

/// Reproduces the per-L power-spectrum panels: one spectrum per (method, L).
/// All panels of a method share one synthesized record (sliced to the first
/// L+M-1 samples), so growing L genuinely means "more windows of the same
/// acquisition".  Writes spectrum_<method>_L<L>.csv per panel when
/// output_dir is set.
inline std::vector<SpectrumDemoPanel> run_spectrum_demo(const SpectrumDemoConfig& cfg) {
    if (cfg.task_counts.empty()) {
        throw std::invalid_argument("spectrum demo needs a non-empty L list");
    }
    if (cfg.base.frequencies.is_random()) {
        throw std::invalid_argument("spectrum demo needs a fixed frequency list");
    }
    if (cfg.base.snr_db.size() != 1) {
        throw std::invalid_argument("spectrum demo needs exactly one SNR value");
    }
    for (const int task_count : cfg.task_counts) {
        if (task_count < 1) throw std::invalid_argument("spectrum demo needs L >= 1");
    }
    ExperimentConfig base = cfg.base;
    base.task_count = *std::max_element(cfg.task_counts.begin(), cfg.task_counts.end());
    base.validate();

    const double snr = base.snr_db.front();
    const int window_len = base.effective_window();
    const int max_total = base.task_count + window_len - 1;
    const LineSpectrum spectrum =
        detail::draw_trial_spectrum(base, trial_seed(base.seed, "spectrum", snr, 0));
    const double noise_variance = noise_variance_for_snr(spectrum, snr);
    SensingCache cache;

    std::vector<SpectrumDemoPanel> panels;
    for (const Method method : base.methods) {
        const std::uint64_t method_seed = trial_seed(base.seed, method_name(method), snr, 0);
        for (const int task_count : cfg.task_counts) {
            SpectrumDemoPanel panel;
            panel.method = method;
            panel.task_count = task_count;
            switch (method) {
                case Method::proposed: {
                    const std::vector<long long> indices =
                        first_indices(base.scheme, static_cast<std::size_t>(max_total));
                    const SampleRecord record = synthesize(spectrum, indices, noise_variance,
                                                           mix_seed(method_seed, 1));
                    const TaskSet tasks =
                        build_tasks(record, window_len, task_count, base.grid_n);
                    panel.estimate = run(tasks, base.solver, &cache);
                    break;
                }
                case Method::music: {
                    const int total = task_count + window_len - 1;
                    std::vector<long long> indices(static_cast<std::size_t>(total));
                    for (int i = 0; i < total; ++i) indices[static_cast<std::size_t>(i)] = 1 + i;
                    const SampleRecord record = synthesize(spectrum, indices, noise_variance,
                                                           mix_seed(method_seed, 1));
                    MusicConfig music_cfg;
                    music_cfg.grid_n = base.grid_n;
                    music_cfg.component_count = base.component_count;
                    panel.estimate.grid_n = base.grid_n;
                    panel.estimate.grid_power = music_pseudospectrum(record.values, music_cfg);
                    panel.estimate.alpha_expect = Eigen::VectorXd::Zero(base.grid_n);
                    panel.estimate.converged = true;
                    break;
                }
                case Method::random_cs: {
                    SplitMix64 noise_rng(mix_seed(method_seed, task_count));
                    const SignalOracle oracle = [&](long long t) {
                        return spectrum_value_at(spectrum, static_cast<double>(t)) +
                               noise_rng.next_complex_gaussian(noise_variance);
                    };
                    panel.estimate = random_sampling_estimate(
                        oracle, window_len, task_count, base.grid_n, base.solver,
                        mix_seed(method_seed, 1000 + task_count), base.random_mode, nullptr);
                    break;
                }
            }
            SpectrumEstimate shim;
            shim.grid_n = panel.estimate.grid_n;
            shim.grid_power = panel.estimate.grid_power;
            panel.peak_freqs = extract_peak_frequencies(shim, base.component_count);
            panels.push_back(std::move(panel));
        }
    }

    if (!base.output_dir.empty()) {
        std::filesystem::create_directories(base.output_dir);
        const std::filesystem::path dir(base.output_dir);
        for (const SpectrumDemoPanel& panel : panels) {
            const std::string name = "spectrum_" + std::string(method_name(panel.method)) +
                                     "_L" + std::to_string(panel.task_count) + ".csv";
            write_text_file((dir / name).string(), emit_spectrum_csv(panel.estimate));
        }
        nlohmann::json manifest = {{"version", std::string("lse ") + LSE_VERSION},
                                   {"config", to_json(base)},
                                   {"task_counts", cfg.task_counts}};
        write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    }
    return panels;
}

// ---------------------------------------------------------------------------
// Config JSON (schema_version 1).
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ExperimentConfig& cfg) {
    nlohmann::json scheme = {{"p", cfg.scheme.p}, {"q", cfg.scheme.q}};
    if (cfg.scheme.r) scheme["r"] = *cfg.scheme.r;
    nlohmann::json methods = nlohmann::json::array();
    for (const Method method : cfg.methods) methods.push_back(std::string(method_name(method)));
    return {{"schema_version", 1},
            {"scheme", std::move(scheme)},
            {"grid_n", cfg.grid_n},
            {"window_len", cfg.window_len},
            {"task_count", cfg.task_count},
            {"component_count", cfg.component_count},
            {"snr_db", cfg.snr_db},
            {"trials", cfg.trials},
            {"frequencies",
             {{"fixed", cfg.frequencies.fixed},
              {"min_separation", cfg.frequencies.min_separation},
              {"on_grid", cfg.frequencies.on_grid}}},
            {"amplitudes",
             {{"fixed_moduli", cfg.amplitudes.fixed_moduli},
              {"modulus_min", cfg.amplitudes.modulus_min},
              {"modulus_max", cfg.amplitudes.modulus_max}}},
            {"seed", cfg.seed},
            {"methods", std::move(methods)},
            {"output_dir", cfg.output_dir},
            {"solver", to_json(cfg.solver)},
            {"random_mode", cfg.random_mode == RandomSamplingMode::shared_pool
                                ? "shared-pool"
                                : "independent-windows"},
            {"measure_runtime", cfg.measure_runtime}};
}

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    if (j.value("schema_version", 1) != 1) {
        throw std::invalid_argument("unsupported config schema_version");
    }
    ExperimentConfig cfg;
    if (j.contains("scheme")) {
        const nlohmann::json& scheme = j.at("scheme");
        cfg.scheme.p = scheme.value("p", cfg.scheme.p);
        cfg.scheme.q = scheme.value("q", cfg.scheme.q);
        if (scheme.contains("r") && !scheme.at("r").is_null()) {
            cfg.scheme.r = scheme.at("r").get<int>();
        } else {
            cfg.scheme.r.reset();
        }
    }
    cfg.grid_n = j.value("grid_n", cfg.grid_n);
    if (j.contains("window_len")) {
        const nlohmann::json& window = j.at("window_len");
        cfg.window_len = window.is_string() ? 0 : window.get<int>();  // "auto" -> 0
    }
    cfg.task_count = j.value("task_count", cfg.task_count);
    cfg.component_count = j.value("component_count", cfg.component_count);
    cfg.snr_db = j.value("snr_db", cfg.snr_db);
    cfg.trials = j.value("trials", cfg.trials);
    if (j.contains("frequencies")) {
        const nlohmann::json& freq = j.at("frequencies");
        cfg.frequencies.fixed = freq.value("fixed", cfg.frequencies.fixed);
        cfg.frequencies.min_separation =
            freq.value("min_separation", cfg.frequencies.min_separation);
        cfg.frequencies.on_grid = freq.value("on_grid", cfg.frequencies.on_grid);
    }
    if (j.contains("amplitudes")) {
        const nlohmann::json& amp = j.at("amplitudes");
        cfg.amplitudes.fixed_moduli = amp.value("fixed_moduli", cfg.amplitudes.fixed_moduli);
        cfg.amplitudes.modulus_min = amp.value("modulus_min", cfg.amplitudes.modulus_min);
        cfg.amplitudes.modulus_max = amp.value("modulus_max", cfg.amplitudes.modulus_max);
    }
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& name : j.at("methods")) {
            cfg.methods.push_back(parse_method(name.get<std::string>()));
        }
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    if (j.contains("solver")) cfg.solver = vb_options_from_json(j.at("solver"));
    const std::string mode = j.value("random_mode", std::string("independent-windows"));
    if (mode == "shared-pool") {
        cfg.random_mode = RandomSamplingMode::shared_pool;
    } else if (mode == "independent-windows") {
        cfg.random_mode = RandomSamplingMode::independent_windows;
    } else {
        throw std::invalid_argument("unknown random_mode '" + mode + "'");
    }
    cfg.measure_runtime = j.value("measure_runtime", cfg.measure_runtime);
    return cfg;
}

} // namespace lse
