// Command-line front end for the line-spectrum estimation library.
//
//   lse plan           inspect a coprime sampling scheme (indices, window table)
//   lse synthesize     generate a sampled record as JSON
//   lse estimate       run the multitask VB estimator on a record
//   lse baseline       run a reference method (music | random-cs)
//   lse rip            sample sub-Gram eigenvalue statistics to CSV
//   lse montecarlo     seeded success-probability sweep over SNR
//   lse spectrum-demo  per-L power spectrum panels
//
// Exit code 0 on success; 1 on configuration or numerical errors; CLI11's
// own codes for flag-parsing errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lse/lse.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) values.push_back(lse::parse_double(item));
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (const double v : parse_double_list(text)) values.push_back(static_cast<int>(v));
    return values;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& warning : warnings) std::cerr << "warning: " << warning << "\n";
}

void warn_two_ratio(const lse::CoprimeScheme& scheme) {
    if (scheme.two_ratio()) {
        std::cerr << "warning: two-ratio scheme " << scheme.to_string()
                  << ": index sets are sparser and valid windows shorter than with three"
                     " coprime ratios\n";
    }
}

struct SchemeFlags {
    int p = 9;
    int q = 10;
    int r = 11;   // 0 = two-ratio scheme

    lse::CoprimeScheme scheme() const {
        lse::CoprimeScheme s;
        s.p = p;
        s.q = q;
        if (r > 0) {
            s.r = r;
        } else {
            s.r.reset();
        }
        s.validate();
        return s;
    }

    void attach(CLI::App* app) {
        app->add_option("--p", p, "first coprime ratio");
        app->add_option("--q", q, "second coprime ratio");
        app->add_option("--r", r, "third coprime ratio (0 for a two-ratio scheme)");
    }
};

lse::LineSpectrum spectrum_from_flags(const std::string& freqs_text,
                                      const std::string& moduli_text,
                                      const std::string& phases_text, std::uint64_t seed) {
    lse::LineSpectrum spectrum;
    spectrum.freqs = parse_double_list(freqs_text);
    const std::vector<double> moduli = parse_double_list(moduli_text);
    const std::vector<double> phases = parse_double_list(phases_text);
    if (moduli.size() != spectrum.freqs.size()) {
        throw std::runtime_error("--moduli must list one modulus per frequency");
    }
    if (!phases.empty() && phases.size() != spectrum.freqs.size()) {
        throw std::runtime_error("--phases must list one phase per frequency (or be omitted)");
    }
    lse::SplitMix64 rng(seed);
    for (std::size_t k = 0; k < moduli.size(); ++k) {
        const double phase =
            phases.empty() ? 2.0 * std::numbers::pi * rng.next_double() : phases[k];
        spectrum.amps.emplace_back(moduli[k] * std::cos(phase), moduli[k] * std::sin(phase));
    }
    spectrum.validate();
    return spectrum;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        lse::write_text_file(path, content);
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"line spectral estimation from coprime sub-Nyquist samples"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "master seed")->capture_default_str();

    // ---- plan ------------------------------------------------------------
    auto* plan = app.add_subcommand("plan", "inspect a coprime sampling scheme");
    SchemeFlags plan_scheme;
    plan_scheme.attach(plan);
    int plan_n = 100, plan_l = 30, plan_first = 10;
    long long plan_horizon = 0;
    plan->add_option("--grid-n", plan_n, "frequency grid size N")->capture_default_str();
    plan->add_option("--tasks", plan_l, "number of sliding windows L")->capture_default_str();
    plan->add_option("--first", plan_first, "how many leading indices to list")
        ->capture_default_str();
    plan->add_option("--horizon", plan_horizon,
                     "also report the index count below this horizon");

    // ---- synthesize --------------------------------------------------------
    auto* synth = app.add_subcommand("synthesize", "generate a sampled record as JSON");
    SchemeFlags synth_scheme;
    synth_scheme.attach(synth);
    std::string synth_freqs = "0.178,0.353,0.372";
    std::string synth_moduli = "0.2,0.4,0.8";
    std::string synth_phases;
    double synth_snr = 20.0;
    int synth_count = 56;
    bool synth_consecutive = false;
    std::string synth_out;
    synth->add_option("--freqs", synth_freqs, "comma-separated frequencies in [0,1)")
        ->capture_default_str();
    synth->add_option("--moduli", synth_moduli, "comma-separated amplitude moduli")
        ->capture_default_str();
    synth->add_option("--phases", synth_phases,
                      "comma-separated phases in radians (default: random)");
    synth->add_option("--snr-db", synth_snr, "signal-to-noise ratio in dB (inf = noiseless)")
        ->capture_default_str();
    synth->add_option("--count", synth_count, "number of samples (L+M-1)")
        ->capture_default_str();
    synth->add_flag("--consecutive", synth_consecutive,
                    "sample at consecutive integers instead of the coprime set");
    synth->add_option("--out", synth_out, "output JSON path (default: stdout)");

    // ---- estimate ----------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "multitask VB spectrum estimate");
    SchemeFlags est_scheme;
    est_scheme.attach(est);
    std::string est_input;
    int est_n = 100, est_m = 0, est_l = 30, est_iter = 200, est_k = 3;
    double est_tol = 1e-6;
    lse::Hyperparams est_hyper;
    std::string est_out_json, est_out_csv;
    est->add_option("--input", est_input, "sample record JSON")->required();
    est->add_option("--grid-n", est_n, "frequency grid size N")->capture_default_str();
    est->add_option("--window", est_m, "window length M (0 = auto)")->capture_default_str();
    est->add_option("--tasks", est_l, "number of sliding windows L")->capture_default_str();
    est->add_option("--max-iter", est_iter, "iteration cap")->capture_default_str();
    est->add_option("--tol", est_tol, "relative bound-change stop")->capture_default_str();
    est->add_option("--a", est_hyper.a, "alpha prior shape")->capture_default_str();
    est->add_option("--b", est_hyper.b, "alpha prior rate")->capture_default_str();
    est->add_option("--c", est_hyper.c, "beta prior shape")->capture_default_str();
    est->add_option("--d", est_hyper.d, "beta prior rate")->capture_default_str();
    est->add_option("--peaks", est_k, "how many peaks to report")->capture_default_str();
    est->add_option("--out-json", est_out_json, "estimate JSON path");
    est->add_option("--out-csv", est_out_csv, "spectrum CSV path");

    // ---- baseline ----------------------------------------------------------
    auto* base = app.add_subcommand("baseline", "reference methods (music | random-cs)");
    std::string base_method = "music";
    std::string base_input;
    std::string base_freqs, base_moduli;
    double base_snr = 20.0;
    int base_n = 100, base_m = 0, base_l = 30, base_k = 3, base_subarray = 0;
    bool base_shared_pool = false;
    std::string base_out_json, base_out_csv;
    SchemeFlags base_scheme;
    base_scheme.attach(base);
    base->add_option("--method", base_method, "music | random-cs")->capture_default_str();
    base->add_option("--input", base_input, "sample record JSON (music)");
    base->add_option("--freqs", base_freqs, "spectrum for random-cs synthesis");
    base->add_option("--moduli", base_moduli, "moduli for random-cs synthesis");
    base->add_option("--snr-db", base_snr, "SNR for random-cs synthesis")
        ->capture_default_str();
    base->add_option("--grid-n", base_n, "frequency grid size N")->capture_default_str();
    base->add_option("--window", base_m, "window length M (0 = auto)")->capture_default_str();
    base->add_option("--tasks", base_l, "number of windows L")->capture_default_str();
    base->add_option("--components", base_k, "model order K")->capture_default_str();
    base->add_option("--subarray", base_subarray, "MUSIC subarray length (0 = default)")
        ->capture_default_str();
    base->add_flag("--shared-pool", base_shared_pool,
                   "random-cs: share one L+M-1 index pool across windows");
    base->add_option("--out-json", base_out_json, "estimate JSON path");
    base->add_option("--out-csv", base_out_csv, "spectrum CSV path");

    // ---- rip ---------------------------------------------------------------
    auto* rip = app.add_subcommand("rip", "sub-Gram eigenvalue statistics CSV");
    SchemeFlags rip_scheme;
    rip_scheme.attach(rip);
    int rip_n = 100, rip_m = 0, rip_l = 30, rip_kmin = 2, rip_kmax = 12;
    std::string rip_dir = ".";
    rip->add_option("--grid-n", rip_n, "frequency grid size N")->capture_default_str();
    rip->add_option("--window", rip_m, "window length M (0 = auto)")->capture_default_str();
    rip->add_option("--tasks", rip_l, "L used when M is auto")->capture_default_str();
    rip->add_option("--k-min", rip_kmin, "smallest sparsity")->capture_default_str();
    rip->add_option("--k-max", rip_kmax, "largest sparsity")->capture_default_str();
    rip->add_option("--out-dir", rip_dir, "output directory")->capture_default_str();

    // ---- montecarlo ----------------------------------------------------------
    auto* monte = app.add_subcommand("montecarlo", "success-probability sweep");
    std::string monte_config;
    std::string monte_methods, monte_snr, monte_out;
    int monte_trials = -1;
    bool monte_seed_set = false;
    monte->add_option("--config", monte_config, "experiment config JSON");
    monte->add_option("--methods", monte_methods, "override method list, e.g. proposed,music");
    monte->add_option("--snr", monte_snr, "override SNR list, e.g. 10,15,20");
    monte->add_option("--trials", monte_trials, "override trial count");
    monte->add_option("--out-dir", monte_out, "override output directory");
    monte->add_flag("--use-seed", monte_seed_set, "override config seed with --seed");

    // ---- spectrum-demo -------------------------------------------------------
    auto* demo = app.add_subcommand("spectrum-demo", "per-L power spectrum panels");
    std::string demo_config;
    std::string demo_l_list = "1,10,30";
    std::string demo_out;
    demo->add_option("--config", demo_config, "experiment config JSON (fixed frequencies)");
    demo->add_option("--l-list", demo_l_list, "comma-separated task counts")
        ->capture_default_str();
    demo->add_option("--out-dir", demo_out, "override output directory");

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) {
        const lse::CoprimeScheme scheme = plan_scheme.scheme();
        warn_two_ratio(scheme);
        const std::vector<long long> indices =
            lse::first_indices(scheme, static_cast<std::size_t>(plan_first));
        std::cout << "scheme " << scheme.to_string() << "\nfirst " << plan_first
                  << " indices:";
        for (const long long index : indices) std::cout << ' ' << index;
        const int window = lse::max_valid_window(scheme, plan_n, plan_l);
        std::cout << "\nmax valid window M for N=" << plan_n << ", L=" << plan_l << ": "
                  << window << "\npattern period (indices per lcm block): "
                  << lse::pattern_period(scheme) << "\n";
        if (plan_horizon > 0) {
            std::cout << "indices below " << plan_horizon << ": "
                      << lse::inclusion_exclusion_count(scheme, plan_horizon) << "\n";
        }
        return 0;
    }

    if (synth->parsed()) {
        const lse::LineSpectrum spectrum =
            spectrum_from_flags(synth_freqs, synth_moduli, synth_phases,
                                lse::mix_seed(seed, 0xA11CE));
        const double variance = lse::noise_variance_for_snr(spectrum, synth_snr);
        std::vector<long long> indices;
        if (synth_consecutive) {
            for (int i = 0; i < synth_count; ++i) indices.push_back(1 + i);
        } else {
            const lse::CoprimeScheme scheme = synth_scheme.scheme();
            warn_two_ratio(scheme);
            indices = lse::first_indices(scheme, static_cast<std::size_t>(synth_count));
        }
        const lse::SampleRecord record =
            lse::synthesize(spectrum, indices, variance, lse::mix_seed(seed, 0x5A));
        write_or_print(synth_out, lse::to_json(record).dump(2) + "\n");
        return 0;
    }

    if (est->parsed()) {
        const lse::CoprimeScheme scheme = est_scheme.scheme();
        warn_two_ratio(scheme);
        const lse::SampleRecord record = lse::sample_record_from_json(read_json_file(est_input));
        const int window =
            est_m > 0 ? est_m : lse::max_valid_window(scheme, est_n, est_l);
        lse::VbOptions options;
        options.hyper = est_hyper;
        options.max_iter = est_iter;
        options.tol = est_tol;
        const lse::TaskSet tasks = lse::build_tasks(record, window, est_l, est_n);
        const lse::SpectrumEstimate estimate = lse::run(tasks, options);
        std::cout << "converged=" << (estimate.converged ? "yes" : "no")
                  << " iterations=" << estimate.iterations_used
                  << " noise-variance-estimate=" << lse::format_sig9(1.0 / estimate.beta_expect)
                  << "\npeaks:";
        for (const double f : lse::extract_peak_frequencies(estimate, est_k)) {
            std::cout << ' ' << lse::format_sig9(f);
        }
        std::cout << "\n";
        if (!est_out_json.empty()) {
            lse::write_text_file(est_out_json, lse::to_json(estimate).dump(2) + "\n");
        }
        if (!est_out_csv.empty()) {
            lse::write_text_file(est_out_csv, lse::emit_spectrum_csv(estimate));
        }
        return 0;
    }

    if (base->parsed()) {
        if (base_method == "music") {
            if (base_input.empty()) {
                throw std::runtime_error("music baseline needs --input (consecutive samples)");
            }
            const lse::SampleRecord record =
                lse::sample_record_from_json(read_json_file(base_input));
            lse::MusicConfig config;
            config.subarray_length = base_subarray;
            config.grid_n = base_n;
            config.component_count = base_k;
            lse::SpectrumEstimate shim;
            shim.grid_n = base_n;
            shim.grid_power = lse::music_pseudospectrum(record.values, config);
            shim.alpha_expect = Eigen::VectorXd::Zero(base_n);
            for (const int i : lse::detail::local_maxima_desc(shim.grid_power)) {
                shim.detected.emplace_back(static_cast<double>(i) / base_n,
                                           shim.grid_power(i));
            }
            std::cout << "peaks:";
            for (const double f : lse::music_estimate(record.values, config)) {
                std::cout << ' ' << lse::format_sig9(f);
            }
            std::cout << "\n";
            if (!base_out_json.empty()) {
                lse::write_text_file(base_out_json, lse::to_json(shim).dump(2) + "\n");
            }
            if (!base_out_csv.empty()) {
                lse::write_text_file(base_out_csv, lse::emit_spectrum_csv(shim));
            }
            return 0;
        }
        if (base_method != "random-cs") {
            throw std::runtime_error("unknown baseline method '" + base_method + "'");
        }
        if (base_freqs.empty() || base_moduli.empty()) {
            throw std::runtime_error("random-cs baseline needs --freqs and --moduli");
        }
        const lse::LineSpectrum spectrum = spectrum_from_flags(
            base_freqs, base_moduli, "", lse::mix_seed(seed, 0xA11CE));
        const double variance = lse::noise_variance_for_snr(spectrum, base_snr);
        const lse::CoprimeScheme scheme = base_scheme.scheme();
        const int window =
            base_m > 0 ? base_m : lse::max_valid_window(scheme, base_n, base_l);
        lse::SplitMix64 noise_rng(lse::mix_seed(seed, 0x5A));
        const lse::SignalOracle oracle = [&](long long t) {
            return lse::spectrum_value_at(spectrum, static_cast<double>(t)) +
                   noise_rng.next_complex_gaussian(variance);
        };
        const lse::SpectrumEstimate estimate = lse::random_sampling_estimate(
            oracle, window, base_l, base_n, lse::VbOptions{}, lse::mix_seed(seed, 0x1D),
            base_shared_pool ? lse::RandomSamplingMode::shared_pool
                             : lse::RandomSamplingMode::independent_windows);
        std::cout << "peaks:";
        for (const double f : lse::extract_peak_frequencies(estimate, base_k)) {
            std::cout << ' ' << lse::format_sig9(f);
        }
        std::cout << "\n";
        if (!base_out_json.empty()) {
            lse::write_text_file(base_out_json, lse::to_json(estimate).dump(2) + "\n");
        }
        if (!base_out_csv.empty()) {
            lse::write_text_file(base_out_csv, lse::emit_spectrum_csv(estimate));
        }
        return 0;
    }

    if (rip->parsed()) {
        const lse::CoprimeScheme scheme = rip_scheme.scheme();
        warn_two_ratio(scheme);
        const int window =
            rip_m > 0 ? rip_m : lse::max_valid_window(scheme, rip_n, rip_l);
        std::vector<int> k_range;
        for (int k = rip_kmin; k <= rip_kmax; ++k) k_range.push_back(k);

        const std::vector<long long> indices =
            lse::first_indices(scheme, static_cast<std::size_t>(window));
        std::vector<int> offsets;
        for (const long long index : indices) {
            offsets.push_back(static_cast<int>(index - indices.front()));
        }
        const lse::SensingMatrix deterministic =
            lse::normalize_columns(lse::build_phi(offsets, rip_n));
        const lse::SensingMatrix random = lse::normalize_columns(
            lse::random_partial_fourier(window, rip_n, lse::mix_seed(seed, 0xF0)));

        std::filesystem::create_directories(rip_dir);
        const std::filesystem::path dir(rip_dir);
        lse::write_text_file(
            (dir / "rip_deterministic.csv").string(),
            lse::emit_rip_csv(lse::sample_subgram_eigs(deterministic, k_range, seed)));
        lse::write_text_file(
            (dir / "rip_random.csv").string(),
            lse::emit_rip_csv(lse::sample_subgram_eigs(random, k_range, seed)));
        std::cout << "wrote " << (dir / "rip_deterministic.csv").string() << " and "
                  << (dir / "rip_random.csv").string() << "\n";
        return 0;
    }

    if (monte->parsed()) {
        lse::ExperimentConfig cfg;
        if (!monte_config.empty()) {
            cfg = lse::experiment_config_from_json(read_json_file(monte_config));
        }
        if (!monte_methods.empty()) {
            cfg.methods.clear();
            std::stringstream stream(monte_methods);
            std::string name;
            while (std::getline(stream, name, ',')) {
                if (!name.empty()) cfg.methods.push_back(lse::parse_method(name));
            }
        }
        if (!monte_snr.empty()) cfg.snr_db = parse_double_list(monte_snr);
        if (monte_trials > 0) cfg.trials = monte_trials;
        if (!monte_out.empty()) cfg.output_dir = monte_out;
        if (monte_seed_set) cfg.seed = seed;
        const lse::MonteCarloResult result = lse::run_monte_carlo_detailed(cfg);
        print_warnings(result.warnings);
        for (const std::string& error : result.trial_errors) {
            std::cerr << "trial error: " << error << "\n";
        }
        std::cout << lse::emit_success_curve_csv(result.curve);
        return 0;
    }

    if (demo->parsed()) {
        lse::SpectrumDemoConfig cfg;
        if (!demo_config.empty()) {
            cfg.base = lse::experiment_config_from_json(read_json_file(demo_config));
        } else {
            cfg.base.frequencies.fixed = {0.178, 0.353, 0.372};
            cfg.base.amplitudes.fixed_moduli = {0.2, 0.4, 0.8};
        }
        cfg.task_counts = parse_int_list(demo_l_list);
        if (!demo_out.empty()) cfg.base.output_dir = demo_out;
        const std::vector<lse::SpectrumDemoPanel> panels = lse::run_spectrum_demo(cfg);
        for (const lse::SpectrumDemoPanel& panel : panels) {
            std::cout << lse::method_name(panel.method) << " L=" << panel.task_count
                      << " peaks:";
            for (const double f : panel.peak_freqs) std::cout << ' ' << lse::format_sig9(f);
            std::cout << "\n";
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}
