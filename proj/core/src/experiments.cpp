#include "jrsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jrsim/error.hpp"
#include "jrsim/parallel.hpp"

namespace jrsim {

namespace {

// Dynamics setting: natural units m = c = kappa = 1 on [-20, 20], so
// v0 = 1, delta0 = 1 and lambda = 1 (Theta = Lambda = L = 40).
ScenarioConfig natural_units_dynamics() {
    ScenarioConfig c = default_config();
    c.task = Task::evolve;
    c.units = "natural";
    c.scale = PhysicalScale::centered(1.0, 40.0, 1.0);
    c.n_cells = 4000;
    c.profile = ProfileSpec{ProfileKind::kink, 40.0, 40.0};
    c.evolution = EvolutionSpec{InitialState::gaussian, 1.2, 0.0, 1000, 100, true};
    return c;
}

double window_max(const Spectrum& s, double lo, double hi) {
    double best = 0.0;
    for (const auto& p : s.points) {
        const double x = std::abs(p.delta_omega) / s.meta.delta0;
        if (x >= lo && x <= hi) best = std::max(best, p.t2());
    }
    return best;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{
        "fig3-trapped", "fig3-free",       "fig4a-constant",  "fig4b-kink",         "fig5a-sine",
        "fig5b-noise30", "fig5c-dS20",     "suppl1-dS-sweep", "suppl2-noise-sweep", "zeromode-profile",
    };
    return names;
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.scale = PhysicalScale::centered(17.0, 300.0);
    return c;
}

ScenarioConfig scenario_defaults(const std::string& name) {
    ScenarioConfig c = default_config();
    if (name == "custom") return c;
    if (name == "fig3-trapped") {
        c = natural_units_dynamics();
    } else if (name == "fig3-free") {
        c = natural_units_dynamics();
        c.profile.kind = ProfileKind::constant;
    } else if (name == "fig4a-constant") {
        c.profile.kind = ProfileKind::constant;
    } else if (name == "fig4b-kink") {
        // defaults already describe 0.25 tanh(0.02 z)
    } else if (name == "fig5a-sine") {
        c.profile = ProfileSpec{ProfileKind::sine, 75.0, 3.0};  // 0.25 sin(0.01 z)
    } else if (name == "fig5b-noise30") {
        c.noise = NoiseSpec{0.3, 1, 0.1};
    } else if (name == "fig5c-dS20") {
        c.mode = ScatteringMode::generalized;
        c.mixing_fraction = 0.2;
    } else if (name == "suppl1-dS-sweep") {
        c.task = Task::mixing_sweep;
        c.mode = ScatteringMode::generalized;
        c.mixing_sweep = {0.1, 0.3, 0.4, 0.5};
    } else if (name == "suppl2-noise-sweep") {
        c.task = Task::noise_sweep;
        c.noise = NoiseSpec{0.05, 1, 0.1};
        c.ensemble = EnsembleSpec{50, {0.05, 0.2, 0.4, 0.5}};
    } else if (name == "zeromode-profile") {
        c = natural_units_dynamics();
        c.task = Task::zero_mode;
    } else {
        throw CatalogError("unknown scenario '" + name + "'");
    }
    c.name = name;
    return c;
}

Grid build_grid(const ScenarioConfig& config) { return Grid(config.scale, config.n_cells); }

MassProfile build_profile(const ScenarioConfig& config, std::optional<std::uint64_t> seed) {
    const auto& p = config.profile;
    MassProfile base = [&] {
        switch (p.kind) {
            case ProfileKind::sine: return MassProfile::sine_from_opacity(config.scale, p.theta, p.sharpness);
            case ProfileKind::constant: return MassProfile::constant_from_opacity(config.scale, p.theta);
            case ProfileKind::kink: break;
        }
        return MassProfile::kink_from_opacity(config.scale, p.theta, p.sharpness);
    }();
    if (!config.noise) return base;
    NoiseSpec noise = *config.noise;
    if (seed) noise.seed = *seed;
    return MassProfile::noisy(base, noise);
}

LabeledSpectrum analyze_spectrum(std::string label, Spectrum spectrum) {
    LabeledSpectrum out{std::move(label), std::move(spectrum), {}, {}, 0.0};
    out.peak = midgap_peak(out.spectrum);
    out.edges = gap_edges(out.spectrum);
    out.gap_depth = window_max(out.spectrum, 0.25, 0.75);
    return out;
}

namespace {

Spectrum compute_spectrum(const ScenarioConfig& config, const MassProfile& profile, std::span<const double> freqs) {
    const auto sampled = sample_on_grid(profile, build_grid(config));
    SpectrumMeta meta;
    meta.profile = profile.describe();
    meta.delta0 = profile.amplitude();
    if (config.noise) meta.seed = std::get<NoisyShape>(profile.shape()).noise.seed;
    return spectrum(sampled, freqs, config.scale, MixingAngle(config.mixing_fraction), config.mode, meta);
}

}  // namespace

LabeledSpectrum run_spectrum(const ScenarioConfig& config, std::string label) {
    const auto profile = build_profile(config);
    if (!(profile.amplitude() > 0.0))
        throw ConfigError("profile.theta", "sweeps are expressed in units of delta0, which must be nonzero");
    const auto freqs = config.sweep.frequencies(profile.amplitude());
    return analyze_spectrum(std::move(label), compute_spectrum(config, profile, freqs));
}

RobustnessReport noise_ensemble(const ScenarioConfig& base, double amplitude, std::size_t n_seeds) {
    if (!(amplitude >= 0.0 && amplitude < 1.0)) throw ConfigError("noise.a", "a out of range [0, 1)");
    if (n_seeds == 0) throw ConfigError("ensemble.seeds", "must be positive");
    ScenarioConfig config = base;
    NoiseSpec noise = config.noise.value_or(NoiseSpec{});
    noise.amplitude = amplitude;
    config.noise = noise;

    const double delta0 = build_profile(config, 1).amplitude();
    std::vector<double> window;
    for (double w : config.sweep.frequencies(delta0))
        if (std::abs(w) < 0.5 * delta0) window.push_back(w);
    if (window.empty()) throw DomainError("sweep has no points inside the mid-gap window");

    const MixingAngle angle(config.mixing_fraction);
    const Grid grid = build_grid(config);
    RobustnessReport report;
    report.amplitude = amplitude;
    report.delta0 = delta0;
    report.seeds.resize(n_seeds);
    // Seeds run in parallel; each spectrum then runs serially on its worker.
    parallel_for(n_seeds, [&](std::size_t k) {
        const std::uint64_t seed = k + 1;
        const auto profile = build_profile(config, seed);
        const auto sampled = sample_on_grid(profile, grid);
        SeedResult r;
        r.seed = seed;
        Spectrum s;
        s.meta.delta0 = delta0;
        for (double w : window)
            s.points.push_back(reflect_transmit(total_transfer(sampled, w, config.scale, angle, config.mode), w));
        r.peak = midgap_peak(s);
        const auto oracle = zero_frequency_transmission(sampled, config.scale, angle);
        r.phi = oracle.phi;
        r.oracle_t2 = oracle.t2;
        r.pipeline_t2 = reflect_transmit(total_transfer(sampled, 0.0, config.scale, angle, config.mode)).t2();
        report.seeds[k] = r;
    });

    report.min_peak = INFINITY;
    report.max_peak = -INFINITY;
    double sum = 0.0;
    for (const auto& r : report.seeds) {
        sum += r.peak.t2;
        report.min_peak = std::min(report.min_peak, r.peak.t2);
        report.max_peak = std::max(report.max_peak, r.peak.t2);
        report.max_oracle_deviation = std::max(report.max_oracle_deviation, std::abs(r.pipeline_t2 - r.oracle_t2));
    }
    report.mean_peak = sum / static_cast<double>(n_seeds);
    return report;
}

double slow_light_deviation(const ScenarioConfig& config) {
    ScenarioConfig ideal = config;
    ideal.mode = ScatteringMode::ideal;
    ideal.mixing_fraction = 0.0;
    ScenarioConfig general = ideal;
    general.mode = ScatteringMode::generalized;
    const auto a = run_spectrum(ideal).spectrum;
    const auto b = run_spectrum(general).spectrum;
    double dev = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        dev = std::max(dev, std::abs(a.points[i].t2() - b.points[i].t2()));
    return dev;
}

MixingSweepResult mixing_angle_sweep(const ScenarioConfig& base, std::span<const double> fractions) {
    MixingSweepResult out;
    for (double f : fractions) {
        ScenarioConfig c = base;
        c.mode = ScatteringMode::generalized;
        c.mixing_fraction = MixingAngle(f).fraction();
        out.spectra.push_back(run_spectrum(c, "f=" + format_double(f)));
    }
    out.slow_light_deviation = slow_light_deviation(base);
    return out;
}

DynamicsResult run_evolution(const ScenarioConfig& config, Warnings* warnings) {
    const Grid grid = build_grid(config);
    const auto profile = build_profile(config);
    const auto sampled = sample_on_grid(profile, grid);
    const SpinorField initial =
        config.evolution.initial == InitialState::gaussian
            ? gaussian_spinor(grid, config.evolution.sigma, config.evolution.z0, chirality_spinor(Chirality::plus),
                              warnings)
            : zero_mode_state(profile, grid, config.scale,
                              config.evolution.plus_chirality ? Chirality::plus : Chirality::minus, warnings);
    DynamicsResult out;
    out.trajectory =
        evolve(initial, sampled, config.scale, EvolutionConfig{config.evolution.steps, config.evolution.stride},
               warnings);
    const auto& obs = out.trajectory.observables;
    out.initial_width = obs.front().rms_width;
    out.final_width = obs.back().rms_width;
    out.final_overlap = obs.back().overlap0;
    for (const auto& o : obs) out.max_norm_drift = std::max(out.max_norm_drift, std::abs(o.norm2 - obs.front().norm2));
    return out;
}

ZeroModeResult run_zero_mode(const ScenarioConfig& config, Warnings* warnings) {
    const Grid grid = build_grid(config);
    const auto profile = build_profile(config);
    auto sampled = sample_on_grid(profile, grid);
    auto field = zero_mode_state(profile, grid, config.scale,
                                 config.evolution.plus_chirality ? Chirality::plus : Chirality::minus, warnings);
    const double residual = hamiltonian_residual(field, sampled, config.scale);
    const double width = field.rms_width();
    return ZeroModeResult{std::move(field), std::move(sampled), residual, width};
}

ScenarioResult run_config(const ScenarioConfig& config) {
    validate(config);
    ScenarioResult out;
    out.config = config;
    switch (config.task) {
        case Task::spectrum:
            out.spectra.push_back(run_spectrum(config, config.name));
            break;
        case Task::mixing_sweep: {
            auto sweep = mixing_angle_sweep(config, config.mixing_sweep);
            out.spectra = std::move(sweep.spectra);
            out.slow_light_deviation = sweep.slow_light_deviation;
            break;
        }
        case Task::noise_sweep:
            for (double a : config.ensemble.amplitudes) {
                ScenarioConfig c = config;
                NoiseSpec noise = c.noise.value_or(NoiseSpec{});
                noise.amplitude = a;
                c.noise = noise;
                out.spectra.push_back(run_spectrum(c, "a=" + format_double(a)));
                out.ensembles.push_back(noise_ensemble(c, a, config.ensemble.seeds));
            }
            break;
        case Task::ensemble: {
            const double a = config.noise ? config.noise->amplitude : 0.0;
            out.ensembles.push_back(noise_ensemble(config, a, config.ensemble.seeds));
            break;
        }
        case Task::evolve:
            out.dynamics = run_evolution(config, &out.warnings);
            break;
        case Task::zero_mode:
            out.zero_mode = run_zero_mode(config, &out.warnings);
            break;
    }
    return out;
}

ScenarioResult run_scenario(const std::string& name, const std::vector<std::pair<std::string, std::string>>& overrides) {
    ScenarioConfig config = scenario_defaults(name);
    for (const auto& [key, value] : overrides) apply_setting(config, key, value);
    return run_config(config);
}

}  // namespace jrsim
