#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jrsim/config.hpp"
#include "jrsim/dynamics.hpp"
#include "jrsim/scattering.hpp"

namespace jrsim {

/// Names accepted by run_scenario, in catalog order.
const std::vector<std::string>& scenario_names();

/// Catalog defaults for a named scenario; throws CatalogError when unknown.
ScenarioConfig scenario_defaults(const std::string& name);

/// Generic physical defaults: kink Theta = 75, Lambda = 6, L = 300 um,
/// v0 = 17 um/ms, 3000 cells, 801 frequencies over [-2, 2] delta0.
ScenarioConfig default_config();

Grid build_grid(const ScenarioConfig& config);

/// Base profile with the configured noise realization attached, if any.
/// `seed` replaces the configured noise seed.
MassProfile build_profile(const ScenarioConfig& config, std::optional<std::uint64_t> seed = std::nullopt);

struct LabeledSpectrum {
    std::string label;
    Spectrum spectrum;
    PeakResult peak;
    GapEdges edges;
    // Largest |T|^2 over 0.25 <= |delta_omega| / delta0 <= 0.75.
    double gap_depth = 0.0;
};

LabeledSpectrum analyze_spectrum(std::string label, Spectrum spectrum);

/// Spectrum of the configured profile over the configured sweep.
LabeledSpectrum run_spectrum(const ScenarioConfig& config, std::string label = "spectrum");

struct SeedResult {
    std::uint64_t seed = 0;
    PeakResult peak;
    double phi = 0.0;
    double oracle_t2 = 0.0;    // sech^2(phi)
    double pipeline_t2 = 0.0;  // transfer-matrix |T(0)|^2
};

struct RobustnessReport {
    double amplitude = 0.0;
    double delta0 = 0.0;
    std::vector<SeedResult> seeds;
    double mean_peak = 0.0;
    double min_peak = 0.0;
    double max_peak = 0.0;
    double max_oracle_deviation = 0.0;
};

/// Noisy-profile scenario for seeds 1..n_seeds. Peaks are taken over the
/// sweep points of `base` that lie inside the mid-gap window.
RobustnessReport noise_ensemble(const ScenarioConfig& base, double amplitude, std::size_t n_seeds);

struct MixingSweepResult {
    std::vector<LabeledSpectrum> spectra;
    // max over the sweep of | |T|^2 generalized(f=0) - |T|^2 ideal |
    double slow_light_deviation = 0.0;
};

/// Generalized-mode spectra of the configured profile for each fraction.
MixingSweepResult mixing_angle_sweep(const ScenarioConfig& base, std::span<const double> fractions);

/// max | |T|^2 generalized(f=0) - |T|^2 ideal | over the configured sweep.
double slow_light_deviation(const ScenarioConfig& config);

struct DynamicsResult {
    Trajectory trajectory;
    double initial_width = 0.0;
    double final_width = 0.0;
    double final_overlap = 0.0;
    double max_norm_drift = 0.0;
};

DynamicsResult run_evolution(const ScenarioConfig& config, Warnings* warnings = nullptr);

struct ZeroModeResult {
    SpinorField field;
    SampledProfile profile;
    double residual = 0.0;
    double rms_width = 0.0;
};

ZeroModeResult run_zero_mode(const ScenarioConfig& config, Warnings* warnings = nullptr);

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<LabeledSpectrum> spectra;
    std::vector<RobustnessReport> ensembles;
    std::optional<DynamicsResult> dynamics;
    std::optional<ZeroModeResult> zero_mode;
    std::optional<double> slow_light_deviation;
    Warnings warnings;
};

/// Dispatches on config.task.
ScenarioResult run_config(const ScenarioConfig& config);

/// Catalog scenario with key/value overrides applied on top of its defaults.
ScenarioResult run_scenario(const std::string& name,
                            const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace jrsim
