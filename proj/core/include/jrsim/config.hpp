#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jrsim/profile.hpp"
#include "jrsim/scattering.hpp"

namespace jrsim {

enum class Task { spectrum, evolve, zero_mode, mixing_sweep, noise_sweep, ensemble };

std::string to_string(Task task);
Task parse_task(const std::string& text);

enum class ProfileKind { kink, sine, constant };

std::string to_string(ProfileKind kind);

struct ProfileSpec {
    ProfileKind kind = ProfileKind::kink;
    double theta = 75.0;     // opacity delta0 L / v0
    double sharpness = 6.0;  // lambda L (kink) or k L (sine)

    bool operator==(const ProfileSpec&) const = default;
};

enum class InitialState { gaussian, zero_mode };

struct EvolutionSpec {
    InitialState initial = InitialState::gaussian;
    double sigma = 1.2;
    double z0 = 0.0;
    std::size_t steps = 1000;
    std::size_t stride = 100;
    bool plus_chirality = true;

    bool operator==(const EvolutionSpec&) const = default;
};

struct EnsembleSpec {
    std::size_t seeds = 50;
    std::vector<double> amplitudes{0.05, 0.2, 0.4, 0.5};

    bool operator==(const EnsembleSpec&) const = default;
};

/// Fully resolved description of one run. Every output is a pure function of
/// this value.
struct ScenarioConfig {
    std::string name = "custom";
    Task task = Task::spectrum;
    std::string units = "um-ms";
    PhysicalScale scale;
    std::size_t n_cells = 3000;
    ProfileSpec profile;
    std::optional<NoiseSpec> noise;
    double mixing_fraction = 0.0;
    ScatteringMode mode = ScatteringMode::ideal;
    FrequencySweep sweep;
    std::vector<double> mixing_sweep{0.1, 0.3, 0.4, 0.5};
    EvolutionSpec evolution;
    EnsembleSpec ensemble;
    std::string output_dir = ".";

    bool operator==(const ScenarioConfig&) const = default;
};

/// Applies one dotted key; throws ConfigError naming the key on an unknown
/// key, malformed value or violated constraint.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Cross-field checks (domain, grid, ranges) after all keys are applied.
void validate(const ScenarioConfig& config);

using Setting = std::pair<std::string, std::string>;

/// Splits `key = value` lines ('#' starts a comment) without interpreting
/// them. Throws ConfigError on a malformed line or a repeated key.
std::vector<Setting> parse_settings(std::string_view text);

/// Applies `scenario` first (catalog defaults, else the generic defaults),
/// then every other setting in order, then validates.
ScenarioConfig resolve_config(std::span<const Setting> settings);

/// Parses `key = value` lines ('#' starts a comment). A `scenario` key selects
/// the catalog defaults that the remaining keys override; without it the
/// generic physical defaults apply.
ScenarioConfig parse_config(std::string_view text);

/// Canonical text form listing every key; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

/// Keys accepted by apply_setting, in emission order.
const std::vector<std::string>& config_keys();

/// 17-significant-digit rendering used for every float the tool writes.
std::string format_double(double value);

}  // namespace jrsim
