#include "jrsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "jrsim/error.hpp"
#include "jrsim/experiments.hpp"

namespace jrsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(value) + "'");
    return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(value) + "'");
    return out;
}

std::vector<double> to_list(std::string_view key, std::string_view value) {
    std::vector<double> out;
    while (!value.empty()) {
        const auto comma = value.find(',');
        out.push_back(to_double(key, trim(value.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    if (out.empty()) throw ConfigError(std::string(key), "expected a comma-separated list");
    return out;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

NoiseSpec& noise_of(ScenarioConfig& c) {
    if (!c.noise) c.noise = NoiseSpec{};
    return *c.noise;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string to_string(Task task) {
    switch (task) {
        case Task::spectrum: return "spectrum";
        case Task::evolve: return "evolve";
        case Task::zero_mode: return "zero-mode";
        case Task::mixing_sweep: return "mixing-sweep";
        case Task::noise_sweep: return "noise-sweep";
        case Task::ensemble: return "ensemble";
    }
    return "spectrum";
}

Task parse_task(const std::string& text) {
    for (Task t : {Task::spectrum, Task::evolve, Task::zero_mode, Task::mixing_sweep, Task::noise_sweep,
                   Task::ensemble})
        if (to_string(t) == text) return t;
    throw ConfigError("task", "unknown task '" + text + "'");
}

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::kink: return "kink";
        case ProfileKind::sine: return "sine";
        case ProfileKind::constant: return "constant";
    }
    return "kink";
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "scenario",       "task",          "units",           "scale.v0",        "scale.L",
        "scale.c",        "grid.n_cells",  "profile.kind",    "profile.theta",   "profile.sharpness",
        "noise.a",        "noise.seed",    "noise.cell",      "mixing.f",        "mode",
        "sweep.min",      "sweep.max",     "sweep.count",     "mixing.sweep",    "evolve.initial",
        "evolve.sigma",   "evolve.z0",     "evolve.steps",    "evolve.stride",   "evolve.chirality",
        "ensemble.seeds", "ensemble.amplitudes", "output.dir",
    };
    return keys;
}

void apply_setting(ScenarioConfig& c, std::string_view key, std::string_view raw) {
    const std::string k(key);
    const std::string_view v = trim(raw);
    if (key == "scenario") {
        c.name = std::string(v);
    } else if (key == "task") {
        c.task = parse_task(std::string(v));
    } else if (key == "units") {
        if (v != "um-ms" && v != "natural") throw ConfigError(k, "expected um-ms or natural");
        c.units = std::string(v);
    } else if (key == "scale.v0") {
        c.scale.v0 = to_double(key, v);
        if (!(c.scale.v0 > 0.0)) throw ConfigError(k, "must be positive");
    } else if (key == "scale.L") {
        const double length = to_double(key, v);
        if (!(length > 0.0)) throw ConfigError(k, "must be positive");
        c.scale.length = length;
        c.scale.z_min = -0.5 * length;
        c.scale.z_max = 0.5 * length;
    } else if (key == "scale.c") {
        c.scale.c_empty = to_double(key, v);
        if (!(c.scale.c_empty > 0.0)) throw ConfigError(k, "must be positive");
    } else if (key == "grid.n_cells") {
        c.n_cells = to_u64(key, v);
        if (c.n_cells == 0) throw ConfigError(k, "must be positive");
    } else if (key == "profile.kind") {
        if (v == "kink") c.profile.kind = ProfileKind::kink;
        else if (v == "sine") c.profile.kind = ProfileKind::sine;
        else if (v == "constant") c.profile.kind = ProfileKind::constant;
        else throw ConfigError(k, "expected kink, sine or constant");
    } else if (key == "profile.theta") {
        c.profile.theta = to_double(key, v);
    } else if (key == "profile.sharpness") {
        c.profile.sharpness = to_double(key, v);
        if (!(c.profile.sharpness > 0.0)) throw ConfigError(k, "must be positive");
    } else if (key == "noise.a") {
        const double a = to_double(key, v);
        if (a < 0.0 || a >= 1.0) throw ConfigError(k, "a out of range [0, 1)");
        noise_of(c).amplitude = a;
    } else if (key == "noise.seed") {
        noise_of(c).seed = to_u64(key, v);
    } else if (key == "noise.cell") {
        const double cell = to_double(key, v);
        if (!(cell > 0.0)) throw ConfigError(k, "must be positive");
        noise_of(c).cell_size = cell;
    } else if (key == "mixing.f") {
        c.mixing_fraction = to_double(key, v);
        if (std::abs(c.mixing_fraction) >= 1.0) throw ConfigError(k, "|f| must be below 1");
    } else if (key == "mode") {
        c.mode = parse_scattering_mode(std::string(v));
    } else if (key == "sweep.min") {
        c.sweep.min = to_double(key, v);
    } else if (key == "sweep.max") {
        c.sweep.max = to_double(key, v);
    } else if (key == "sweep.count") {
        c.sweep.count = to_u64(key, v);
        if (c.sweep.count == 0) throw ConfigError(k, "must be positive");
    } else if (key == "mixing.sweep") {
        c.mixing_sweep = to_list(key, v);
        for (double f : c.mixing_sweep)
            if (std::abs(f) >= 1.0) throw ConfigError(k, "|f| must be below 1");
    } else if (key == "evolve.initial") {
        if (v == "gaussian") c.evolution.initial = InitialState::gaussian;
        else if (v == "zero-mode") c.evolution.initial = InitialState::zero_mode;
        else throw ConfigError(k, "expected gaussian or zero-mode");
    } else if (key == "evolve.sigma") {
        c.evolution.sigma = to_double(key, v);
        if (!(c.evolution.sigma > 0.0)) throw ConfigError(k, "must be positive");
    } else if (key == "evolve.z0") {
        c.evolution.z0 = to_double(key, v);
    } else if (key == "evolve.steps") {
        c.evolution.steps = to_u64(key, v);
    } else if (key == "evolve.stride") {
        c.evolution.stride = to_u64(key, v);
        if (c.evolution.stride == 0) throw ConfigError(k, "must be positive");
    } else if (key == "evolve.chirality") {
        if (v == "plus") c.evolution.plus_chirality = true;
        else if (v == "minus") c.evolution.plus_chirality = false;
        else throw ConfigError(k, "expected plus or minus");
    } else if (key == "ensemble.seeds") {
        c.ensemble.seeds = to_u64(key, v);
        if (c.ensemble.seeds == 0) throw ConfigError(k, "must be positive");
    } else if (key == "ensemble.amplitudes") {
        c.ensemble.amplitudes = to_list(key, v);
        for (double a : c.ensemble.amplitudes)
            if (a < 0.0 || a >= 1.0) throw ConfigError(k, "a out of range [0, 1)");
    } else if (key == "output.dir") {
        if (v.empty()) throw ConfigError(k, "must not be empty");
        c.output_dir = std::string(v);
    } else {
        throw ConfigError(k, "unknown key");
    }
}

void validate(const ScenarioConfig& c) {
    c.scale.validate();
    if (c.n_cells == 0) throw ConfigError("grid.n_cells", "must be positive");
    if (!std::isfinite(c.profile.theta)) throw ConfigError("profile.theta", "must be finite");
    if (!(c.profile.sharpness > 0.0)) throw ConfigError("profile.sharpness", "must be positive");
    if (c.noise) {
        c.noise->validate();
        if (c.scale.length / static_cast<double>(c.n_cells) > c.noise->cell_size * (1.0 + 1e-9))
            throw ConfigError("grid.n_cells", "cell width exceeds the noise cell size");
    }
    MixingAngle{c.mixing_fraction};
    c.sweep.validate();
    const double half = 0.5 * c.scale.length;
    if (c.evolution.z0 < -half || c.evolution.z0 > half) throw ConfigError("evolve.z0", "outside the domain");
    if (c.evolution.stride == 0) throw ConfigError("evolve.stride", "must be positive");
    if (c.ensemble.seeds == 0) throw ConfigError("ensemble.seeds", "must be positive");
}

std::vector<Setting> parse_settings(std::string_view text) {
    std::vector<Setting> entries;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
        entries.emplace_back(key, std::string(trim(line.substr(eq + 1))));
    }
    return entries;
}

ScenarioConfig resolve_config(std::span<const Setting> entries) {
    ScenarioConfig config = default_config();
    for (const auto& [key, value] : entries)
        if (key == "scenario") config = scenario_defaults(value);
    for (const auto& [key, value] : entries)
        if (key != "scenario") apply_setting(config, key, value);
    validate(config);
    return config;
}

ScenarioConfig parse_config(std::string_view text) { return resolve_config(parse_settings(text)); }

std::string emit_config(const ScenarioConfig& c) {
    std::ostringstream out;
    auto line = [&](const char* key, const std::string& value) { out << key << '=' << value << '\n'; };
    line("scenario", c.name);
    line("task", to_string(c.task));
    line("units", c.units);
    line("scale.v0", format_double(c.scale.v0));
    line("scale.L", format_double(c.scale.length));
    line("scale.c", format_double(c.scale.c_empty));
    line("grid.n_cells", std::to_string(c.n_cells));
    line("profile.kind", to_string(c.profile.kind));
    line("profile.theta", format_double(c.profile.theta));
    line("profile.sharpness", format_double(c.profile.sharpness));
    if (c.noise) {
        line("noise.a", format_double(c.noise->amplitude));
        line("noise.seed", std::to_string(c.noise->seed));
        line("noise.cell", format_double(c.noise->cell_size));
    }
    line("mixing.f", format_double(c.mixing_fraction));
    line("mode", to_string(c.mode));
    line("sweep.min", format_double(c.sweep.min));
    line("sweep.max", format_double(c.sweep.max));
    line("sweep.count", std::to_string(c.sweep.count));
    line("mixing.sweep", format_list(c.mixing_sweep));
    line("evolve.initial", c.evolution.initial == InitialState::gaussian ? "gaussian" : "zero-mode");
    line("evolve.sigma", format_double(c.evolution.sigma));
    line("evolve.z0", format_double(c.evolution.z0));
    line("evolve.steps", std::to_string(c.evolution.steps));
    line("evolve.stride", std::to_string(c.evolution.stride));
    line("evolve.chirality", c.evolution.plus_chirality ? "plus" : "minus");
    line("ensemble.seeds", std::to_string(c.ensemble.seeds));
    line("ensemble.amplitudes", format_list(c.ensemble.amplitudes));
    line("output.dir", c.output_dir);
    return out.str();
}

}  // namespace jrsim
