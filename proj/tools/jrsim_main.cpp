// jrsim command-line driver. Every run is resolved to a ScenarioConfig from
// (optional) catalog scenario -> config file -> command-line flags, executed,
// and written to --out as CSV plus summary.json.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "jrsim/config.hpp"
#include "jrsim/error.hpp"
#include "jrsim/experiments.hpp"
#include "jrsim/io.hpp"

namespace {

// Exit codes: 0 ok, 1 run failure, 2 usage.
constexpr int kRunFailure = 1;
constexpr int kUsage = 2;

int fail(const std::string& kind, const std::string& message, const std::string& key = {}) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    if (!key.empty()) j["key"] = key;
    std::cerr << j.dump() << '\n';
    return kind == "usage" ? kUsage : kRunFailure;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw jrsim::IoError("cannot open config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void set(std::vector<jrsim::Setting>& settings, const std::string& key, const std::string& value) {
    auto it = std::find_if(settings.begin(), settings.end(), [&](const auto& s) { return s.first == key; });
    if (it != settings.end())
        it->second = value;
    else
        settings.emplace_back(key, value);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slow-light Dirac medium with a position-dependent mass: spectra, dynamics, zero modes", "jrsim"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", jrsim::library_version());

    std::string config_path;
    std::string out_dir;
    bool print_config = false;
    app.add_option("-c,--config", config_path, "key=value config file; flags override its values");
    app.add_option("-o,--out", out_dir, "output directory (overrides output.dir)");
    app.add_flag("--print-config", print_config, "print the resolved config and exit without running");

    // One flag per config key, e.g. --profile.theta 5.
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> key_options;
    for (const auto& key : jrsim::config_keys()) {
        if (key == "scenario") continue;  // selected by the `scenario` subcommand
        auto* opt = app.add_option("--" + key, values[key])->type_name("VALUE")->group("Config keys");
        key_options.emplace_back(key, opt);
    }

    app.add_subcommand("spectrum", "transmission/reflection spectrum of one profile");
    auto* evolve = app.add_subcommand("evolve", "split-step time evolution");
    auto* zero_mode = app.add_subcommand("zero-mode", "analytic zero mode and its Hamiltonian residual");
    auto* ensemble = app.add_subcommand("ensemble", "noise ensemble over seeds 1..ensemble.seeds");
    auto* scenario = app.add_subcommand("scenario", "run a catalog scenario with its own task");
    std::string scenario_name;
    scenario->add_option("name", scenario_name, "catalog name")->required();
    auto* list = app.add_subcommand("list", "list catalog scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    if (list->parsed()) {
        for (const auto& name : jrsim::scenario_names()) std::cout << name << '\n';
        return 0;
    }

    try {
        std::vector<jrsim::Setting> settings;
        if (!config_path.empty()) settings = jrsim::parse_settings(read_file(config_path));
        for (const auto& [key, option] : key_options)
            if (option->count() > 0) set(settings, key, values[key]);
        if (!out_dir.empty()) set(settings, "output.dir", out_dir);

        if (scenario->parsed()) {
            set(settings, "scenario", scenario_name);
        } else {
            std::string task = "spectrum";
            if (evolve->parsed()) task = "evolve";
            if (zero_mode->parsed()) task = "zero-mode";
            if (ensemble->parsed()) task = "ensemble";
            set(settings, "task", task);
        }

        const jrsim::ScenarioConfig config = jrsim::resolve_config(settings);
        if (print_config) {
            std::cout << jrsim::emit_config(config);
            return 0;
        }

        const auto result = jrsim::run_config(config);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& path : jrsim::write_outputs(result, config.output_dir)) std::cout << path.string() << '\n';
        return 0;
    } catch (const jrsim::ConfigError& e) {
        return fail(e.kind(), e.what(), e.key());
    } catch (const jrsim::Error& e) {
        return fail(e.kind(), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
}
