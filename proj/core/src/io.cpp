#include "jrsim/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jrsim/error.hpp"

#ifndef JRSIM_VERSION
#define JRSIM_VERSION "0.0.0"
#endif

namespace jrsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::string& header) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
        out_ << header << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) buffer_ += ',';
            buffer_ += format_double(v);
            first = false;
        }
        buffer_ += '\n';
        if (buffer_.size() > (1u << 20)) flush();
    }

    void close() {
        flush();
        out_.close();
        if (!out_) throw IoError("write failed for '" + path_.string() + "'");
    }

private:
    void flush() {
        out_ << buffer_;
        buffer_.clear();
        if (!out_) throw IoError("write failed for '" + path_.string() + "'");
    }

    fs::path path_;
    std::ofstream out_;
    std::string buffer_;
};

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string sanitize(const std::string& label) {
    std::string out;
    for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json spectrum_json(const LabeledSpectrum& s) {
    const double d0 = s.spectrum.meta.delta0;
    json j;
    j["label"] = s.label;
    j["profile"] = s.spectrum.meta.profile;
    j["delta0"] = d0;
    j["mode"] = to_string(s.spectrum.meta.mode);
    j["mixing_fraction"] = s.spectrum.meta.mixing_fraction;
    j["seed"] = s.spectrum.meta.seed ? json(*s.spectrum.meta.seed) : json(nullptr);
    j["points"] = s.spectrum.points.size();
    j["midgap_peak"] = {{"delta_omega_over_delta0", s.peak.delta_omega / d0}, {"T2", s.peak.t2}};
    auto scaled = [&](const std::optional<double>& v) {
        return v ? std::optional<double>(*v / d0) : std::nullopt;
    };
    j["gap_edges_over_delta0"] = {{"lower", optional_number(scaled(s.edges.lower))},
                                  {"upper", optional_number(scaled(s.edges.upper))}};
    j["gap_depth_T2"] = s.gap_depth;
    j["invariants"] = {{"max_flux_error", s.spectrum.invariants.max_flux_error},
                       {"max_det_error_relative", s.spectrum.invariants.max_det_error},
                       {"max_pseudo_unitarity_error_relative", s.spectrum.invariants.max_pseudo_unitarity_error}};
    return j;
}

json ensemble_json(const RobustnessReport& r) {
    json seeds = json::array();
    for (const auto& s : r.seeds)
        seeds.push_back({{"seed", s.seed},
                         {"peak_T2", s.peak.t2},
                         {"phi", s.phi},
                         {"oracle_T2", s.oracle_t2},
                         {"pipeline_T2", s.pipeline_t2}});
    return {{"amplitude", r.amplitude},         {"n_seeds", r.seeds.size()},
            {"mean_peak_T2", r.mean_peak},      {"min_peak_T2", r.min_peak},
            {"max_peak_T2", r.max_peak},        {"max_oracle_deviation", r.max_oracle_deviation},
            {"seeds", seeds}};
}

}  // namespace

std::string library_version() { return JRSIM_VERSION; }

void write_spectrum_csv(const Spectrum& spectrum, const fs::path& path) {
    for (const auto& p : spectrum.points) {
        const double err = std::abs(p.r2() + p.t2() - 1.0);
        if (!(err <= kFluxTolerance)) {
            std::ostringstream msg;
            msg << "flux conservation violated (| |R|^2+|T|^2-1 | = " << err << " at delta_omega = " << p.delta_omega
                << "); refusing to write " << path.string();
            throw NumericalError(msg.str());
        }
    }
    const double d0 = spectrum.meta.delta0 != 0.0 ? spectrum.meta.delta0 : 1.0;
    CsvWriter out(path, "delta_omega_over_delta0,T2,R2,reT,imT,reR,imR");
    for (const auto& p : spectrum.points)
        out.row({p.delta_omega / d0, p.t2(), p.r2(), p.transmission.real(), p.transmission.imag(),
                 p.reflection.real(), p.reflection.imag()});
    out.close();
}

void write_field_csv(const SpinorField& field, double t, const fs::path& path) {
    CsvWriter out(path, "t,z,re_psi1,im_psi1,re_psi2,im_psi2");
    for (std::size_t i = 0; i < field.psi1.size(); ++i)
        out.row({t, field.grid.midpoint(i), field.psi1[i].real(), field.psi1[i].imag(), field.psi2[i].real(),
                 field.psi2[i].imag()});
    out.close();
}

void write_snapshots_csv(const Trajectory& trajectory, const fs::path& path) {
    CsvWriter out(path, "t,z,re_psi1,im_psi1,re_psi2,im_psi2");
    for (const auto& snap : trajectory.snapshots) {
        const auto& f = snap.field;
        for (std::size_t i = 0; i < f.psi1.size(); ++i)
            out.row({snap.t, f.grid.midpoint(i), f.psi1[i].real(), f.psi1[i].imag(), f.psi2[i].real(),
                     f.psi2[i].imag()});
    }
    out.close();
}

void write_observables_csv(const Trajectory& trajectory, const fs::path& path) {
    CsvWriter out(path, "t,norm2,mean_z,rms_width,overlap0");
    for (const auto& o : trajectory.observables) out.row({o.t, o.norm2, o.mean_z, o.rms_width, o.overlap0});
    out.close();
}

void write_ensemble_csv(const RobustnessReport& report, const fs::path& path) {
    CsvWriter out(path, "seed,peak_delta_omega_over_delta0,peak_T2,phi,oracle_T2,pipeline_T2");
    const double d0 = report.delta0 != 0.0 ? report.delta0 : 1.0;
    for (const auto& s : report.seeds)
        out.row({static_cast<double>(s.seed), s.peak.delta_omega / d0, s.peak.t2, s.phi, s.oracle_t2,
                 s.pipeline_t2});
    out.close();
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != table.header.size())
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": wrong column count");
        table.rows.push_back(std::move(row));
    }
    return table;
}

RunMetadata make_metadata(const ScenarioResult& result) {
    RunMetadata m;
    m.tool_version = library_version();
    m.config_text = emit_config(result.config);
    m.n_cells = result.config.n_cells;
    m.timestamp = utc_timestamp();
    if (result.config.noise) m.seeds.push_back(result.config.noise->seed);
    for (const auto& e : result.ensembles)
        for (const auto& s : e.seeds)
            if (std::find(m.seeds.begin(), m.seeds.end(), s.seed) == m.seeds.end()) m.seeds.push_back(s.seed);
    for (const auto& s : result.spectra) {
        m.max_flux_error = std::max(m.max_flux_error, s.spectrum.invariants.max_flux_error);
        m.max_det_error = std::max(m.max_det_error, s.spectrum.invariants.max_det_error);
    }
    return m;
}

std::string summary_json(const ScenarioResult& result, const RunMetadata& metadata) {
    json j;
    j["metadata"] = {{"tool_version", metadata.tool_version},
                     {"config", metadata.config_text},
                     {"seeds", metadata.seeds},
                     {"n_cells", metadata.n_cells},
                     {"timestamp", metadata.timestamp},
                     {"invariants",
                      {{"max_flux_error", metadata.max_flux_error},
                       {"max_det_error_relative", metadata.max_det_error}}}};
    j["scenario"] = result.config.name;
    j["task"] = to_string(result.config.task);
    json spectra = json::array();
    for (const auto& s : result.spectra) spectra.push_back(spectrum_json(s));
    j["spectra"] = spectra;
    json ensembles = json::array();
    for (const auto& e : result.ensembles) ensembles.push_back(ensemble_json(e));
    j["ensembles"] = ensembles;
    if (result.slow_light_deviation) j["slow_light_deviation_T2"] = *result.slow_light_deviation;
    if (result.dynamics) {
        const auto& d = *result.dynamics;
        json series = json::array();
        for (const auto& o : d.trajectory.observables)
            series.push_back({{"t", o.t},
                              {"norm2", o.norm2},
                              {"mean_z", o.mean_z},
                              {"rms_width", o.rms_width},
                              {"overlap0", o.overlap0}});
        j["dynamics"] = {{"dt", d.trajectory.dt},
                         {"initial_rms_width", d.initial_width},
                         {"final_rms_width", d.final_width},
                         {"final_overlap", d.final_overlap},
                         {"max_norm_drift", d.max_norm_drift},
                         {"observables", series}};
    }
    if (result.zero_mode) {
        j["zero_mode"] = {{"hamiltonian_residual", result.zero_mode->residual},
                          {"rms_width", result.zero_mode->rms_width}};
    }
    j["warnings"] = result.warnings;
    return j.dump(2) + "\n";
}

std::vector<fs::path> write_outputs(const ScenarioResult& result, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    std::vector<fs::path> written;
    const bool many_spectra = result.spectra.size() > 1;
    for (const auto& s : result.spectra) {
        auto path = dir / (many_spectra ? "spectrum_" + sanitize(s.label) + ".csv" : std::string("spectrum.csv"));
        write_spectrum_csv(s.spectrum, path);
        written.push_back(std::move(path));
    }
    const bool many_ensembles = result.ensembles.size() > 1;
    for (const auto& e : result.ensembles) {
        auto path = dir / (many_ensembles ? "ensemble_a_" + sanitize(format_double(e.amplitude)) + ".csv"
                                          : std::string("ensemble.csv"));
        write_ensemble_csv(e, path);
        written.push_back(std::move(path));
    }
    if (result.dynamics) {
        written.push_back(dir / "snapshots.csv");
        write_snapshots_csv(result.dynamics->trajectory, written.back());
        written.push_back(dir / "observables.csv");
        write_observables_csv(result.dynamics->trajectory, written.back());
    }
    if (result.zero_mode) {
        written.push_back(dir / "zero_mode.csv");
        write_field_csv(result.zero_mode->field, 0.0, written.back());
    }
    const auto summary = dir / "summary.json";
    std::ofstream out(summary, std::ios::binary);
    if (!out) throw IoError("cannot open '" + summary.string() + "' for writing");
    out << summary_json(result, make_metadata(result));
    if (!out) throw IoError("write failed for '" + summary.string() + "'");
    written.push_back(summary);
    return written;
}

}  // namespace jrsim
