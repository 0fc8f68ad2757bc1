#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jrsim/dynamics.hpp"
#include "jrsim/experiments.hpp"
#include "jrsim/scattering.hpp"

namespace jrsim {

/// Flux-conservation tolerance enforced on every spectrum before it is
/// written.
inline constexpr double kFluxTolerance = 1e-10;

// CSV bodies carry no timestamps, so identical runs give identical bytes.
// Floats use 17 significant digits.

/// delta_omega_over_delta0,T2,R2,reT,imT,reR,imR. Throws NumericalError
/// without writing when a row violates flux conservation.
void write_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path);

/// t,z,re_psi1,im_psi1,re_psi2,im_psi2; one row per cell per snapshot.
void write_snapshots_csv(const Trajectory& trajectory, const std::filesystem::path& path);
void write_field_csv(const SpinorField& field, double t, const std::filesystem::path& path);

/// t,norm2,mean_z,rms_width,overlap0
void write_observables_csv(const Trajectory& trajectory, const std::filesystem::path& path);

/// seed,peak_delta_omega_over_delta0,peak_T2,phi,oracle_T2,pipeline_T2
void write_ensemble_csv(const RobustnessReport& report, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

struct RunMetadata {
    std::string tool_version;
    std::string config_text;
    std::vector<std::uint64_t> seeds;
    std::size_t n_cells = 0;
    std::string timestamp;
    double max_flux_error = 0.0;
    double max_det_error = 0.0;
};

RunMetadata make_metadata(const ScenarioResult& result);

/// JSON sidecar: metadata, mid-gap peaks, gap edges, invariant maxima,
/// ensemble statistics and dynamics observables.
std::string summary_json(const ScenarioResult& result, const RunMetadata& metadata);

/// Writes every CSV of the result plus summary.json into `dir` (created if
/// needed). Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

std::string library_version();

}  // namespace jrsim
