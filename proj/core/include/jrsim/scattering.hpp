#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jrsim/matrix2.hpp"
#include "jrsim/model.hpp"
#include "jrsim/profile.hpp"

namespace jrsim {

/// Ideal: the S = pi/2 Dirac equation with the slow-light approximation.
/// Generalized: the full mixing-angle equation with coefficients (A, B, C).
enum class ScatteringMode { ideal, generalized };

std::string to_string(ScatteringMode mode);
ScatteringMode parse_scattering_mode(const std::string& text);

/// Maps the envelope spinor (E1, E2) at z_min to its value at z_max.
using TransferMatrix = Mat2;

/// Stationary generator N with dE/dz = N E at probe detuning `delta_omega`.
PauliVector generator(double delta_omega, double delta, const PhysicalScale& scale, const MixingAngle& angle,
                      ScatteringMode mode);

/// Matrix form of `generator`.
Mat2 generator_matrix(double delta_omega, double delta, const PhysicalScale& scale, const MixingAngle& angle,
                      ScatteringMode mode);

/// exp(N dz) for traceless N: cosh(s dz) I + sinh(s dz)/s N with s^2 = -det N,
/// switching to the second-order series when |s dz| < 1e-6.
TransferMatrix cell_propagator(const Mat2& generator, double dz);
TransferMatrix cell_propagator(const PauliVector& generator, double dz);

/// Ordered product W_n ... W_1 over the sampled cells. Throws NumericalError
/// when an entry exceeds 1e300.
TransferMatrix total_transfer(const SampledProfile& profile, double delta_omega, const PhysicalScale& scale,
                              const MixingAngle& angle, ScatteringMode mode);

struct ScatterPoint {
    double delta_omega = 0.0;
    cplx reflection{0.0};
    cplx transmission{0.0};

    double r2() const { return std::norm(reflection); }
    double t2() const { return std::norm(transmission); }
};

/// Incident E1 = 1 from the left, no wave entering from the right:
/// R = -W21/W22, T = 1/W22.
ScatterPoint reflect_transmit(const TransferMatrix& w, double delta_omega = 0.0);

/// Deviations of a transfer matrix from its algebraic invariants. The
/// `relative` variants divide by max(1, |W|_max^2), the scale of rounding in
/// the products involved.
struct TransferCheck {
    double det_error = 0.0;             // |det W - 1|
    double pseudo_unitarity_error = 0.0;  // max |(W^† sigma_z W - sigma_z)_ij|
    double det_error_relative = 0.0;
    double pseudo_unitarity_error_relative = 0.0;
};

TransferCheck check_transfer(const TransferMatrix& w);

/// Frequencies in units of delta0: `count` evenly spaced points on [min, max].
struct FrequencySweep {
    double min = -2.0;
    double max = 2.0;
    std::size_t count = 801;

    void validate() const;
    /// Absolute detunings (rad/ms) for a given delta0.
    std::vector<double> frequencies(double delta0) const;

    bool operator==(const FrequencySweep&) const = default;
};

struct SpectrumMeta {
    std::string profile;
    double delta0 = 0.0;
    double mixing_fraction = 0.0;
    ScatteringMode mode = ScatteringMode::ideal;
    std::optional<std::uint64_t> seed;
    std::size_t n_cells = 0;
};

struct InvariantSummary {
    double max_flux_error = 0.0;       // max ||R|^2 + |T|^2 - 1|
    double max_det_error = 0.0;        // relative, see TransferCheck
    double max_pseudo_unitarity_error = 0.0;  // relative
};

struct Spectrum {
    std::vector<ScatterPoint> points;
    SpectrumMeta meta;
    InvariantSummary invariants;
};

/// One scatter point per frequency, evaluated concurrently and returned in
/// input order. Frequencies must be strictly increasing.
Spectrum spectrum(const SampledProfile& profile, std::span<const double> frequencies, const PhysicalScale& scale,
                  const MixingAngle& angle, ScatteringMode mode, SpectrumMeta meta = {});

struct ZeroFrequencyResult {
    double phi = 0.0;  // (1/(v0 sin S)) * integral of delta
    double r2 = 0.0;
    double t2 = 1.0;
};

/// Closed form at delta_omega = 0 where every cell generator is proportional
/// to sigma_x: |T|^2 = sech^2(phi), |R|^2 = tanh^2(phi).
ZeroFrequencyResult zero_frequency_transmission(const SampledProfile& profile, const PhysicalScale& scale,
                                                const MixingAngle& angle);

struct PeakResult {
    double delta_omega = 0.0;
    double t2 = 0.0;
};

/// Maximum of |T|^2 restricted to |delta_omega| < 0.5 delta0. Throws
/// DomainError if no sweep point falls there.
PeakResult midgap_peak(const Spectrum& spectrum);

struct GapEdges {
    std::optional<double> lower;  // in rad/ms
    std::optional<double> upper;
};

/// First crossing of |T|^2 = 0.5 scanning outward from +-0.5 delta0, linearly
/// interpolated between sweep points.
GapEdges gap_edges(const Spectrum& spectrum);

}  // namespace jrsim
