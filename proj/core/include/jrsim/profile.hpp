#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "jrsim/model.hpp"

namespace jrsim {

/// Multiplicative fluctuation of a base profile: delta(z) (1 + eps(z)) with
/// eps uniform in [-a, a] and constant over cells of `cell_size` (um) laid
/// out from z_min.
struct NoiseSpec {
    double amplitude = 0.0;
    std::uint64_t seed = 1;
    double cell_size = 0.1;

    void validate() const;

    bool operator==(const NoiseSpec&) const = default;
};

/// Number of noise cells covering a medium of the given length.
std::size_t noise_cell_count(double length, double cell_size);

/// eps_i = a (2 u_i - 1), u_i successive splitmix64 uniforms seeded with
/// spec.seed.
std::vector<double> generate_noise(const NoiseSpec& spec, std::size_t n_noise_cells);

/// Piecewise-constant per-cell detuning values: what the solvers consume.
struct SampledProfile {
    Grid grid;
    std::vector<double> values;

    std::span<const double> cells() const noexcept { return values; }
    /// Midpoint-rule integral of delta over the domain.
    double integral() const noexcept;
};

class MassProfile;

struct KinkShape {
    double delta0;
    double lambda;
};

struct SineShape {
    double delta0;
    double wavenumber;
};

struct ConstantShape {
    double delta0;
};

struct NoisyShape {
    std::shared_ptr<const MassProfile> base;
    NoiseSpec noise;
    std::vector<double> eps;
};

/// Spatial two-photon detuning delta(z) on a fixed domain. Kink and sine are
/// centered on the domain midpoint so they are odd about it.
class MassProfile {
public:
    using Shape = std::variant<KinkShape, SineShape, ConstantShape, SampledProfile, NoisyShape>;

    static MassProfile kink(const PhysicalScale& scale, double delta0, double lambda);
    static MassProfile sine(const PhysicalScale& scale, double delta0, double wavenumber);
    static MassProfile constant(const PhysicalScale& scale, double delta0);
    static MassProfile sampled(SampledProfile samples);
    /// Attaches a freshly generated noise realization to `base`.
    static MassProfile noisy(const MassProfile& base, const NoiseSpec& noise);

    // Opacity/sharpness parameterization: delta0 = Theta v0 / L and
    // lambda (or k) = Lambda / L.
    static MassProfile kink_from_opacity(const PhysicalScale& scale, double theta, double sharpness);
    static MassProfile sine_from_opacity(const PhysicalScale& scale, double theta, double sharpness);
    static MassProfile constant_from_opacity(const PhysicalScale& scale, double theta);

    /// delta(z); throws DomainError outside [z_min, z_max].
    double evaluate(double z) const;

    /// Nominal amplitude delta0 (max |value| for sampled profiles).
    double amplitude() const noexcept;
    double z_min() const noexcept { return z_min_; }
    double z_max() const noexcept { return z_max_; }
    double center() const noexcept { return 0.5 * (z_min_ + z_max_); }
    const Shape& shape() const noexcept { return shape_; }
    bool is_noisy() const noexcept { return std::holds_alternative<NoisyShape>(shape_); }
    std::string describe() const;

private:
    MassProfile(double z_min, double z_max, Shape shape);
    double evaluate_unchecked(double z) const;

    double z_min_;
    double z_max_;
    Shape shape_;
};

inline double evaluate_profile(const MassProfile& profile, double z) { return profile.evaluate(z); }

/// Samples at cell midpoints. For noisy profiles the cell width must not
/// exceed the noise cell size (ConfigError otherwise).
SampledProfile sample_on_grid(const MassProfile& profile, const Grid& grid);

}  // namespace jrsim
