#pragma once

#include <cstddef>

namespace jrsim {

/// Length and velocity scales of the medium. Internal units are micrometres
/// and milliseconds, so detunings are rad/ms and velocities um/ms. Natural-unit
/// scenarios reuse the same type with v0 = 1.
struct PhysicalScale {
    double v0 = 17.0;   // group velocity, um/ms (= 17 m/s)
    double length = 300.0;
    double z_min = -150.0;
    double z_max = 150.0;
    // Empty-waveguide light speed; only enters the generalized-mode
    // coefficient A through the 1/c term.
    double c_empty = 2.99792458e11;

    /// Domain centered at zero.
    static PhysicalScale centered(double v0, double length, double c_empty = 2.99792458e11);

    double center() const noexcept { return 0.5 * (z_min + z_max); }

    // Opacity Theta = delta0 L / v0 <-> detuning amplitude.
    double delta0_from_opacity(double theta) const noexcept { return theta * v0 / length; }
    double opacity_from_delta0(double delta0) const noexcept { return delta0 * length / v0; }

    /// Throws ConfigError when v0 <= 0, L <= 0 or the endpoints disagree with L.
    void validate() const;

    bool operator==(const PhysicalScale&) const = default;
};

/// Uniform cell-centered grid over [z_min, z_max].
class Grid {
public:
    Grid(double z_min, double z_max, std::size_t n_cells);
    Grid(const PhysicalScale& scale, std::size_t n_cells);

    std::size_t size() const noexcept { return n_cells_; }
    double z_min() const noexcept { return z_min_; }
    double z_max() const noexcept { return z_max_; }
    double length() const noexcept { return z_max_ - z_min_; }
    double dz() const noexcept { return dz_; }

    double center() const noexcept { return 0.5 * (z_min_ + z_max_); }

    // Offsets are taken from the center so that mirrored cells sit at exactly
    // mirrored positions.
    double midpoint(std::size_t i) const noexcept {
        return center() + (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(n_cells_)) * dz_;
    }
    // Left edge of cell i; edge(n) is z_max.
    double edge(std::size_t i) const noexcept {
        return center() + (static_cast<double>(i) - 0.5 * static_cast<double>(n_cells_)) * dz_;
    }

private:
    double z_min_;
    double z_max_;
    std::size_t n_cells_;
    double dz_;
};

/// Mixing angle S = (1 + f) pi/2; f is the fractional error of the control
/// phase. |f| >= 1 is rejected because sin S would vanish.
class MixingAngle {
public:
    constexpr MixingAngle() = default;
    explicit MixingAngle(double fraction);

    double fraction() const noexcept { return fraction_; }
    double radians() const noexcept;
    bool is_ideal() const noexcept { return fraction_ == 0.0; }

private:
    double fraction_ = 0.0;
};

struct CoefficientSet {
    double a = 0.0;  // time-derivative sigma_z weight
    double b = 0.0;  // time-derivative sigma_y weight
    double c = 0.0;  // sigma_x mass coupling
};

/// A = 1/c + 1/(v0 sin^2 S), B = cos S / (v0 sin^2 S), C = delta / (v0 sin S).
/// At f = 0, sin and cos are taken as exactly 1 and 0.
CoefficientSet coefficients(const MixingAngle& angle, const PhysicalScale& scale, double delta);

}  // namespace jrsim
