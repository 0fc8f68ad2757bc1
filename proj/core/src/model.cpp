#include "jrsim/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jrsim/error.hpp"

namespace jrsim {

PhysicalScale PhysicalScale::centered(double v0, double length, double c_empty) {
    PhysicalScale s;
    s.v0 = v0;
    s.length = length;
    s.z_min = -0.5 * length;
    s.z_max = 0.5 * length;
    s.c_empty = c_empty;
    s.validate();
    return s;
}

void PhysicalScale::validate() const {
    if (!(v0 > 0.0) || !std::isfinite(v0)) throw ConfigError("scale.v0", "must be positive");
    if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("scale.L", "must be positive");
    if (!(c_empty > 0.0)) throw ConfigError("scale.c", "must be positive");
    if (std::abs((z_max - z_min) - length) > 1e-12 * length)
        throw ConfigError("scale.L", "z_max - z_min must equal L");
}

Grid::Grid(double z_min, double z_max, std::size_t n_cells)
    : z_min_(z_min), z_max_(z_max), n_cells_(n_cells), dz_(0.0) {
    if (n_cells == 0) throw ConfigError("grid.n_cells", "must be positive");
    if (!(z_max > z_min)) throw ConfigError("grid", "z_max must exceed z_min");
    dz_ = (z_max - z_min) / static_cast<double>(n_cells);
}

Grid::Grid(const PhysicalScale& scale, std::size_t n_cells) : Grid(scale.z_min, scale.z_max, n_cells) {}

MixingAngle::MixingAngle(double fraction) : fraction_(fraction) {
    if (!std::isfinite(fraction) || std::abs(fraction) >= 1.0)
        throw ConfigError("mixing.f", "|f| must be below 1 (sin S = 0)");
}

double MixingAngle::radians() const noexcept { return (1.0 + fraction_) * std::numbers::pi / 2.0; }

CoefficientSet coefficients(const MixingAngle& angle, const PhysicalScale& scale, double delta) {
    // S = pi/2 + f pi/2, so sin S = cos(f pi/2) and cos S = -sin(f pi/2).
    // Written this way the ideal angle gives sin S = 1, cos S = 0 exactly.
    const double half = angle.fraction() * std::numbers::pi / 2.0;
    const double sin_s = std::cos(half);
    const double cos_s = -std::sin(half);
    const double sin2 = sin_s * sin_s;
    return CoefficientSet{
        .a = 1.0 / scale.c_empty + 1.0 / (scale.v0 * sin2),
        .b = cos_s / (scale.v0 * sin2),
        .c = delta / (scale.v0 * sin_s),
    };
}

}  // namespace jrsim
