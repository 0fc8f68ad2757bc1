#include "jrsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace jrsim {

namespace {

// Fraction of the norm allowed within kSeamCells of the periodic seam before
// a wraparound warning is raised.
constexpr std::size_t kSeamCells = 10;
constexpr double kSeamTolerance = 1e-8;
// Envelope level at the boundary above which a zero mode counts as not
// normalizable on the domain.
constexpr double kEdgeTolerance = 1e-6;

void require_same_grid(const Grid& a, const Grid& b) {
    if (a.size() != b.size() || a.z_min() != b.z_min() || a.z_max() != b.z_max())
        throw ConfigError("grid", "field and profile grids differ");
}

}  // namespace

Spinor2 chirality_spinor(Chirality c) {
    const double r = 1.0 / std::numbers::sqrt2;
    return c == Chirality::plus ? Spinor2{r, r} : Spinor2{r, -r};
}

double SpinorField::norm2() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < psi1.size(); ++i) sum += density(i);
    return sum * grid.dz();
}

double SpinorField::mean_position() const {
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < psi1.size(); ++i) {
        const double d = density(i);
        weighted += d * grid.midpoint(i);
        total += d;
    }
    return weighted / total;
}

double SpinorField::rms_width() const {
    const double mean = mean_position();
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < psi1.size(); ++i) {
        const double d = density(i);
        const double u = grid.midpoint(i) - mean;
        weighted += d * u * u;
        total += d;
    }
    return std::sqrt(weighted / total);
}

void SpinorField::normalize() {
    const double n = std::sqrt(norm2());
    if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("cannot normalize a zero or non-finite field");
    for (auto& v : psi1) v /= n;
    for (auto& v : psi2) v /= n;
}

cplx inner_product(const SpinorField& a, const SpinorField& b) {
    require_same_grid(a.grid, b.grid);
    cplx sum{0.0};
    for (std::size_t i = 0; i < a.psi1.size(); ++i)
        sum += std::conj(a.psi1[i]) * b.psi1[i] + std::conj(a.psi2[i]) * b.psi2[i];
    return sum * a.grid.dz();
}

SpinorField gaussian_spinor(const Grid& grid, double sigma, double z0, Spinor2 chi, Warnings* warnings) {
    if (!(sigma > 0.0)) throw ConfigError("evolve.sigma", "must be positive");
    if (!(z0 >= grid.z_min() && z0 <= grid.z_max())) throw DomainError("gaussian center outside the domain");
    if (sigma < 2.0 * grid.dz()) {
        std::ostringstream msg;
        msg << "resolution: sigma = " << sigma << " is below 2 dz = " << 2.0 * grid.dz();
        warn(warnings, msg.str());
    }
    SpinorField f(grid);
    const double prefactor = 1.0 / (std::pow(std::numbers::pi, 0.25) * std::sqrt(sigma));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double u = grid.midpoint(i) - z0;
        const double g = prefactor * std::exp(-u * u / (2.0 * sigma * sigma));
        f.psi1[i] = chi.upper * g;
        f.psi2[i] = chi.lower * g;
    }
    f.normalize();
    return f;
}

SpinorField zero_mode_state(const MassProfile& profile, const Grid& grid, const PhysicalScale& scale,
                            Chirality chirality, Warnings* warnings) {
    const std::size_t n = grid.size();
    const double dz = grid.dz();
    const auto* samples = std::get_if<SampledProfile>(&profile.shape());
    if (samples && samples->values.size() != n) throw ConfigError("grid", "sampled profile does not match grid");

    // Phi at cell midpoints up to an additive constant, which normalization
    // removes; referencing it to the center cell only shifts it.
    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double increment = samples ? 0.5 * (samples->values[i - 1] + samples->values[i])
                                         : profile.evaluate(grid.edge(i));
        phi[i] = phi[i - 1] + increment * dz / scale.v0;
    }
    const double sign = chirality == Chirality::plus ? -1.0 : 1.0;
    double top = -INFINITY;
    for (double p : phi) top = std::max(top, sign * p);

    SpinorField f(grid);
    const Spinor2 chi = chirality_spinor(chirality);
    for (std::size_t i = 0; i < n; ++i) {
        const double envelope = std::exp(sign * phi[i] - top);
        f.psi1[i] = chi.upper * envelope;
        f.psi2[i] = chi.lower * envelope;
    }
    const double edge = std::max(std::exp(sign * phi.front() - top), std::exp(sign * phi.back() - top));
    if (edge > kEdgeTolerance) {
        std::ostringstream msg;
        msg << "non-normalizable: zero-mode envelope is " << edge
            << " of its peak at the domain boundary (wrong chirality or no sign change in the profile)";
        warn(warnings, msg.str());
    }
    f.normalize();
    return f;
}

SplitStepPropagator::SplitStepPropagator(const SampledProfile& profile, const PhysicalScale& scale)
    : grid_(profile.grid), dt_(profile.grid.dz() / scale.v0) {
    cos_half_.resize(profile.values.size());
    sin_half_.resize(profile.values.size());
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double theta = 0.5 * profile.values[i] * dt_;
        cos_half_[i] = std::cos(theta);
        sin_half_[i] = std::sin(theta);
    }
}

void SplitStepPropagator::advance(SpinorField& field) const {
    require_same_grid(field.grid, grid_);
    auto& a = field.psi1;
    auto& b = field.psi2;
    const std::size_t n = a.size();
    // exp(-i theta sigma_y) = [[cos, -sin], [sin, cos]]
    auto rotate = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            const cplx u = a[i];
            const cplx d = b[i];
            a[i] = cos_half_[i] * u - sin_half_[i] * d;
            b[i] = sin_half_[i] * u + cos_half_[i] * d;
        }
    };
    rotate();
    std::rotate(a.begin(), a.end() - 1, a.end());
    std::rotate(b.begin(), b.begin() + 1, b.end());
    rotate();
}

SpinorField step(const SpinorField& field, const SampledProfile& profile, const PhysicalScale& scale) {
    SpinorField out = field;
    SplitStepPropagator(profile, scale).advance(out);
    return out;
}

void EvolutionConfig::validate() const {
    if (snapshot_stride == 0) throw ConfigError("evolve.stride", "must be positive");
}

Observables measure(const SpinorField& field, const SpinorField& initial, double t) {
    return Observables{t, field.norm2(), field.mean_position(), field.rms_width(),
                       std::abs(inner_product(initial, field))};
}

Trajectory evolve(const SpinorField& initial, const SampledProfile& profile, const PhysicalScale& scale,
                  const EvolutionConfig& config, Warnings* warnings) {
    config.validate();
    require_same_grid(initial.grid, profile.grid);
    const SplitStepPropagator propagator(profile, scale);
    const std::size_t n = initial.grid.size();
    const std::size_t seam = std::min(kSeamCells, n / 2);

    Trajectory traj;
    traj.dt = propagator.dt();
    bool warned = false;
    SpinorField field = initial;
    auto record = [&](std::size_t k) {
        const double t = static_cast<double>(k) * traj.dt;
        traj.observables.push_back(measure(field, initial, t));
        traj.snapshots.push_back(Snapshot{t, field});
        if (warned) return;
        double near_seam = 0.0;
        for (std::size_t i = 0; i < seam; ++i) near_seam += field.density(i) + field.density(n - 1 - i);
        if (near_seam * field.grid.dz() > kSeamTolerance * traj.observables.back().norm2) {
            std::ostringstream msg;
            msg << "wraparound: packet within " << seam << " cells of the periodic seam at t = " << t;
            warn(warnings, msg.str());
            warned = true;
        }
    };

    record(0);
    for (std::size_t k = 1; k <= config.n_steps; ++k) {
        propagator.advance(field);
        if (k % config.snapshot_stride == 0 || k == config.n_steps) record(k);
    }
    return traj;
}

double hamiltonian_residual(const SpinorField& field, const SampledProfile& profile, const PhysicalScale& scale) {
    require_same_grid(field.grid, profile.grid);
    const std::size_t n = field.psi1.size();
    const double inv2dz = 1.0 / (2.0 * field.grid.dz());
    const cplx i_unit(0.0, 1.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t next = (k + 1) % n;
        const std::size_t prev = (k + n - 1) % n;
        const cplx d1 = (field.psi1[next] - field.psi1[prev]) * inv2dz;
        const cplx d2 = (field.psi2[next] - field.psi2[prev]) * inv2dz;
        const double delta = profile.values[k];
        // H = -i v0 sigma_z d/dz + delta sigma_y, sigma_y (a, b) = (-i b, i a)
        const cplx h1 = -i_unit * scale.v0 * d1 - i_unit * delta * field.psi2[k];
        const cplx h2 = i_unit * scale.v0 * d2 + i_unit * delta * field.psi1[k];
        sum += std::norm(h1) + std::norm(h2);
    }
    return std::sqrt(sum * field.grid.dz() / field.norm2());
}

}  // namespace jrsim
