#pragma once

#include <cstddef>
#include <vector>

#include "jrsim/error.hpp"
#include "jrsim/matrix2.hpp"
#include "jrsim/model.hpp"
#include "jrsim/profile.hpp"

namespace jrsim {

struct Spinor2 {
    cplx upper{0.0};
    cplx lower{0.0};
};

/// Sign of the sigma_x eigenvalue of the constant spinor part.
enum class Chirality { plus, minus };

Spinor2 chirality_spinor(Chirality c);

/// Two-component envelope (E1, E2) sampled at cell midpoints.
struct SpinorField {
    Grid grid;
    std::vector<cplx> psi1;
    std::vector<cplx> psi2;

    explicit SpinorField(const Grid& g) : grid(g), psi1(g.size()), psi2(g.size()) {}

    double norm2() const;
    double density(std::size_t i) const { return std::norm(psi1[i]) + std::norm(psi2[i]); }
    double mean_position() const;
    /// sqrt of the density-weighted variance of z.
    double rms_width() const;
    void normalize();
};

/// <a|b> including the dz weight.
cplx inner_product(const SpinorField& a, const SpinorField& b);

/// chi exp(-(z - z0)^2 / 2 sigma^2) / (pi^(1/4) sigma^(1/2)), renormalized on
/// the grid. Warns when sigma < 2 dz.
SpinorField gaussian_spinor(const Grid& grid, double sigma, double z0, Spinor2 chi, Warnings* warnings = nullptr);

/// chi exp(-Phi(z)) with Phi = (1/v0) * integral of delta from the domain
/// center, normalized. Phi is accumulated cell by cell with the midpoint rule
/// (trapezoid for already-sampled profiles). Warns when the envelope does not
/// decay toward the boundaries, i.e. the requested chirality is not
/// normalizable for this profile.
SpinorField zero_mode_state(const MassProfile& profile, const Grid& grid, const PhysicalScale& scale,
                            Chirality chirality = Chirality::plus, Warnings* warnings = nullptr);

/// Strang-split lattice propagator for H = -i v0 sigma_z d/dz + delta sigma_y
/// with dt = dz / v0: half mass rotation, one-cell shift of each component
/// (E1 right, E2 left, periodic), half mass rotation.
class SplitStepPropagator {
public:
    SplitStepPropagator(const SampledProfile& profile, const PhysicalScale& scale);

    double dt() const noexcept { return dt_; }
    void advance(SpinorField& field) const;

private:
    Grid grid_;
    double dt_;
    std::vector<double> cos_half_;
    std::vector<double> sin_half_;
};

/// One split step; convenience wrapper over SplitStepPropagator.
SpinorField step(const SpinorField& field, const SampledProfile& profile, const PhysicalScale& scale);

struct EvolutionConfig {
    std::size_t n_steps = 1000;
    std::size_t snapshot_stride = 100;

    void validate() const;
};

struct Observables {
    double t = 0.0;
    double norm2 = 0.0;
    double mean_z = 0.0;
    double rms_width = 0.0;
    double overlap0 = 0.0;  // |<psi(0)|psi(t)>|
};

struct Snapshot {
    double t;
    SpinorField field;
};

struct Trajectory {
    double dt = 0.0;
    std::vector<Snapshot> snapshots;
    std::vector<Observables> observables;

    const SpinorField& final_field() const { return snapshots.back().field; }
};

/// Snapshots (and observables) at t = 0, every `snapshot_stride` steps and at
/// the final step. Warns once if the density near the periodic seam becomes
/// non-negligible.
Trajectory evolve(const SpinorField& initial, const SampledProfile& profile, const PhysicalScale& scale,
                  const EvolutionConfig& config, Warnings* warnings = nullptr);

Observables measure(const SpinorField& field, const SpinorField& initial, double t);

/// ||H psi|| / ||psi|| with central differences (periodic) for d/dz.
double hamiltonian_residual(const SpinorField& field, const SampledProfile& profile, const PhysicalScale& scale);

}  // namespace jrsim
