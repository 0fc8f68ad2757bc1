#include "jrsim/scattering.hpp"

#include <cmath>
#include <sstream>

#include "jrsim/error.hpp"
#include "jrsim/parallel.hpp"

namespace jrsim {

namespace {

constexpr double kOverflowLimit = 1e300;
constexpr double kSingularLimit = 1e-300;

}  // namespace

std::string to_string(ScatteringMode mode) { return mode == ScatteringMode::ideal ? "ideal" : "generalized"; }

ScatteringMode parse_scattering_mode(const std::string& text) {
    if (text == "ideal") return ScatteringMode::ideal;
    if (text == "generalized") return ScatteringMode::generalized;
    throw ConfigError("mode", "expected ideal or generalized, got '" + text + "'");
}

PauliVector generator(double delta_omega, double delta, const PhysicalScale& scale, const MixingAngle& angle,
                      ScatteringMode mode) {
    const cplx i(0.0, 1.0);
    if (mode == ScatteringMode::ideal) {
        return {-delta / scale.v0, 0.0, i * (delta_omega / scale.v0)};
    }
    const auto k = coefficients(angle, scale, delta);
    return {-k.c, delta_omega * k.b, i * (delta_omega * k.a)};
}

Mat2 generator_matrix(double delta_omega, double delta, const PhysicalScale& scale, const MixingAngle& angle,
                      ScatteringMode mode) {
    return generator(delta_omega, delta, scale, angle, mode).matrix();
}

TransferMatrix cell_propagator(const PauliVector& n, double dz) {
    const cplx s2 = n.square();
    const cplx s = std::sqrt(s2);
    const cplx x = s * dz;
    const Mat2 nm = n.matrix();
    if (std::abs(x) < 1e-6) {
        const cplx diag = 1.0 + 0.5 * s2 * dz * dz;
        return Mat2{diag, 0.0, 0.0, diag} + cplx(dz) * nm;
    }
    const cplx ch = std::cosh(x);
    const cplx sh_over_s = std::sinh(x) / s;
    return Mat2{ch, 0.0, 0.0, ch} + sh_over_s * nm;
}

TransferMatrix cell_propagator(const Mat2& generator, double dz) {
    return cell_propagator(PauliVector::from_matrix(generator), dz);
}

TransferMatrix total_transfer(const SampledProfile& profile, double delta_omega, const PhysicalScale& scale,
                              const MixingAngle& angle, ScatteringMode mode) {
    // The product is accumulated in the eigenbasis of sigma_x. At zero
    // detuning every cell is then diagonal and the two exponents accumulate
    // with relative rounding only; in the (E1, E2) basis the same product
    // loses the small eigenvalue entirely once the opacity is large.
    // Runs of equal detuning form one homogeneous slab and are exponentiated
    // in a single step, so n identical cells do not accumulate n roundings.
    const double dz = profile.grid.dz();
    const auto& values = profile.values;
    Mat2 chiral = Mat2::identity();
    for (std::size_t i = 0; i < values.size();) {
        std::size_t run = 1;
        while (i + run < values.size() && values[i + run] == values[i]) ++run;
        const auto n = generator(delta_omega, values[i], scale, angle, mode).hadamard();
        chiral = cell_propagator(n, static_cast<double>(run) * dz) * chiral;
        if (!(chiral.max_abs() <= kOverflowLimit)) {
            std::ostringstream msg;
            msg << "transfer matrix overflow at cell " << i << " (delta_omega = " << delta_omega
                << "): opacity too large for this grid; rescale the profile";
            throw NumericalError(msg.str());
        }
        i += run;
    }
    return hadamard_conjugate(chiral);
}

ScatterPoint reflect_transmit(const TransferMatrix& w, double delta_omega) {
    if (!(std::abs(w.m22) >= kSingularLimit)) throw NumericalError("singular boundary: |W22| below 1e-300");
    return ScatterPoint{delta_omega, -w.m21 / w.m22, 1.0 / w.m22};
}

TransferCheck check_transfer(const TransferMatrix& w) {
    TransferCheck c;
    c.det_error = std::abs(w.det() - 1.0);
    const Mat2 sz = Mat2::sigma_z();
    c.pseudo_unitarity_error = max_abs_diff(w.adjoint() * sz * w, sz);
    const double m = std::max(1.0, w.max_abs());
    c.det_error_relative = c.det_error / (m * m);
    c.pseudo_unitarity_error_relative = c.pseudo_unitarity_error / (m * m);
    return c;
}

void FrequencySweep::validate() const {
    if (count == 0) throw ConfigError("sweep.count", "must be positive");
    if (!std::isfinite(min) || !std::isfinite(max)) throw ConfigError("sweep.min", "must be finite");
    if (count > 1 && !(max > min)) throw ConfigError("sweep.max", "must exceed sweep.min");
}

std::vector<double> FrequencySweep::frequencies(double delta0) const {
    validate();
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = min * delta0;
        return out;
    }
    const double n = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double k = static_cast<double>(i);
        // Weighted form keeps the symmetric midpoint exactly zero.
        out[i] = (min * (n - k) + max * k) / n * delta0;
    }
    return out;
}

Spectrum spectrum(const SampledProfile& profile, std::span<const double> frequencies, const PhysicalScale& scale,
                  const MixingAngle& angle, ScatteringMode mode, SpectrumMeta meta) {
    if (frequencies.empty()) throw ConfigError("sweep.count", "frequency sweep is empty");
    for (std::size_t i = 1; i < frequencies.size(); ++i)
        if (!(frequencies[i] > frequencies[i - 1]))
            throw ConfigError("sweep", "frequencies must be strictly increasing");

    std::vector<ScatterPoint> points(frequencies.size());
    std::vector<TransferCheck> checks(frequencies.size());
    parallel_for(frequencies.size(), [&](std::size_t i) {
        const auto w = total_transfer(profile, frequencies[i], scale, angle, mode);
        points[i] = reflect_transmit(w, frequencies[i]);
        checks[i] = check_transfer(w);
    });

    Spectrum out{std::move(points), std::move(meta), {}};
    out.meta.mixing_fraction = angle.fraction();
    out.meta.mode = mode;
    out.meta.n_cells = profile.values.size();
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        const auto& p = out.points[i];
        auto& inv = out.invariants;
        inv.max_flux_error = std::max(inv.max_flux_error, std::abs(p.r2() + p.t2() - 1.0));
        inv.max_det_error = std::max(inv.max_det_error, checks[i].det_error_relative);
        inv.max_pseudo_unitarity_error =
            std::max(inv.max_pseudo_unitarity_error, checks[i].pseudo_unitarity_error_relative);
    }
    return out;
}

ZeroFrequencyResult zero_frequency_transmission(const SampledProfile& profile, const PhysicalScale& scale,
                                                const MixingAngle& angle) {
    ZeroFrequencyResult r;
    r.phi = coefficients(angle, scale, profile.integral()).c;
    const double t = std::tanh(r.phi);
    const double ch = std::cosh(r.phi);
    r.r2 = t * t;
    r.t2 = std::isfinite(ch) ? 1.0 / (ch * ch) : 0.0;
    return r;
}

PeakResult midgap_peak(const Spectrum& spectrum) {
    const double window = 0.5 * spectrum.meta.delta0;
    std::optional<PeakResult> best;
    for (const auto& p : spectrum.points) {
        if (!(std::abs(p.delta_omega) < window)) continue;
        if (!best || p.t2() > best->t2) best = PeakResult{p.delta_omega, p.t2()};
    }
    if (!best) throw DomainError("no sweep point inside |delta_omega| < 0.5 delta0");
    return *best;
}

GapEdges gap_edges(const Spectrum& spectrum) {
    const auto& pts = spectrum.points;
    const double start = 0.5 * spectrum.meta.delta0;
    auto crossing = [](const ScatterPoint& inside, const ScatterPoint& outside) {
        const double t0 = inside.t2();
        const double t1 = outside.t2();
        if (t1 == t0) return outside.delta_omega;
        return inside.delta_omega + (0.5 - t0) / (t1 - t0) * (outside.delta_omega - inside.delta_omega);
    };

    GapEdges edges;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].delta_omega < start) continue;
        if (pts[i].t2() >= 0.5) {
            const bool has_inner = i > 0 && pts[i - 1].delta_omega >= start;
            edges.upper = has_inner ? crossing(pts[i - 1], pts[i]) : pts[i].delta_omega;
            break;
        }
    }
    for (std::size_t k = pts.size(); k-- > 0;) {
        if (pts[k].delta_omega > -start) continue;
        if (pts[k].t2() >= 0.5) {
            const bool has_inner = k + 1 < pts.size() && pts[k + 1].delta_omega <= -start;
            edges.lower = has_inner ? crossing(pts[k + 1], pts[k]) : pts[k].delta_omega;
            break;
        }
    }
    return edges;
}

}  // namespace jrsim
