#include "jrsim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jrsim/error.hpp"
#include "jrsim/rng.hpp"

namespace jrsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::size_t cell_index(double z, double origin, double width, std::size_t n) {
    const double x = std::floor((z - origin) / width);
    if (x <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(x), n - 1);
}

}  // namespace

void NoiseSpec::validate() const {
    if (!std::isfinite(amplitude) || amplitude < 0.0 || amplitude >= 1.0)
        throw ConfigError("noise.a", "a out of range [0, 1)");
    if (!(cell_size > 0.0)) throw ConfigError("noise.cell", "must be positive");
}

std::size_t noise_cell_count(double length, double cell_size) {
    // 300 / 0.1 is not exact in binary; absorb the representation error.
    return static_cast<std::size_t>(std::ceil(length / cell_size - 1e-9));
}

std::vector<double> generate_noise(const NoiseSpec& spec, std::size_t n_noise_cells) {
    spec.validate();
    SplitMix64 rng(spec.seed);
    std::vector<double> eps(n_noise_cells);
    for (auto& e : eps) e = spec.amplitude * (2.0 * rng.next_uniform() - 1.0);
    return eps;
}

double SampledProfile::integral() const noexcept {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * grid.dz();
}

MassProfile::MassProfile(double z_min, double z_max, Shape shape)
    : z_min_(z_min), z_max_(z_max), shape_(std::move(shape)) {}

MassProfile MassProfile::kink(const PhysicalScale& scale, double delta0, double lambda) {
    if (!std::isfinite(delta0)) throw ConfigError("profile.theta", "must be finite");
    if (!(lambda > 0.0)) throw ConfigError("profile.sharpness", "kink inverse width must be positive");
    return MassProfile(scale.z_min, scale.z_max, KinkShape{delta0, lambda});
}

MassProfile MassProfile::sine(const PhysicalScale& scale, double delta0, double wavenumber) {
    if (!std::isfinite(delta0)) throw ConfigError("profile.theta", "must be finite");
    if (!(wavenumber > 0.0)) throw ConfigError("profile.sharpness", "sine wavenumber must be positive");
    return MassProfile(scale.z_min, scale.z_max, SineShape{delta0, wavenumber});
}

MassProfile MassProfile::constant(const PhysicalScale& scale, double delta0) {
    if (!std::isfinite(delta0)) throw ConfigError("profile.theta", "must be finite");
    return MassProfile(scale.z_min, scale.z_max, ConstantShape{delta0});
}

MassProfile MassProfile::sampled(SampledProfile samples) {
    if (samples.values.size() != samples.grid.size())
        throw ConfigError("profile", "sample count does not match grid");
    const double lo = samples.grid.z_min();
    const double hi = samples.grid.z_max();
    return MassProfile(lo, hi, std::move(samples));
}

MassProfile MassProfile::noisy(const MassProfile& base, const NoiseSpec& noise) {
    noise.validate();
    const auto n = noise_cell_count(base.z_max_ - base.z_min_, noise.cell_size);
    return MassProfile(base.z_min_, base.z_max_,
                       NoisyShape{std::make_shared<const MassProfile>(base), noise, generate_noise(noise, n)});
}

MassProfile MassProfile::kink_from_opacity(const PhysicalScale& scale, double theta, double sharpness) {
    return kink(scale, scale.delta0_from_opacity(theta), sharpness / scale.length);
}

MassProfile MassProfile::sine_from_opacity(const PhysicalScale& scale, double theta, double sharpness) {
    return sine(scale, scale.delta0_from_opacity(theta), sharpness / scale.length);
}

MassProfile MassProfile::constant_from_opacity(const PhysicalScale& scale, double theta) {
    return constant(scale, scale.delta0_from_opacity(theta));
}

double MassProfile::evaluate(double z) const {
    const double slack = 1e-12 * (z_max_ - z_min_);
    if (!(z >= z_min_ - slack && z <= z_max_ + slack)) {
        std::ostringstream msg;
        msg << "z = " << z << " outside [" << z_min_ << ", " << z_max_ << "]";
        throw DomainError(msg.str());
    }
    return evaluate_unchecked(z);
}

double MassProfile::evaluate_unchecked(double z) const {
    const double u = z - center();
    return std::visit(
        overloaded{
            [&](const KinkShape& k) { return k.delta0 * std::tanh(k.lambda * u); },
            [&](const SineShape& s) { return s.delta0 * std::sin(s.wavenumber * u); },
            [&](const ConstantShape& c) { return c.delta0; },
            [&](const SampledProfile& s) {
                return s.values[cell_index(z, s.grid.z_min(), s.grid.dz(), s.values.size())];
            },
            [&](const NoisyShape& n) {
                const auto cell = cell_index(z, z_min_, n.noise.cell_size, n.eps.size());
                return n.base->evaluate_unchecked(z) * (1.0 + n.eps[cell]);
            },
        },
        shape_);
}

double MassProfile::amplitude() const noexcept {
    return std::visit(overloaded{
                          [](const KinkShape& k) { return std::abs(k.delta0); },
                          [](const SineShape& s) { return std::abs(s.delta0); },
                          [](const ConstantShape& c) { return std::abs(c.delta0); },
                          [](const SampledProfile& s) {
                              double m = 0.0;
                              for (double v : s.values) m = std::max(m, std::abs(v));
                              return m;
                          },
                          [](const NoisyShape& n) { return n.base->amplitude(); },
                      },
                      shape_);
}

std::string MassProfile::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(overloaded{
                   [&](const KinkShape& k) { out << "kink(delta0=" << k.delta0 << ",lambda=" << k.lambda << ")"; },
                   [&](const SineShape& s) { out << "sine(delta0=" << s.delta0 << ",k=" << s.wavenumber << ")"; },
                   [&](const ConstantShape& c) { out << "constant(delta0=" << c.delta0 << ")"; },
                   [&](const SampledProfile& s) { out << "sampled(n=" << s.values.size() << ")"; },
                   [&](const NoisyShape& n) {
                       out << "noisy(" << n.base->describe() << ",a=" << n.noise.amplitude
                           << ",seed=" << n.noise.seed << ")";
                   },
               },
               shape_);
    return out.str();
}

SampledProfile sample_on_grid(const MassProfile& profile, const Grid& grid) {
    const double slack = 1e-9 * grid.length();
    if (std::abs(grid.z_min() - profile.z_min()) > slack || std::abs(grid.z_max() - profile.z_max()) > slack)
        throw ConfigError("grid", "grid does not cover the profile domain");
    if (const auto* noisy = std::get_if<NoisyShape>(&profile.shape())) {
        if (grid.dz() > noisy->noise.cell_size * (1.0 + 1e-9))
            throw ConfigError("grid.n_cells", "cell width exceeds the noise cell size");
    }
    SampledProfile out{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = profile.evaluate(grid.midpoint(i));
    return out;
}

}  // namespace jrsim
