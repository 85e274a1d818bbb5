#include "pchain/partition.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace pchain {

namespace {

void require_dimension(const ChainSpec& spec, const TorusElement& h)
{
    if (h.eps.size() != spec.length())
        throw std::invalid_argument("torus element has " + std::to_string(h.eps.size()) +
                                    " coordinates, chain length is " +
                                    std::to_string(spec.length()));
    if (!(h.beta > 0.0))
        throw std::invalid_argument("beta must be positive");
}

}  // namespace

double TorusElement::pair(const WeightPoint& eta) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i)
        s += static_cast<double>(eta.n[i]) * eps[i];
    return s;
}

CharacterValue character(const ChainSpec& spec, const TorusElement& h)
{
    require_dimension(spec, h);
    const auto points = lattice_points(spec);
    CharacterValue out{{0.0, 0.0}, points.size()};
    for (const auto& eta : points)
        out.value += std::polar(1.0, h.pair(eta));
    return out;
}

Estimate classical_z(const ChainSpec& spec, const TorusElement& h, ClassicalMethod method,
                     std::size_t samples, std::uint64_t seed)
{
    require_dimension(spec, h);
    auto boltzmann = [&](std::span<const double> eta) {
        double s = 0.0;
        for (std::size_t i = 0; i < eta.size(); ++i)
            s += eta[i] * h.eps[i];
        return std::exp(-h.beta * s);
    };
    if (method == ClassicalMethod::quadrature)
        return {integrate_twisted_cube(spec, boltzmann, 1e-8), 0.0, 0, 0};
    return monte_carlo_twisted_cube(spec, boltzmann, samples, seed);
}

std::vector<ActionPoint> moment_image_sample(const ChainSpec& spec, std::size_t samples,
                                             std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-30.0, 30.0);
    std::vector<ActionPoint> out;
    out.reserve(samples);
    TildeCoords tt{std::vector<double>(spec.length())};
    for (std::size_t k = 0; k < samples; ++k) {
        for (auto& x : tt.tau_tilde)
            x = coord(rng);
        out.push_back(coords::action_vars(spec, tt));
    }
    return out;
}

QuantumClassicalReport quantum_classical_report(const ChainSpec& spec, const TorusElement& h)
{
    require_dimension(spec, h);
    QuantumClassicalReport r;
    const auto points = lattice_points(spec);
    for (const auto& eta : points)
        r.quantum += std::exp(-h.beta * h.pair(eta));
    r.lattice_count = points.size();
    r.classical = classical_z(spec, h, ClassicalMethod::quadrature).value;
    r.gap = r.quantum - r.classical;
    r.volume = volume(spec, VolumeMethod::recursive_quadrature).value;
    return r;
}

void write_report(std::ostream& out, const QuantumClassicalReport& r)
{
    out << "quantum: " << r.quantum << '\n'
        << "classical: " << r.classical << '\n'
        << "gap: " << r.gap << '\n'
        << "gap_correction: uncorrected\n"
        << "lattice_count: " << r.lattice_count << '\n'
        << "volume: " << r.volume << '\n';
}

std::vector<SweepRow> sweep(const ChainSpec& spec, const TorusElement& h, std::size_t axis,
                            std::size_t points)
{
    require_dimension(spec, h);
    if (axis >= spec.length())
        throw std::invalid_argument("sweep axis out of range");
    if (points < 2)
        throw std::invalid_argument("sweep needs at least 2 grid points");
    std::vector<SweepRow> rows;
    rows.reserve(points);
    TorusElement at = h;
    for (std::size_t k = 0; k < points; ++k) {
        const double eps = -std::numbers::pi +
                           2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(points - 1);
        at.eps[axis] = eps;
        rows.push_back({eps, character(spec, at).value,
                        classical_z(spec, at, ClassicalMethod::quadrature).value});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "eps,re_z,im_z,abs_z,z_classical\n";
    for (const auto& r : rows)
        out << r.eps << ',' << r.character.real() << ',' << r.character.imag() << ','
            << std::abs(r.character) << ',' << r.classical << '\n';
}

}  // namespace pchain
