// Quantum character (lattice sum over the weight set) and classical partition
// function (Laplace transform of the moment set indicator).

#ifndef PCHAIN_PARTITION_HPP
#define PCHAIN_PARTITION_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pchain/coords.hpp"
#include "pchain/core.hpp"
#include "pchain/polytope.hpp"

namespace pchain {

/// H = sum_i eps_i N_i in the basis dual to varpi, plus the inverse
/// temperature used by the classical side.
struct TorusElement {
    std::vector<double> eps;
    double beta = 1.0;

    /// <eta, H> = sum_i n_i eps_i
    double pair(const WeightPoint& eta) const;
};

struct CharacterValue {
    std::complex<double> value;
    std::size_t count = 0;
};

/// Z(iH) = sum_{eta in Pi} exp(i <eta, H>). Throws NotPositiveError.
CharacterValue character(const ChainSpec& spec, const TorusElement& h);

enum class ClassicalMethod { quadrature, monte_carlo };

/// Integral over the moment set of exp(-beta <eta, H>). Throws NotPositiveError.
Estimate classical_z(const ChainSpec& spec, const TorusElement& h, ClassicalMethod method,
                     std::size_t samples = 200'000, std::uint64_t seed = 1);

/// Images under the moment map of points with tilde coordinates uniform in
/// [-30, 30]^ell.
std::vector<ActionPoint> moment_image_sample(const ChainSpec& spec, std::size_t samples,
                                             std::uint64_t seed);

/// Lattice sum and integral of the same Boltzmann weight exp(-beta <eta,H>).
/// The gap is uncorrected: no A-hat factor is applied.
struct QuantumClassicalReport {
    double quantum = 0.0;
    double classical = 0.0;
    double gap = 0.0;
    std::size_t lattice_count = 0;
    double volume = 0.0;
};

QuantumClassicalReport quantum_classical_report(const ChainSpec& spec, const TorusElement& h);

void write_report(std::ostream& out, const QuantumClassicalReport& report);

struct SweepRow {
    double eps = 0.0;
    std::complex<double> character;
    double classical = 0.0;
};

/// Uniform grid of `points` values of eps_axis over [-pi, pi], other
/// coordinates held at h.eps.
std::vector<SweepRow> sweep(const ChainSpec& spec, const TorusElement& h, std::size_t axis,
                            std::size_t points);

/// Columns: eps,re_z,im_z,abs_z,z_classical
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace pchain

#endif
