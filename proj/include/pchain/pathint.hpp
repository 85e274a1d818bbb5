// Discretized phase-space path integral for the character trace(e^{iH}).
//
// With N time slices and angles allowed to wind, phi_N = phi_0 + 2 pi n, the
// trace is
//     Z = sum_n  int dJ dphi / (2 pi)  exp(i S^(N)),
//     S^(N) = J_N phi_N - J_0 phi_0 - sum_{k<N} (phi_k dJ_k + H J_k dt).
// Each phi_k integral gives delta(J_{k+1} - J_k), the slices collapse to a single
// J, and Poisson summation over n turns the remaining integral into the lattice
// sum over the weight set.

#ifndef PCHAIN_PATHINT_HPP
#define PCHAIN_PATHINT_HPP

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "pchain/core.hpp"
#include "pchain/partition.hpp"

namespace pchain {

/// Thrown when the numeric evaluator is asked for more than it can afford.
class BudgetError : public Error {
public:
    using Error::Error;
};

struct PathIntegralParams {
    int slices = 1;              // N
    int n_max = 40;              // winding cutoff, |n| <= n_max
    double phi_cutoff = 200.0;   // Lambda, each phi integral runs over [-Lambda, Lambda]
    double regulator = 1e-3;     // winding damping exp(-regulator n^2)
    int quad_points = 4096;      // Gauss-Legendre nodes per J integral
};

/// S^(N) for one degree of freedom. J and phi hold the N+1 slice values.
double discretized_action(std::span<const double> J, std::span<const double> phi, double hcoef);

/// Slice-by-slice reduction: collapse the delta chain, then Poisson-sum the
/// winding number coordinate by coordinate. Independent of N.
std::complex<double> analytic_reduce(const ChainSpec& spec, const TorusElement& h, int slices);

/// Numeric evaluation for ell = 1, N <= 3. The phi integrals are cut off at
/// Lambda (Dirichlet kernels), the winding sum is Gaussian damped, and the J
/// integrals run against a C^1 bump that is 1 on [min J, max J] and falls to 0
/// over a margin of 1/2. Throws BudgetError, NotPositiveError.
std::complex<double> numeric_path_integral(const ChainSpec& spec, const TorusElement& h,
                                           const PathIntegralParams& params);

/// sum_{|n| <= n_max} exp(-eps n^2) int chi(eta) exp(-i eta (2 pi n - H)) d eta
/// with chi the same bump over [0, l]. Tends to sum_{k=0}^{l} e^{ikH}.
std::complex<double> poisson_check(int l, double hcoef, int n_max, double regulator);

struct ConvergenceRow {
    PathIntegralParams params;
    std::complex<double> value;
    double abs_error = 0.0;  // against the character
};

std::vector<ConvergenceRow> convergence_sweep(const ChainSpec& spec, const TorusElement& h,
                                              const std::vector<PathIntegralParams>& grid);

/// Columns: lambda,regulator,n_max,N,re,im,abs_error_vs_character
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace pchain

#endif
