// The twisted cube  0 <= J_j <= l_j - sum_{i<j} c_ji J_i  and its lattice points.

#ifndef PCHAIN_POLYTOPE_HPP
#define PCHAIN_POLYTOPE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pchain/core.hpp"

namespace pchain {

/// Integer point eta = sum_i n_i varpi_i.
struct WeightPoint {
    std::vector<long long> n;

    friend auto operator<=>(const WeightPoint&, const WeightPoint&) = default;
};

/// Result of a quadrature or Monte Carlo computation. Quadrature results have
/// std_error = 0 and samples = 0.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Global extrema of each action variable over the whole manifold.
struct MinMaxTable {
    std::vector<double> min;
    std::vector<double> max;
};

/// Exact extrema. Each J_j is affine in every Jbar_k separately, so its range
/// over the closed cube 0 <= Jbar <= 1 is spanned by the 2^ell corner values.
MinMaxTable minmax_table(const ChainSpec& spec);

/// The interval-arithmetic recursion
///   min J_j = min{0, l_j - sum_i (c+_ji max J_i + c-_ji min J_i)}
///   max J_j = max{0, l_j - sum_i (c+_ji min J_i + c-_ji max J_i)}
/// It agrees with minmax_table for ell <= 2 and encloses it in general.
MinMaxTable box_minmax_table(const ChainSpec& spec);

bool is_positive(const ChainSpec& spec);

class TwistedCube {
public:
    explicit TwistedCube(ChainSpec spec);

    const ChainSpec& spec() const { return spec_; }
    const MinMaxTable& extrema() const { return extrema_; }
    bool positive() const { return positive_; }

    /// l_j - sum_{i<j} c_ji J_i using the first j coordinates of point.
    double upper_bound(std::size_t j, std::span<const double> point) const;

    /// Smallest slack over all 2*ell inequalities; negative outside.
    double slack(std::span<const double> point) const;
    double slack(const WeightPoint& point) const;

    bool contains(std::span<const double> point, double tol = 0.0) const
    {
        return slack(point) >= -tol;
    }

    /// Volume of the bounding box [min, max].
    double box_volume() const;

private:
    ChainSpec spec_;
    MinMaxTable extrema_;
    bool positive_;
};

/// Lexicographically sorted integer points of the twisted cube.
/// Throws NotPositiveError.
std::vector<WeightPoint> lattice_points(const ChainSpec& spec);

/// Distinct vertices (tolerance 1e-9), lexicographically sorted.
/// Throws NotPositiveError.
std::vector<std::vector<double>> vertices(const ChainSpec& spec);

enum class VolumeMethod { recursive_quadrature, monte_carlo };

/// Integral of f over the twisted cube by iterated adaptive Gauss-Kronrod
/// quadrature, innermost coordinate last. Requires a positive spec.
double integrate_twisted_cube(const ChainSpec& spec,
                              const std::function<double(std::span<const double>)>& f,
                              double rel_tol = 1e-8);

/// Rejection-sampling estimate of the same integral using the bounding box.
Estimate monte_carlo_twisted_cube(const ChainSpec& spec,
                                  const std::function<double(std::span<const double>)>& f,
                                  std::size_t samples, std::uint64_t seed);

Estimate volume(const ChainSpec& spec, VolumeMethod method, std::size_t samples = 1'000'000,
                std::uint64_t seed = 1);

enum class Membership { interior, boundary_or_exterior };

struct ConjugateResult {
    Membership membership = Membership::boundary_or_exterior;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::vector<double> maximizer;  // last tau iterate
};

struct ConjugateOptions {
    double gradient_tol = 1e-8;
    double tau_bound = 40.0;
    int max_iterations = 400;
};

/// Damped Newton ascent on F(tau) = 2 <eta, tau> - K_lambda(tau). eta lies in the
/// interior of the moment set iff F has a stationary point.
ConjugateResult conjugate_search(const ChainSpec& spec, std::span<const double> eta,
                                 const ConjugateOptions& options = {});

Membership conjugate_membership(const ChainSpec& spec, std::span<const double> eta);

std::string to_string(Membership m);

/// CSV with header `prefix1,...,prefixN`, one row per point.
void write_points_csv(std::ostream& out, const std::vector<WeightPoint>& points,
                      std::size_t ell, const std::string& prefix = "n");
void write_points_csv(std::ostream& out, const std::vector<std::vector<double>>& points,
                      std::size_t ell, const std::string& prefix = "J");

}  // namespace pchain

#endif
