#include "pchain/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <Eigen/Cholesky>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pchain/coords.hpp"

namespace pchain {

namespace {

constexpr double kVertexTol = 1e-9;

// Visit the images of the corners of the Jbar cube, depth first. At depth j the
// first j entries of `point` are set.
template <typename Visit>
void walk_corners(const ChainSpec& spec, std::vector<double>& point, std::size_t depth,
                  Visit& visit)
{
    if (depth == spec.length()) {
        visit(point);
        return;
    }
    double upper = spec.weight(depth);
    for (std::size_t i = 0; i < depth; ++i)
        upper -= spec.twist(depth, i) * point[i];
    for (const double value : {0.0, upper}) {
        point[depth] = value;
        walk_corners(spec, point, depth + 1, visit);
    }
}

void require_positive(const ChainSpec& spec)
{
    if (!is_positive(spec))
        throw NotPositiveError();
}

}  // namespace

MinMaxTable minmax_table(const ChainSpec& spec)
{
    const std::size_t ell = spec.length();
    MinMaxTable table{std::vector<double>(ell, std::numeric_limits<double>::infinity()),
                      std::vector<double>(ell, -std::numeric_limits<double>::infinity())};
    std::vector<double> point(ell, 0.0);
    auto visit = [&](const std::vector<double>& corner) {
        for (std::size_t j = 0; j < ell; ++j) {
            table.min[j] = std::min(table.min[j], corner[j]);
            table.max[j] = std::max(table.max[j], corner[j]);
        }
    };
    walk_corners(spec, point, 0, visit);
    return table;
}

MinMaxTable box_minmax_table(const ChainSpec& spec)
{
    const std::size_t ell = spec.length();
    MinMaxTable table{std::vector<double>(ell), std::vector<double>(ell)};
    for (std::size_t j = 0; j < ell; ++j) {
        double low = spec.weight(j);
        double high = spec.weight(j);
        for (std::size_t i = 0; i < j; ++i) {
            const int c = spec.twist(j, i);
            const int c_plus = c > 0 ? c : 0;
            const int c_minus = c < 0 ? c : 0;
            low -= c_plus * table.max[i] + c_minus * table.min[i];
            high -= c_plus * table.min[i] + c_minus * table.max[i];
        }
        table.min[j] = std::min(0.0, low);
        table.max[j] = std::max(0.0, high);
    }
    return table;
}

bool is_positive(const ChainSpec& spec)
{
    const MinMaxTable table = minmax_table(spec);
    return std::all_of(table.min.begin(), table.min.end(), [](double m) { return m >= 0.0; });
}

TwistedCube::TwistedCube(ChainSpec spec)
    : spec_(std::move(spec)), extrema_(minmax_table(spec_))
{
    positive_ = std::all_of(extrema_.min.begin(), extrema_.min.end(),
                            [](double m) { return m >= 0.0; });
}

double TwistedCube::upper_bound(std::size_t j, std::span<const double> point) const
{
    double upper = spec_.weight(j);
    for (std::size_t i = 0; i < j; ++i)
        upper -= spec_.twist(j, i) * point[i];
    return upper;
}

double TwistedCube::slack(std::span<const double> point) const
{
    if (point.size() != spec_.length())
        throw std::invalid_argument("slack: dimension mismatch");
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < spec_.length(); ++j)
        s = std::min({s, point[j], upper_bound(j, point) - point[j]});
    return s;
}

double TwistedCube::slack(const WeightPoint& point) const
{
    std::vector<double> real(point.n.begin(), point.n.end());
    return slack(real);
}

double TwistedCube::box_volume() const
{
    double v = 1.0;
    for (std::size_t j = 0; j < spec_.length(); ++j)
        v *= extrema_.max[j] - extrema_.min[j];
    return v;
}

std::vector<WeightPoint> lattice_points(const ChainSpec& spec)
{
    require_positive(spec);
    const std::size_t ell = spec.length();
    std::vector<WeightPoint> out;
    std::vector<long long> n(ell, 0);

    auto recurse = [&](auto&& self, std::size_t j) -> void {
        if (j == ell) {
            out.push_back({n});
            return;
        }
        long long upper = spec.weight(j);
        for (std::size_t i = 0; i < j; ++i)
            upper -= static_cast<long long>(spec.twist(j, i)) * n[i];
        for (long long k = 0; k <= upper; ++k) {
            n[j] = k;
            self(self, j + 1);
        }
    };
    recurse(recurse, 0);
    return out;  // loop order is already lexicographic
}

std::vector<std::vector<double>> vertices(const ChainSpec& spec)
{
    require_positive(spec);
    std::vector<std::vector<double>> out;
    std::vector<double> point(spec.length(), 0.0);
    auto visit = [&](const std::vector<double>& corner) { out.push_back(corner); };
    walk_corners(spec, point, 0, visit);

    std::sort(out.begin(), out.end());
    auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t k = 0; k < a.size(); ++k)
            if (std::abs(a[k] - b[k]) > kVertexTol)
                return false;
        return true;
    };
    out.erase(std::unique(out.begin(), out.end(), close), out.end());
    return out;
}

double integrate_twisted_cube(const ChainSpec& spec,
                              const std::function<double(std::span<const double>)>& f,
                              double rel_tol)
{
    require_positive(spec);
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    const TwistedCube cube(spec);
    const std::size_t ell = spec.length();
    const double level_tol = 0.1 * rel_tol;
    std::vector<double> point(ell, 0.0);

    std::function<double(std::size_t)> level = [&](std::size_t j) -> double {
        if (j == ell)
            return f(point);
        const double upper = cube.upper_bound(j, point);
        if (upper <= 0.0)
            return 0.0;
        auto integrand = [&, j](double x) {
            point[j] = x;
            return level(j + 1);
        };
        return Rule::integrate(integrand, 0.0, upper, 15, level_tol);
    };
    return level(0);
}

Estimate monte_carlo_twisted_cube(const ChainSpec& spec,
                                  const std::function<double(std::span<const double>)>& f,
                                  std::size_t samples, std::uint64_t seed)
{
    require_positive(spec);
    if (samples < 2)
        throw std::invalid_argument("monte carlo needs at least 2 samples");
    const TwistedCube cube(spec);
    const std::size_t ell = spec.length();
    const double box = cube.box_volume();
    Estimate est{0.0, 0.0, samples, seed};
    if (box <= 0.0)
        return est;

    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> axes;
    for (std::size_t j = 0; j < ell; ++j)
        axes.emplace_back(cube.extrema().min[j], cube.extrema().max[j]);

    std::vector<double> point(ell);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        for (std::size_t j = 0; j < ell; ++j)
            point[j] = axes[j](rng);
        const double y = cube.slack(point) >= 0.0 ? box * f(point) : 0.0;
        const double delta = y - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (y - mean);
    }
    est.value = mean;
    est.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    return est;
}

Estimate volume(const ChainSpec& spec, VolumeMethod method, std::size_t samples,
                std::uint64_t seed)
{
    auto one = [](std::span<const double>) { return 1.0; };
    if (method == VolumeMethod::recursive_quadrature)
        return {integrate_twisted_cube(spec, one, 1e-8), 0.0, 0, 0};
    return monte_carlo_twisted_cube(spec, one, samples, seed);
}

ConjugateResult conjugate_search(const ChainSpec& spec, std::span<const double> eta,
                                 const ConjugateOptions& options)
{
    const std::size_t ell = spec.length();
    if (eta.size() != ell)
        throw std::invalid_argument("conjugate_search: dimension mismatch");

    const auto n = static_cast<Eigen::Index>(ell);
    const Eigen::Map<const Eigen::VectorXd> target(eta.data(), n);
    auto objective = [&](const Eigen::VectorXd& tau) {
        TauCoords t{std::vector<double>(tau.data(), tau.data() + n)};
        return 2.0 * target.dot(tau) - coords::kahler_potential_tau(spec, t);
    };

    ConjugateResult result;
    Eigen::VectorXd tau = Eigen::VectorXd::Zero(n);
    double value = objective(tau);
    for (int it = 0; it < options.max_iterations; ++it) {
        result.iterations = it;
        const TildeCoords tt =
            coords::tilde_from_tau(spec, TauCoords{std::vector<double>(tau.data(), tau.data() + n)});
        const ActionPoint j = coords::action_vars(spec, tt);
        const Eigen::VectorXd residual = target - Eigen::Map<const Eigen::VectorXd>(j.J.data(), n);
        const Eigen::VectorXd gradient = 2.0 * residual;
        result.gradient_norm = gradient.lpNorm<Eigen::Infinity>();
        if (result.gradient_norm < options.gradient_tol) {
            result.membership = Membership::interior;
            break;
        }

        // Newton direction when -Hessian/2 = dJ/dtau is positive definite,
        // otherwise plain ascent.
        Eigen::MatrixXd m = coords::action_jacobian(spec, tt);
        m = 0.5 * (m + m.transpose());
        const Eigen::LLT<Eigen::MatrixXd> llt(m);
        Eigen::VectorXd direction =
            llt.info() == Eigen::Success ? Eigen::VectorXd(llt.solve(residual)) : gradient;

        const double slope = gradient.dot(direction);
        double step = 1.0;
        Eigen::VectorXd trial = tau + direction;
        double trial_value = objective(trial);
        while (!(trial_value >= value + 1e-4 * step * slope) && step > 1e-14) {
            step *= 0.5;
            trial = tau + step * direction;
            trial_value = objective(trial);
        }
        if (step <= 1e-14)
            break;  // no ascent possible at working precision
        tau = trial;
        value = trial_value;
        if (tau.lpNorm<Eigen::Infinity>() > options.tau_bound)
            break;
    }
    if (tau.lpNorm<Eigen::Infinity>() > options.tau_bound)
        result.membership = Membership::boundary_or_exterior;
    result.maximizer.assign(tau.data(), tau.data() + n);
    return result;
}

Membership conjugate_membership(const ChainSpec& spec, std::span<const double> eta)
{
    return conjugate_search(spec, eta).membership;
}

std::string to_string(Membership m)
{
    return m == Membership::interior ? "interior" : "boundary-or-exterior";
}

namespace {

template <typename Row>
void write_csv(std::ostream& out, const std::vector<Row>& points, std::size_t ell,
               const std::string& prefix)
{
    for (std::size_t j = 0; j < ell; ++j)
        out << (j ? "," : "") << prefix << (j + 1);
    out << '\n';
    for (const auto& p : points) {
        for (std::size_t j = 0; j < ell; ++j)
            out << (j ? "," : "") << p[j];
        out << '\n';
    }
}

}  // namespace

void write_points_csv(std::ostream& out, const std::vector<WeightPoint>& points,
                      std::size_t ell, const std::string& prefix)
{
    std::vector<std::vector<long long>> rows;
    rows.reserve(points.size());
    for (const auto& p : points)
        rows.push_back(p.n);
    write_csv(out, rows, ell, prefix);
}

void write_points_csv(std::ostream& out, const std::vector<std::vector<double>>& points,
                      std::size_t ell, const std::string& prefix)
{
    write_csv(out, points, ell, prefix);
}

}  // namespace pchain
