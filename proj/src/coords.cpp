#include "pchain/coords.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pchain::coords {

namespace {

void require_length(const ChainSpec& spec, std::size_t n, const char* what)
{
    if (n != spec.length())
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(spec.length()) + " coordinates, got " +
                                    std::to_string(n));
}

// Beyond this |x| the logistic is 0 or 1 to double precision.
constexpr double kClamp = 350.0;

}  // namespace

double a_of_r(double r)
{
    return 1.0 + r * r;
}

double potential_1d(double x)
{
    if (x > 0.0)
        return 2.0 * x + std::log1p(std::exp(-2.0 * x));
    return std::log1p(std::exp(2.0 * x));
}

double action_1d(double x)
{
    if (x > kClamp)
        return 1.0;
    if (x < -kClamp)
        return 0.0;
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-2.0 * x));
    const double e = std::exp(2.0 * x);
    return e / (1.0 + e);
}

double curvature_1d(double x)
{
    const double e = std::exp(-2.0 * std::abs(x));
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

TauCoords tau_from_tilde(const ChainSpec& spec, const TildeCoords& tt)
{
    require_length(spec, tt.tau_tilde.size(), "tau_from_tilde");
    const std::size_t ell = spec.length();
    TauCoords out{tt.tau_tilde};
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = i + 1; j < ell; ++j)
            if (const int c = spec.twist(j, i); c != 0)
                out.tau[i] += 0.5 * c * potential_1d(tt.tau_tilde[j]);
    return out;
}

TildeCoords tilde_from_tau(const ChainSpec& spec, const TauCoords& t)
{
    require_length(spec, t.tau.size(), "tilde_from_tau");
    const std::size_t ell = spec.length();
    TildeCoords out{std::vector<double>(ell)};
    for (std::size_t step = 0; step < ell; ++step) {
        const std::size_t i = ell - 1 - step;
        double shift = 0.0;
        for (std::size_t j = i + 1; j < ell; ++j)
            if (const int c = spec.twist(j, i); c != 0)
                shift += 0.5 * c * potential_1d(out.tau_tilde[j]);
        out.tau_tilde[i] = t.tau[i] - shift;
    }
    return out;
}

double kahler_potential(const ChainSpec& spec, const TildeCoords& tt)
{
    require_length(spec, tt.tau_tilde.size(), "kahler_potential");
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.length(); ++i)
        sum += spec.weight(i) * potential_1d(tt.tau_tilde[i]);
    return sum;
}

double kahler_potential_tau(const ChainSpec& spec, const TauCoords& t)
{
    return kahler_potential(spec, tilde_from_tau(spec, t));
}

ActionPoint action_vars(const ChainSpec& spec, const TildeCoords& tt)
{
    require_length(spec, tt.tau_tilde.size(), "action_vars");
    const std::size_t ell = spec.length();
    ActionPoint out{std::vector<double>(ell)};
    for (std::size_t j = 0; j < ell; ++j) {
        double inner = spec.weight(j);
        for (std::size_t i = 0; i < j; ++i)
            inner -= spec.twist(j, i) * out.J[i];
        out.J[j] = action_1d(tt.tau_tilde[j]) * inner;
    }
    return out;
}

std::vector<double> residual_weights(const ChainSpec& spec, const ActionPoint& point)
{
    require_length(spec, point.J.size(), "residual_weights");
    std::vector<double> out(spec.length());
    for (std::size_t j = 0; j < spec.length(); ++j) {
        double inner = spec.weight(j);
        for (std::size_t i = 0; i < j; ++i)
            inner -= spec.twist(j, i) * point.J[i];
        out[j] = inner;
    }
    return out;
}

Eigen::MatrixXd hessian(const ChainSpec& spec, const TauCoords& t, double step)
{
    require_length(spec, t.tau.size(), "hessian");
    const auto ell = static_cast<Eigen::Index>(spec.length());
    Eigen::MatrixXd h(ell, ell);
    for (Eigen::Index i = 0; i < ell; ++i) {
        TauCoords up = t;
        TauCoords down = t;
        up.tau[static_cast<std::size_t>(i)] += step;
        down.tau[static_cast<std::size_t>(i)] -= step;
        const ActionPoint ju = action_vars(spec, tilde_from_tau(spec, up));
        const ActionPoint jd = action_vars(spec, tilde_from_tau(spec, down));
        for (Eigen::Index j = 0; j < ell; ++j) {
            const auto js = static_cast<std::size_t>(j);
            h(i, j) = (ju.J[js] - jd.J[js]) / (2.0 * step);
        }
    }
    return h;
}

Eigen::MatrixXd tau_tilde_jacobian(const ChainSpec& spec, const TildeCoords& tt)
{
    require_length(spec, tt.tau_tilde.size(), "tau_tilde_jacobian");
    const auto ell = static_cast<Eigen::Index>(spec.length());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(ell, ell);
    for (Eigen::Index i = 0; i < ell; ++i)
        for (Eigen::Index k = i + 1; k < ell; ++k)
            m(i, k) = spec.twist(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) *
                      action_1d(tt.tau_tilde[static_cast<std::size_t>(k)]);
    return m;
}

Eigen::MatrixXd action_jacobian(const ChainSpec& spec, const TildeCoords& tt)
{
    require_length(spec, tt.tau_tilde.size(), "action_jacobian");
    const std::size_t ell = spec.length();
    const auto n = static_cast<Eigen::Index>(ell);
    const ActionPoint point = action_vars(spec, tt);
    const std::vector<double> inner = residual_weights(spec, point);

    // dj(j, k) = dJ_j / dtilde_k, lower triangular.
    Eigen::MatrixXd dj = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < ell; ++j) {
        const double x = action_1d(tt.tau_tilde[j]);
        const auto jj = static_cast<Eigen::Index>(j);
        dj(jj, jj) = 0.5 * curvature_1d(tt.tau_tilde[j]) * inner[j];
        for (std::size_t i = 0; i < j; ++i)
            if (const int c = spec.twist(j, i); c != 0)
                dj.row(jj) -= x * c * dj.row(static_cast<Eigen::Index>(i));
    }
    // dJ/dtilde = (dJ/dtau) (dtau/dtilde); rows of the result index tau.
    const Eigen::MatrixXd dtau = tau_tilde_jacobian(spec, tt);
    return dtau.transpose().triangularView<Eigen::Lower>().solve(dj.transpose());
}

double determinant_product(const ChainSpec& spec, const TildeCoords& tt)
{
    const ActionPoint point = action_vars(spec, tt);
    const std::vector<double> inner = residual_weights(spec, point);
    double prod = 1.0;
    for (std::size_t j = 0; j < spec.length(); ++j)
        prod *= inner[j] * 0.5 * curvature_1d(tt.tau_tilde[j]);
    return prod;
}

double det_identity_residual(const ChainSpec& spec, const TauCoords& t)
{
    const double det = hessian(spec, t).determinant();
    const double prod = determinant_product(spec, tilde_from_tau(spec, t));
    return std::abs(det - prod) / std::max(1.0, std::abs(prod));
}

}  // namespace pchain::coords
