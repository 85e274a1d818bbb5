// Log-radial coordinates, Kahler potential and action variables of a chain.
//
// With z_i = exp(tau_i + i phi_i), the tilde coordinates are related by
//     tau_i = tilde_i + sum_{j>i} (c_ji / 2) K(tilde_j),   K(x) = log(1 + e^{2x}),
// the potential is K_lambda = sum_i l_i K(tilde_i), and the action variables
//     J_j = (1/2) dK_lambda / dtau_j = Jbar(tilde_j) (l_j - sum_{i<j} c_ji J_i)
// with Jbar(x) = e^{2x} / (1 + e^{2x}).

#ifndef PCHAIN_COORDS_HPP
#define PCHAIN_COORDS_HPP

#include <vector>

#include <Eigen/Dense>

#include "pchain/core.hpp"

namespace pchain {

struct TildeCoords {
    std::vector<double> tau_tilde;
};

struct TauCoords {
    std::vector<double> tau;
};

struct ActionPoint {
    std::vector<double> J;
};

namespace coords {

/// a(r) = 1 + r^2
double a_of_r(double r);
/// K(x) = log(1 + e^{2x}), overflow-free.
double potential_1d(double x);
/// Jbar(x) = K'(x) / 2, the logistic function of 2x; values in [0, 1].
double action_1d(double x);
/// K''(x) = 4 Jbar (1 - Jbar).
double curvature_1d(double x);

TauCoords tau_from_tilde(const ChainSpec& spec, const TildeCoords& tt);
TildeCoords tilde_from_tau(const ChainSpec& spec, const TauCoords& t);

double kahler_potential(const ChainSpec& spec, const TildeCoords& tt);

/// K_lambda as a function of tau (composition with tilde_from_tau).
double kahler_potential_tau(const ChainSpec& spec, const TauCoords& t);

ActionPoint action_vars(const ChainSpec& spec, const TildeCoords& tt);

/// Inner factors l_j - L_j at the given point.
std::vector<double> residual_weights(const ChainSpec& spec, const ActionPoint& point);

/// Matrix H(i, j) = dJ_j / dtau_i = (1/2) d^2 K_lambda / dtau_i dtau_j by central
/// differences of action_vars o tilde_from_tau.
Eigen::MatrixXd hessian(const ChainSpec& spec, const TauCoords& t, double step = 1e-5);

/// Same matrix from the chain rule; used where derivatives feed an optimizer.
Eigen::MatrixXd action_jacobian(const ChainSpec& spec, const TildeCoords& tt);

/// Jacobian d tau / d tilde (row i, column k); unit upper triangular.
Eigen::MatrixXd tau_tilde_jacobian(const ChainSpec& spec, const TildeCoords& tt);

/// prod_j (l_j - L_j) * K''(tilde_j) / 2
double determinant_product(const ChainSpec& spec, const TildeCoords& tt);

/// |det(hessian) - determinant_product| / max(1, |determinant_product|)
double det_identity_residual(const ChainSpec& spec, const TauCoords& t);

}  // namespace coords
}  // namespace pchain

#endif
