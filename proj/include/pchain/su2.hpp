// 2x2 complex matrix realizations of SL(2,C) and its decompositions.
//
// This module is deliberately independent of the closed-form coordinate
// recursions in coords.hpp: it reproduces them by literal matrix factorization
// so the two can be checked against each other.

#ifndef PCHAIN_SU2_HPP
#define PCHAIN_SU2_HPP

#include <complex>
#include <span>
#include <vector>

#include "pchain/core.hpp"

namespace pchain::su2 {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix (a b; c d).
struct Mat2 {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Complex det() const { return a * d - b * c; }
    Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    double max_abs_diff(const Mat2& other) const;

    static Mat2 identity() { return {}; }
    static Mat2 diagonal(Complex t) { return {t, 0.0, 0.0, 1.0 / t}; }
    /// exp(z E_{-alpha}) = (1 0; z 1)
    static Mat2 lower_unipotent(Complex z) { return {1.0, 0.0, z, 1.0}; }
    /// exp(n E_alpha) = (1 n; 0 1)
    static Mat2 upper_unipotent(Complex n) { return {1.0, n, 0.0, 1.0}; }
    /// Representative of the reflection s.
    static Mat2 reflection() { return {0.0, -1.0, 1.0, 0.0}; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);

/// g = u * diag(t, 1/t) * (1 n; 0 1) with u special unitary and t > 0.
struct IwasawaParts {
    Mat2 u;
    double t = 1.0;
    Complex n{0.0};

    Mat2 compose() const;
};

/// g = (1 0; v 1) * diag(t, 1/t) * (1 n; 0 1).
struct GaussParts {
    Complex v{0.0};
    Complex t{1.0};
    Complex n{0.0};

    Mat2 compose() const;
};

/// Raised when g.B is the point at infinity, where N^- T N does not cover g.
class SingularGaussError : public Error {
public:
    SingularGaussError() : Error("gauss decomposition undefined: g.B at ξ_∞") {}
};

/// Gram-Schmidt on the columns of g, normalized so the torus part is real and
/// positive. Defined for every unimodular g.
IwasawaParts iwasawa(const Mat2& g);

/// Throws SingularGaussError when |g.a| < 1e-12.
GaussParts gauss(const Mat2& g);

/// |t(iwasawa(diag(a,1/a) exp(z E_{-alpha}))) - a sqrt(1 + (|z|/a^2)^2)|.
double lemma23_residual(double a_pos, Complex z);

/// Tilde coordinates of the point with affine coordinates z (0-based, index 0
/// innermost), obtained by threading the positive torus part of each stage's
/// Iwasawa factor through the twist integers into the next stage.
std::vector<Complex> chain_tilde_oracle(const ChainSpec& spec, std::span<const Complex> z);

}  // namespace pchain::su2

#endif
