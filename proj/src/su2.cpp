#include "pchain/su2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pchain::su2 {

double Mat2::max_abs_diff(const Mat2& other) const
{
    return std::max({std::abs(a - other.a), std::abs(b - other.b), std::abs(c - other.c),
                     std::abs(d - other.d)});
}

Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

Mat2 IwasawaParts::compose() const
{
    return u * Mat2::diagonal(t) * Mat2::upper_unipotent(n);
}

Mat2 GaussParts::compose() const
{
    return Mat2::lower_unipotent(v) * Mat2::diagonal(t) * Mat2::upper_unipotent(n);
}

IwasawaParts iwasawa(const Mat2& g)
{
    // First column of g is t * (first column of u); the second column of u is
    // the unit vector completing it to an element of SU(2).
    const double t = std::hypot(std::abs(g.a), std::abs(g.c));
    const Complex p = g.a / t;
    const Complex q = g.c / t;
    IwasawaParts out;
    out.u = {p, -std::conj(q), q, std::conj(p)};
    out.t = t;
    const Mat2 b = out.u.adjoint() * g;
    out.n = b.b / t;
    return out;
}

GaussParts gauss(const Mat2& g)
{
    if (std::abs(g.a) < 1e-12)
        throw SingularGaussError();
    return {g.c / g.a, g.a, g.b / g.a};
}

double lemma23_residual(double a_pos, Complex z)
{
    if (!(a_pos > 0.0))
        throw std::invalid_argument("lemma23_residual: a must be positive");
    const Mat2 g = Mat2::diagonal(a_pos) * Mat2::lower_unipotent(z);
    const double computed = iwasawa(g).t;
    const double r_tilde = std::abs(z) / (a_pos * a_pos);
    const double predicted = a_pos * std::sqrt(1.0 + r_tilde * r_tilde);
    return std::abs(computed - predicted);
}

std::vector<Complex> chain_tilde_oracle(const ChainSpec& spec, std::span<const Complex> z)
{
    const std::size_t ell = spec.length();
    if (z.size() != ell)
        throw std::invalid_argument("chain_tilde_oracle: expected " + std::to_string(ell) +
                                    " coordinates");

    // log of the positive diagonal produced at each stage (the Iwasawa torus
    // part divided by the incoming torus part).
    std::vector<double> stage_log_scale(ell, 0.0);
    std::vector<Complex> z_tilde(ell);

    for (std::size_t step = 0; step < ell; ++step) {
        const std::size_t i = ell - 1 - step;  // outermost stage first

        // Accumulated torus element evaluated on root alpha_i via c_ki.
        double log_char = 0.0;
        for (std::size_t k = i + 1; k < ell; ++k)
            log_char += spec.twist(k, i) * stage_log_scale[k];
        const double t_in = std::exp(0.5 * log_char);

        // s_i g_i = exp(-z_i E_{-alpha}), acted on by the accumulated diagonal.
        const Mat2 g = Mat2::diagonal(t_in) * Mat2::lower_unipotent(-z[i]);
        const GaussParts lower = gauss(g);
        z_tilde[i] = -lower.v;
        stage_log_scale[i] = std::log(iwasawa(g).t) - std::log(t_in);
    }
    return z_tilde;
}

}  // namespace pchain::su2
