#include "pchain/pathint.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "pchain/polytope.hpp"

namespace pchain {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kMargin = 0.5;
constexpr int kMaxSlices = 3;
constexpr int kMaxQuadPoints = 1 << 15;
constexpr int kPanelOrder = 8;

// int_lo^hi exp(i k y) dy
Complex segment(double k, double lo, double hi)
{
    const double d = hi - lo;
    const double kd = k * d;
    const Complex start = std::polar(1.0, k * lo);
    if (std::abs(kd) < 1e-3) {
        const Complex x(0.0, kd);
        return start * d * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
    }
    return (std::polar(1.0, k * hi) - start) / Complex(0.0, k);
}

// 1 on [a, b], raised-cosine shoulders of width kMargin on either side.
struct Bump {
    double a;
    double b;

    double operator()(double y) const
    {
        if (y >= a && y <= b)
            return 1.0;
        if (y <= a - kMargin || y >= b + kMargin)
            return 0.0;
        const double c = y < a ? a : b;
        return 0.5 + 0.5 * std::cos(kPi * (y - c) / kMargin);
    }

    double lower() const { return a - kMargin; }
    double upper() const { return b + kMargin; }

    // int bump(y) exp(i k y) dy
    Complex fourier(double k) const
    {
        const double w = kPi / kMargin;
        auto shoulder = [&](double c, double lo, double hi) {
            const Complex cosine = 0.5 * std::polar(1.0, -w * c) * segment(k + w, lo, hi) +
                                   0.5 * std::polar(1.0, w * c) * segment(k - w, lo, hi);
            return 0.5 * segment(k, lo, hi) + 0.5 * cosine;
        };
        return segment(k, a, b) + shoulder(a, a - kMargin, a) + shoulder(b, b, b + kMargin);
    }
};

struct Nodes {
    std::vector<double> x;
    std::vector<double> w;
};

// Composite Gauss-Legendre rule with `total` nodes on [lo, hi].
Nodes composite_gauss(double lo, double hi, int total)
{
    using Rule = boost::math::quadrature::gauss<double, kPanelOrder>;
    const int panels = total / kPanelOrder;
    const double width = (hi - lo) / panels;
    Nodes out;
    out.x.reserve(static_cast<std::size_t>(total));
    out.w.reserve(static_cast<std::size_t>(total));
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        for (std::size_t k = 0; k < abscissa.size(); ++k)
            for (const double sign : {-1.0, 1.0}) {
                out.x.push_back(mid + sign * 0.5 * width * abscissa[k]);
                out.w.push_back(0.5 * width * weights[k]);
            }
    }
    return out;
}

void check_params(const ChainSpec& spec, const TorusElement& h, const PathIntegralParams& p)
{
    if (spec.length() != 1)
        throw BudgetError("numeric path integral supports ell = 1 only");
    if (p.slices < 1 || p.slices > kMaxSlices)
        throw BudgetError("numeric path integral supports 1 <= N <= " +
                          std::to_string(kMaxSlices));
    if (p.quad_points < kPanelOrder || p.quad_points > kMaxQuadPoints ||
        p.quad_points % kPanelOrder != 0)
        throw BudgetError("quad_points must be a multiple of " + std::to_string(kPanelOrder) +
                          " in [" + std::to_string(kPanelOrder) + ", " +
                          std::to_string(kMaxQuadPoints) + "]");
    if (p.n_max < 0)
        throw std::invalid_argument("n_max must be non-negative");
    if (!(p.phi_cutoff > 0.0) || !(p.regulator > 0.0))
        throw std::invalid_argument("phi cutoff and regulator must be positive");
    if (h.eps.size() != 1)
        throw std::invalid_argument("torus element must have 1 coordinate");
}

}  // namespace

double discretized_action(std::span<const double> J, std::span<const double> phi, double hcoef)
{
    if (J.size() != phi.size())
        throw std::invalid_argument("discretized_action: J and phi paths differ in length");
    if (J.size() < 2)
        throw std::invalid_argument("discretized_action: need at least one time slice");
    const std::size_t n = J.size() - 1;
    const double dt = 1.0 / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        sum += phi[k] * (J[k + 1] - J[k]) + hcoef * J[k] * dt;
    return J[n] * phi[n] - J[0] * phi[0] - sum;
}

std::complex<double> analytic_reduce(const ChainSpec& spec, const TorusElement& h, int slices)
{
    if (slices < 1)
        throw std::invalid_argument("analytic_reduce: N must be at least 1");
    if (h.eps.size() != spec.length())
        throw std::invalid_argument("analytic_reduce: dimension mismatch");
    if (!is_positive(spec))
        throw NotPositiveError();

    // The phi_k integrals force J_0 = J_1 = ... = J_N, so the Hamiltonian term
    // sums to (N dt) <J, H>.
    const double dt = 1.0 / slices;
    double elapsed = 0.0;
    for (int k = 0; k < slices; ++k)
        elapsed += dt;

    // Poisson summation over the winding of coordinate j turns
    // int_0^{upper} dJ_j into a sum over the integers in [0, upper].
    const std::size_t ell = spec.length();
    std::vector<long long> n(ell, 0);
    Complex total(0.0, 0.0);
    auto reduce = [&](auto&& self, std::size_t j) -> void {
        if (j == ell) {
            double pairing = 0.0;
            for (std::size_t i = 0; i < ell; ++i)
                pairing += static_cast<double>(n[i]) * h.eps[i];
            total += std::polar(1.0, elapsed * pairing);
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
    reduce(reduce, 0);
    return total;
}

std::complex<double> numeric_path_integral(const ChainSpec& spec, const TorusElement& h,
                                           const PathIntegralParams& params)
{
    check_params(spec, h, params);
    if (!is_positive(spec))
        throw NotPositiveError();

    const MinMaxTable range = minmax_table(spec);
    const Bump bump{range.min[0], range.max[0]};
    const Nodes nodes = composite_gauss(bump.lower(), bump.upper(), params.quad_points);
    const std::size_t m = nodes.x.size();
    const int slices = params.slices;
    const double lambda = params.phi_cutoff;

    // The trace runs e^{iH} as evolution by -H, so the action carries -eps.
    const double hcoef = -h.eps[0];

    // Per-slice factor: quadrature weight, bump, and exp(-i hcoef J dt).
    std::vector<Complex> slice(m);
    for (std::size_t a = 0; a < m; ++a)
        slice[a] = nodes.w[a] * bump(nodes.x[a]) * std::polar(1.0, -hcoef * nodes.x[a] / slices);

    // Winding sum sum_n exp(-eps n^2) exp(2 pi i n J_N), real by symmetry.
    std::vector<double> winding(m);
    for (std::size_t a = 0; a < m; ++a) {
        double w = 1.0;
        for (int k = 1; k <= params.n_max; ++k)
            w += 2.0 * std::exp(-params.regulator * k * k) * std::cos(2.0 * kPi * k * nodes.x[a]);
        winding[a] = w;
    }

    // phi_0 = 0 by translation invariance; phi_1 .. phi_{N-1} each give the
    // Dirichlet kernel sin(Lambda x) / (pi x) in J_{k+1} - J_k.
    std::vector<double> s(m);
    std::vector<double> c(m);
    for (std::size_t a = 0; a < m; ++a) {
        s[a] = std::sin(lambda * nodes.x[a]);
        c[a] = std::cos(lambda * nodes.x[a]);
    }
    std::vector<Complex> v = slice;
    std::vector<Complex> next(m);
    for (int k = 1; k < slices; ++k) {
        for (std::size_t b = 0; b < m; ++b) {
            Complex acc(0.0, 0.0);
            for (std::size_t a = 0; a < m; ++a) {
                const double dx = nodes.x[b] - nodes.x[a];
                const double kernel =
                    a == b ? lambda / kPi : (s[b] * c[a] - c[b] * s[a]) / (kPi * dx);
                acc += kernel * v[a];
            }
            next[b] = acc * slice[b];
        }
        v.swap(next);
    }

    Complex total(0.0, 0.0);
    for (std::size_t b = 0; b < m; ++b)
        total += v[b] * winding[b];
    return total;
}

std::complex<double> poisson_check(int l, double hcoef, int n_max, double regulator)
{
    if (l < 1)
        throw std::invalid_argument("poisson_check: l must be at least 1");
    if (n_max < 0)
        throw std::invalid_argument("poisson_check: n_max must be non-negative");
    const Bump bump{0.0, static_cast<double>(l)};
    Complex total = bump.fourier(hcoef);
    for (int n = 1; n <= n_max; ++n) {
        const double damp = std::exp(-regulator * n * n);
        total += damp * (bump.fourier(hcoef - 2.0 * kPi * n) + bump.fourier(hcoef + 2.0 * kPi * n));
    }
    return total;
}

std::vector<ConvergenceRow> convergence_sweep(const ChainSpec& spec, const TorusElement& h,
                                              const std::vector<PathIntegralParams>& grid)
{
    const Complex exact = character(spec, h).value;
    std::vector<ConvergenceRow> rows;
    rows.reserve(grid.size());
    for (const auto& p : grid) {
        const Complex value = numeric_path_integral(spec, h, p);
        rows.push_back({p, value, std::abs(value - exact)});
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows)
{
    out << "lambda,regulator,n_max,N,re,im,abs_error_vs_character\n";
    for (const auto& r : rows)
        out << r.params.phi_cutoff << ',' << r.params.regulator << ',' << r.params.n_max << ','
            << r.params.slices << ',' << r.value.real() << ',' << r.value.imag() << ','
            << r.abs_error << '\n';
}

}  // namespace pchain
