// Shared generators and brute-force reference computations for the tests.
// Nothing here calls into the code under test except to build ChainSpec values.

#ifndef PCHAIN_TESTS_SUPPORT_HPP
#define PCHAIN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "pchain/core.hpp"

namespace testing_support {

using pchain::ChainSpec;

inline ChainSpec worked_spec()
{
    return ChainSpec({3, 5}, {{{2, 1}, 1}});
}

inline ChainSpec single(int l)
{
    return ChainSpec({l}, {});
}

/// ell in 1..max_ell, |c_ji| <= max_twist, 1 <= l_i <= max_weight.
inline ChainSpec random_spec(std::mt19937_64& rng, int max_ell = 4, int max_twist = 3,
                             int max_weight = 6)
{
    std::uniform_int_distribution<int> ell_dist(1, max_ell);
    std::uniform_int_distribution<int> twist(-max_twist, max_twist);
    std::uniform_int_distribution<int> weight(1, max_weight);
    const int ell = ell_dist(rng);
    std::vector<int> l(static_cast<std::size_t>(ell));
    for (auto& x : l)
        x = weight(rng);
    ChainSpec::TwistMap c;
    for (int j = 2; j <= ell; ++j)
        for (int i = 1; i < j; ++i)
            if (const int v = twist(rng); v != 0)
                c[{j, i}] = v;
    return ChainSpec(std::move(l), c);
}

/// Satisfies the twisted-cube inequalities, checked directly in exact integers.
inline bool inside(const ChainSpec& spec, const std::vector<long long>& n)
{
    for (std::size_t j = 0; j < spec.length(); ++j) {
        long long upper = spec.weight(j);
        for (std::size_t i = 0; i < j; ++i)
            upper -= static_cast<long long>(spec.twist(j, i)) * n[i];
        if (n[j] < 0 || n[j] > upper)
            return false;
    }
    return true;
}

/// Upper bounds n_j <= b_j for points of the cube: since n_i >= 0 only
/// negative twists can raise the right-hand side, b_j = l_j + sum_{c_ji<0} |c_ji| b_i.
inline std::vector<long long> crude_bounds(const ChainSpec& spec)
{
    std::vector<long long> b(spec.length());
    for (std::size_t j = 0; j < spec.length(); ++j) {
        long long v = spec.weight(j);
        for (std::size_t i = 0; i < j; ++i)
            if (spec.twist(j, i) < 0)
                v -= spec.twist(j, i) * b[i];
        b[j] = std::max(0LL, v);
    }
    return b;
}

/// Every integer point of the box [-pad, b+pad], in lexicographic order.
template <typename Visit>
void scan_box(const ChainSpec& spec, long long pad, Visit visit)
{
    const auto b = crude_bounds(spec);
    const std::size_t ell = spec.length();
    std::vector<long long> n(ell);
    for (std::size_t j = 0; j < ell; ++j)
        n[j] = -pad;
    while (true) {
        visit(n);
        std::size_t k = ell;
        while (k > 0) {
            --k;
            if (n[k] < b[k] + pad) {
                ++n[k];
                for (std::size_t r = k + 1; r < ell; ++r)
                    n[r] = -pad;
                break;
            }
            if (k == 0)
                return;
        }
    }
}

inline std::set<std::vector<long long>> brute_force_lattice(const ChainSpec& spec)
{
    std::set<std::vector<long long>> out;
    scan_box(spec, 0, [&](const std::vector<long long>& n) {
        if (inside(spec, n))
            out.insert(n);
    });
    return out;
}

/// sum_{k=0}^{l} e^{i k h}
inline std::complex<double> geometric_sum(int l, double h)
{
    std::complex<double> s(0.0, 0.0);
    for (int k = 0; k <= l; ++k)
        s += std::polar(1.0, k * h);
    return s;
}

/// Fixed specs with known structure followed by seeded random positive specs
/// whose lattice-point scan box stays small.
template <typename IsPositive>
std::vector<ChainSpec> test_specs(IsPositive is_positive, std::size_t random_count = 40,
                                  std::uint64_t seed = 20240611)
{
    std::vector<ChainSpec> out = {
        worked_spec(),
        single(1),
        single(2),
        single(5),
        ChainSpec({2, 3}, {}),
        ChainSpec({1, 2, 1}, {}),
        ChainSpec({2, 1}, {{{2, 1}, -1}}),
        ChainSpec({3, 5, 6}, {{{2, 1}, 1}, {{3, 1}, 1}, {{3, 2}, 1}}),
        ChainSpec({2, 4, 3, 2}, {{{2, 1}, 1}, {{3, 2}, -1}, {{4, 1}, 1}}),
    };
    std::mt19937_64 rng(seed);
    while (out.size() < 9 + random_count) {
        ChainSpec spec = random_spec(rng);
        long long box = 1;
        for (const long long b : crude_bounds(spec))
            box *= b + 5;
        if (box <= 20000 && is_positive(spec))
            out.push_back(std::move(spec));
    }
    return out;
}

}  // namespace testing_support

#endif
