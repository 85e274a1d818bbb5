#include "pchain/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "pchain/coords.hpp"
#include "pchain/core.hpp"
#include "pchain/partition.hpp"
#include "pchain/pathint.hpp"
#include "pchain/polytope.hpp"
#include "pchain/su2.hpp"

namespace pchain::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string spec_path;
    std::string out_path;
    std::string format;  // empty: infer from out_path
    std::string method;
    std::string h_text;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
    double beta = 1.0;
    PathIntegralParams path;
    int poisson_l = 2;
    int poisson_nmax = 200;
    double poisson_regulator = 1e-4;
    std::size_t axis = 1;
    std::size_t points = 101;
};

bool wants_csv(const RunConfig& cfg)
{
    if (!cfg.format.empty())
        return cfg.format == "csv";
    const std::string& p = cfg.out_path;
    return p.size() >= 4 && p.compare(p.size() - 4, 4, ".csv") == 0;
}

std::vector<double> parse_vector(const std::string& text)
{
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not a number in --H: '" + item + "'");
        }
    }
    return out;
}

TorusElement torus(const RunConfig& cfg, std::size_t ell)
{
    TorusElement h{std::vector<double>(ell, 0.0), cfg.beta};
    if (!cfg.h_text.empty())
        h.eps = parse_vector(cfg.h_text);
    if (h.eps.size() != ell)
        throw UsageError("--H needs " + std::to_string(ell) + " comma-separated values");
    if (!(cfg.beta > 0.0))
        throw UsageError("--beta must be positive");
    return h;
}

void complex_record(std::ostream& out, const std::string& key, std::complex<double> z)
{
    out << key << "_re: " << z.real() << '\n'
        << key << "_im: " << z.imag() << '\n'
        << key << "_abs: " << std::abs(z) << '\n';
}

void cmd_validate(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const Diagnostics diag = validate(spec);
    out << "valid: " << (diag.usable() ? "true" : "false") << '\n'
        << "ell: " << spec.length() << '\n'
        << "spec: " << serialize(spec) << '\n';
    for (const auto& e : diag.errors)
        out << "error: " << e << '\n';
    for (const auto& w : diag.warnings)
        out << "warning: " << w << '\n';
    if (!diag.usable())
        throw SpecError(diag.errors.front());
}

void cmd_positivity(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    out << "positive: " << (is_positive(spec) ? "true" : "false") << '\n';
}

void cmd_minmax(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const MinMaxTable table =
        cfg.method == "box" ? box_minmax_table(spec) : minmax_table(spec);
    if (wants_csv(cfg)) {
        out << "j,min,max\n";
        for (std::size_t j = 0; j < spec.length(); ++j)
            out << j + 1 << ',' << table.min[j] << ',' << table.max[j] << '\n';
        return;
    }
    for (std::size_t j = 0; j < spec.length(); ++j)
        out << "min_J" << j + 1 << ": " << table.min[j] << '\n'
            << "max_J" << j + 1 << ": " << table.max[j] << '\n';
    out << "positive: " << (is_positive(spec) ? "true" : "false") << '\n';
}

template <typename Points>
void emit_points(const RunConfig& cfg, std::ostream& out, const Points& points, std::size_t ell,
                 const std::string& prefix)
{
    if (wants_csv(cfg)) {
        write_points_csv(out, points, ell, prefix);
        return;
    }
    out << "count: " << points.size() << '\n';
    for (const auto& p : points) {
        out << "point: ";
        for (std::size_t j = 0; j < ell; ++j) {
            if constexpr (std::is_same_v<typename Points::value_type, WeightPoint>)
                out << (j ? "," : "") << p.n[j];
            else
                out << (j ? "," : "") << p[j];
        }
        out << '\n';
    }
}

void cmd_lattice(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    emit_points(cfg, out, lattice_points(spec), spec.length(), "n");
}

void cmd_vertices(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    emit_points(cfg, out, vertices(spec), spec.length(), "J");
}

bool monte_carlo(const RunConfig& cfg)
{
    if (cfg.method == "mc" || cfg.method == "monte-carlo")
        return true;
    if (cfg.method.empty() || cfg.method == "quadrature")
        return false;
    throw UsageError("--method must be quadrature or mc");
}

void estimate_record(std::ostream& out, const std::string& key, const Estimate& e, bool mc)
{
    out << key << ": " << e.value << '\n';
    out << "method: " << (mc ? "monte-carlo" : "quadrature") << '\n';
    if (mc)
        out << "std_error: " << e.std_error << '\n'
            << "samples: " << e.samples << '\n'
            << "seed: " << e.seed << '\n';
}

void cmd_volume(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const bool mc = monte_carlo(cfg);
    const Estimate e = volume(
        spec, mc ? VolumeMethod::monte_carlo : VolumeMethod::recursive_quadrature, cfg.samples,
        cfg.seed);
    estimate_record(out, "volume", e, mc);
}

void cmd_character(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const CharacterValue z = character(spec, torus(cfg, spec.length()));
    out << "count: " << z.count << '\n';
    complex_record(out, "value", z.value);
}

void cmd_classical(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const bool mc = monte_carlo(cfg);
    const Estimate e = classical_z(
        spec, torus(cfg, spec.length()),
        mc ? ClassicalMethod::monte_carlo : ClassicalMethod::quadrature, cfg.samples, cfg.seed);
    estimate_record(out, "classical", e, mc);
}

void cmd_report(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    write_report(out, quantum_classical_report(spec, torus(cfg, spec.length())));
}

void cmd_pathint(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const TorusElement h = torus(cfg, spec.length());
    const std::complex<double> exact = character(spec, h).value;
    std::complex<double> value;
    if (cfg.method == "analytic") {
        value = analytic_reduce(spec, h, cfg.path.slices);
    } else if (cfg.method.empty() || cfg.method == "numeric") {
        value = numeric_path_integral(spec, h, cfg.path);
        out << "N: " << cfg.path.slices << '\n'
            << "n_max: " << cfg.path.n_max << '\n'
            << "cutoff: " << cfg.path.phi_cutoff << '\n'
            << "regulator: " << cfg.path.regulator << '\n'
            << "quad_points: " << cfg.path.quad_points << '\n';
    } else {
        throw UsageError("--method must be numeric or analytic");
    }
    complex_record(out, "value", value);
    complex_record(out, "character", exact);
    out << "abs_error: " << std::abs(value - exact) << '\n';
}

void cmd_poisson(const RunConfig& cfg, std::ostream& out)
{
    const std::vector<double> h = cfg.h_text.empty() ? std::vector<double>{0.0}
                                                      : parse_vector(cfg.h_text);
    if (h.size() != 1)
        throw UsageError("--H takes a single value for poisson-check");
    if (cfg.poisson_l < 1)
        throw UsageError("--l must be at least 1");
    const std::complex<double> value =
        poisson_check(cfg.poisson_l, h[0], cfg.poisson_nmax, cfg.poisson_regulator);
    std::complex<double> geometric(0.0, 0.0);
    for (int k = 0; k <= cfg.poisson_l; ++k)
        geometric += std::polar(1.0, k * h[0]);
    out << "l: " << cfg.poisson_l << '\n'
        << "n_max: " << cfg.poisson_nmax << '\n'
        << "regulator: " << cfg.poisson_regulator << '\n';
    complex_record(out, "value", value);
    complex_record(out, "geometric", geometric);
    out << "abs_error: " << std::abs(value - geometric) << '\n';
}

// Matrix factorization, gradient and determinant checks at random points.
void cmd_oracle(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    const std::size_t ell = spec.length();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    double matrix_err = 0.0;
    double gradient_err = 0.0;
    double det_err = 0.0;
    double lemma_err = 0.0;
    constexpr double step = 1e-5;
    for (std::size_t k = 0; k < cfg.points; ++k) {
        TildeCoords tt{std::vector<double>(ell)};
        for (auto& x : tt.tau_tilde)
            x = coord(rng);
        const TauCoords t = coords::tau_from_tilde(spec, tt);

        std::vector<std::complex<double>> z(ell);
        for (std::size_t i = 0; i < ell; ++i)
            z[i] = std::polar(std::exp(t.tau[i]), angle(rng));
        const auto zt = su2::chain_tilde_oracle(spec, z);
        for (std::size_t i = 0; i < ell; ++i) {
            const double expect = std::exp(tt.tau_tilde[i]);
            matrix_err = std::max(matrix_err, std::abs(std::abs(zt[i]) - expect) / expect);
        }

        const ActionPoint j = coords::action_vars(spec, tt);
        for (std::size_t i = 0; i < ell; ++i) {
            TauCoords up = t;
            TauCoords down = t;
            up.tau[i] += step;
            down.tau[i] -= step;
            const double fd = (coords::kahler_potential_tau(spec, up) -
                               coords::kahler_potential_tau(spec, down)) /
                              (4.0 * step);
            gradient_err = std::max(gradient_err, std::abs(j.J[i] - fd));
        }
        det_err = std::max(det_err, coords::det_identity_residual(spec, t));
        lemma_err = std::max(lemma_err, su2::lemma23_residual(std::exp(coord(rng)),
                                                              std::polar(std::exp(coord(rng)),
                                                                         angle(rng))));
    }
    out << "points: " << cfg.points << '\n'
        << "seed: " << cfg.seed << '\n'
        << "max_matrix_rel_error: " << matrix_err << '\n'
        << "max_lemma_residual: " << lemma_err << '\n'
        << "max_gradient_error: " << gradient_err << '\n'
        << "max_det_identity_residual: " << det_err << '\n';
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    const ChainSpec spec = load_chain_spec(cfg.spec_path);
    if (cfg.axis < 1 || cfg.axis > spec.length())
        throw UsageError("--axis must be in 1.." + std::to_string(spec.length()));
    const auto rows = sweep(spec, torus(cfg, spec.length()), cfg.axis - 1, cfg.points);
    if (cfg.format == "record") {
        out << "count: " << rows.size() << '\n';
        for (const auto& r : rows)
            out << "row: " << r.eps << ',' << r.character.real() << ',' << r.character.imag()
                << ',' << std::abs(r.character) << ',' << r.classical << '\n';
        return;
    }
    write_sweep_csv(out, rows);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Toric P^1-chain toolkit"};
    app.require_subcommand(1);

    using Handler = void (*)(const RunConfig&, std::ostream&);
    std::vector<std::pair<CLI::App*, Handler>> handlers;

    auto add = [&](const std::string& name, const std::string& help, Handler handler,
                   bool needs_spec = true) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (needs_spec)
            sub->add_option("spec", cfg.spec_path, "Spec file (JSON)")->required();
        sub->add_option("--out,-o", cfg.out_path, "Write output to this file");
        sub->add_option("--format", cfg.format, "csv or record")
            ->check(CLI::IsMember({"csv", "record"}));
        handlers.emplace_back(sub, handler);
        return sub;
    };

    add("validate", "Check a spec file", cmd_validate);
    add("positivity", "Test the positivity condition", cmd_positivity);
    add("minmax", "Global min/max of each action variable", cmd_minmax)
        ->add_option("--method", cfg.method, "exact or box")
        ->check(CLI::IsMember({"exact", "box"}));
    add("lattice", "Enumerate the weight set", cmd_lattice);
    add("vertices", "Vertices of the twisted cube", cmd_vertices);

    for (auto [name, help, handler] :
         {std::tuple{"volume", "Volume of the twisted cube", cmd_volume},
          std::tuple{"classical", "Classical partition function", cmd_classical}}) {
        CLI::App* sub = add(name, help, handler);
        sub->add_option("--method", cfg.method, "quadrature or mc");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
        sub->add_option("--seed", cfg.seed, "Random seed");
        if (std::string(name) == "classical") {
            sub->add_option("--H", cfg.h_text, "eps vector, comma separated");
            sub->add_option("--beta", cfg.beta, "Inverse temperature");
        }
    }

    add("character", "Lattice-sum character Z(iH)", cmd_character)
        ->add_option("--H", cfg.h_text, "eps vector, comma separated");
    {
        CLI::App* sub = add("report", "Quantum vs classical partition functions", cmd_report);
        sub->add_option("--H", cfg.h_text, "eps vector, comma separated");
        sub->add_option("--beta", cfg.beta, "Inverse temperature");
    }
    {
        CLI::App* sub = add("pathint", "Path-integral evaluation of the character", cmd_pathint);
        sub->add_option("--H", cfg.h_text, "eps vector, comma separated");
        sub->add_option("--method", cfg.method, "numeric or analytic");
        sub->add_option("--slices", cfg.path.slices, "Time slices N");
        sub->add_option("--nmax", cfg.path.n_max, "Winding cutoff");
        sub->add_option("--cutoff", cfg.path.phi_cutoff, "Angle cutoff Lambda");
        sub->add_option("--regulator", cfg.path.regulator, "Winding damping");
        sub->add_option("--quad", cfg.path.quad_points, "Quadrature nodes per J integral");
    }
    {
        CLI::App* sub = add("poisson-check", "Damped Poisson sum vs geometric sum", cmd_poisson,
                            false);
        sub->add_option("--l", cfg.poisson_l, "Interval length");
        sub->add_option("--H", cfg.h_text, "Hamiltonian coefficient");
        sub->add_option("--nmax", cfg.poisson_nmax, "Winding cutoff");
        sub->add_option("--regulator", cfg.poisson_regulator, "Winding damping");
    }
    {
        CLI::App* sub = add("oracle", "Independent checks at random points", cmd_oracle);
        sub->add_option("--points", cfg.points, "Random points");
        sub->add_option("--seed", cfg.seed, "Random seed");
    }
    {
        CLI::App* sub = add("sweep", "Character and classical Z on an eps grid", cmd_sweep);
        sub->add_option("--H", cfg.h_text, "Fixed eps vector, comma separated");
        sub->add_option("--axis", cfg.axis, "1-based eps coordinate to sweep");
        sub->add_option("--points", cfg.points, "Grid points over [-pi, pi]");
        sub->add_option("--beta", cfg.beta, "Inverse temperature");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        const int code = app.exit(e, help, err);
        out << help.str();
        return code == 0 ? 0 : 1;
    }

    try {
        std::ostringstream buffer;
        buffer << std::setprecision(12);
        for (const auto& [sub, handler] : handlers)
            if (sub->parsed())
                handler(cfg, buffer);
        if (cfg.out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(cfg.out_path, std::ios::binary);
            if (!file)
                throw UsageError("cannot write " + cfg.out_path);
            file << buffer.str();
            if (!file)
                throw UsageError("write failed: " + cfg.out_path);
        }
        return 0;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotPositiveError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pchain::cli
