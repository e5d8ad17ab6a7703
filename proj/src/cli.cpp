#include "isodirac/cli.hpp"

#include "isodirac/analytic_pt.hpp"
#include "isodirac/expr.hpp"
#include "isodirac/presets.hpp"
#include "isodirac/riccati_family.hpp"
#include "isodirac/susy_core.hpp"
#include "isodirac/witten_index.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>

namespace isodirac::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

class CsvFile {
public:
    CsvFile(const fs::path& path, std::initializer_list<std::string_view> header) : path_(path) {
        os_.open(path, std::ios::binary | std::ios::trunc);
        if (!os_) throw DomainError("cannot open " + path.string() + " for writing");
        write(header);
    }

    void row(std::initializer_list<std::string> cells) { write(cells); }

    const fs::path& path() const { return path_; }

private:
    template <class Cells>
    void write(const Cells& cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) os_ << ',';
            os_ << c;
            first = false;
        }
        os_ << '\n';
    }

    fs::path path_;
    std::ofstream os_;
};

json config_json(const RunConfig& c) {
    return json{
        {"preset", c.f_expr ? json(nullptr) : json(c.preset)},
        {"ell", c.ell},
        {"f_expr", c.f_expr ? json(*c.f_expr) : json(nullptr)},
        {"x_min", c.x_min},
        {"x_max", c.x_max},
        {"n", c.n},
        {"lambda", c.lambdas},
        {"beta", c.betas},
        {"levels", c.levels},
        {"out", c.out.string()},
        {"s", c.s_values},
    };
}

void write_summary(const RunConfig& c, const std::string& command, json body, CommandResult& result) {
    const fs::path path = c.out / (command + "_summary.json");
    json files = json::array();
    for (const auto& f : result.files) files.push_back(f.filename().string());
    body["command"] = command;
    body["config"] = config_json(c);
    body["files"] = files;
    body["partial_failure"] = result.partial_failure;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DomainError("cannot open " + path.string() + " for writing");
    os << body.dump(2) << '\n';
    result.files.push_back(path);
}

Grid make_grid(const RunConfig& c) { return Grid(c.x_min, c.x_max, c.n); }

Superpotential make_superpotential(const RunConfig& c) {
    const Grid grid = make_grid(c);
    if (c.f_expr) return Superpotential::detect(expr::sample(expr::parse(*c.f_expr), grid));
    if (c.preset == "pt") return tanh_ladder_superpotential(grid, c.ell);
    return kink_superpotential(grid);
}

int ladder_ell(const RunConfig& c) {
    if (c.f_expr) throw DomainError("the pt command needs a preset superpotential, not an expression");
    return c.preset == "pt" ? c.ell : 2;
}

std::vector<double> bound_part(const Spectrum& s, double edge, double spacing) {
    std::vector<double> out;
    for (double e : s.eigenvalues)
        if (is_bound_level(e, edge, spacing)) out.push_back(e);
    return out;
}

json edge_json(double edge) { return std::isfinite(edge) ? json(edge) : json(nullptr); }

void prepare_output(const RunConfig& c) { fs::create_directories(c.out); }

void write_components(const fs::path& path, const Grid& grid, const DiracLevel& level) {
    CsvFile csv(path, {"x", "psi_minus", "psi_plus"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv.row({num(grid.x(i)), num(level.psi_minus[i]), num(level.psi_plus[i])});
}

}  // namespace

RunConfig default_config() {
    RunConfig c;
    c.betas.reserve(25);
    for (int i = 0; i < 25; ++i) c.betas.push_back(std::pow(10.0, -2.0 + 5.0 * i / 24.0));
    return c;
}

void validate(const RunConfig& c) {
    if (c.preset != "kink" && c.preset != "pt") throw DomainError("unknown preset '" + c.preset + "'");
    if (c.f_expr && c.preset_given) throw DomainError("--preset and --f-expr are mutually exclusive");
    if (c.ell < 1) throw DomainError("ell must be >= 1");
    const Grid grid = make_grid(c);
    if (c.levels < 1 || c.levels + 3 > grid.size()) {
        std::ostringstream os;
        os << "levels must lie in [1, " << grid.size() - 3 << "], got " << c.levels;
        throw DomainError(os.str());
    }
    for (double l : c.lambdas) FamilyParameter{l};
    for (double b : c.betas) {
        if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("beta values must be positive and finite, got " + tag(b));
    }
    for (double s : c.s_values) {
        if (!std::isfinite(s)) throw DomainError("s values must be finite");
    }
}

CommandResult cmd_partners(const RunConfig& c) {
    prepare_output(c);
    CommandResult result;
    const Superpotential f = make_superpotential(c);
    const PartnerPair pair = partner_potentials(f);
    const Grid& grid = f.grid();

    {
        CsvFile csv(c.out / "partners.csv", {"x", "f", "v_minus", "v_plus"});
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv.row({num(grid.x(i)), num(f.samples()[i]), num(pair.v_minus[i]), num(pair.v_plus[i])});
        result.files.push_back(csv.path());
    }

    json body;
    const auto mode = zero_mode(f);
    if (mode) {
        CsvFile csv(c.out / "zero_mode.csv", {"x", "psi0"});
        for (std::size_t i = 0; i < grid.size(); ++i) csv.row({num(grid.x(i)), num(mode->psi[i])});
        result.files.push_back(csv.path());
        body["zero_mode"] = {{"sector", mode->sector == Sector::minus ? "minus" : "plus"},
                             {"peak", mode->psi.max_abs()}};
    } else {
        body["zero_mode"] = nullptr;
        body["note"] = "no normalizable zero mode";
    }

    const PartnerSpectra spectra = partner_spectra(pair, c.levels);
    const double edge = f.continuum_edge();
    body["asymptotes"] = {{"f_minus", f.f_minus()}, {"f_plus", f.f_plus()}};
    body["continuum_edge"] = edge_json(edge);
    body["bound_spectrum"] = {{"minus", bound_part(spectra.minus, edge, grid.spacing())},
                              {"plus", bound_part(spectra.plus, edge, grid.spacing())}};
    write_summary(c, "partners", std::move(body), result);
    return result;
}

CommandResult cmd_family(const RunConfig& c) {
    prepare_output(c);
    CommandResult result;
    const Superpotential f = make_superpotential(c);
    const PartnerPair pair = partner_potentials(f);
    const auto mode = zero_mode(f);
    if (!mode || mode->sector != Sector::minus)
        throw DomainError("the isospectral family needs a normalizable zero mode of H_-");
    const Grid& grid = f.grid();
    const double edge = f.continuum_edge();

    json members = json::array();
    for (double lambda : c.lambdas) {
        json entry{{"lambda", lambda}};
        try {
            const IsospectralMember m = deformed_potential(pair, mode->psi, FamilyParameter(lambda));
            const fs::path path = c.out / ("family_" + tag(lambda) + ".csv");
            {
                CsvFile csv(path, {"x", "F", "v_tilde", "psi0_tilde"});
                for (std::size_t i = 0; i < grid.size(); ++i)
                    csv.row({num(grid.x(i)), num(m.F[i]), num(m.v_tilde[i]), num(m.psi0_tilde[i])});
            }
            result.files.push_back(path);
            std::vector<double> sq(grid.size());
            for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = m.psi0_tilde[i] * m.psi0_tilde[i];
            const Spectrum tilde = eigen_solve(m.v_tilde, c.levels);
            entry["file"] = path.filename().string();
            entry["riccati_residual"] = riccati_residual(m.F, pair.v_plus);
            entry["expression_gap"] = m.expression_gap;
            entry["psi0_tilde_norm"] = integral(SampledFunction(grid, std::move(sq)));
            entry["annihilation_residual"] = annihilation_check(m.F, m.psi0_tilde);
            entry["psi0_tilde_at_0"] = m.psi0_tilde.at(0.0);
            entry["max_abs_v_tilde_minus_v_minus"] = sup_distance(m.v_tilde, pair.v_minus);
            entry["bound_spectrum"] = bound_part(tilde, edge, grid.spacing());
        } catch (const NumericalError& e) {
            entry["error"] = e.what();
            result.partial_failure = true;
        }
        members.push_back(std::move(entry));
    }

    const Spectrum base = eigen_solve(pair.v_minus, c.levels);
    json body{{"base_bound_spectrum", bound_part(base, edge, grid.spacing())},
              {"continuum_edge", edge_json(edge)},
              {"members", std::move(members)}};
    write_summary(c, "family", std::move(body), result);
    return result;
}

CommandResult cmd_dirac(const RunConfig& c) {
    prepare_output(c);
    CommandResult result;
    const Superpotential f = make_superpotential(c);
    const Grid& grid = f.grid();
    const DiracSpectrum base = dirac_spectrum(f, c.levels);

    CsvFile table(c.out / "dirac.csv", {"member", "lambda", "level", "omega", "energy"});
    json members = json::array();

    auto emit = [&](const DiracSpectrum& s, const std::string& member, const std::string& lambda,
                    const std::string& file_tag) {
        json omegas = json::array();
        for (std::size_t j = 0; j < s.levels.size(); ++j) {
            const DiracLevel& level = s.levels[j];
            table.row({member, lambda, std::to_string(j), num(level.omega), num(level.omega * level.omega)});
            const fs::path path = c.out / ("dirac_" + file_tag + "_level" + std::to_string(j) + ".csv");
            write_components(path, grid, level);
            result.files.push_back(path);
            omegas.push_back(level.omega);
        }
        return omegas;
    };

    members.push_back({{"member", "base"}, {"omega", emit(base, "base", "", "base")}});

    const auto mode = zero_mode(f);
    const bool deformable = mode && mode->sector == Sector::minus;
    if (deformable) {
        const PartnerPair pair = partner_potentials(f);
        for (double lambda : c.lambdas) {
            json entry{{"member", "family"}, {"lambda", lambda}};
            try {
                const IsospectralMember m = deformed_potential(pair, mode->psi, FamilyParameter(lambda));
                const DiracSpectrum s = deformed_dirac_solutions(m, f, c.levels);
                entry["omega"] = emit(s, "family", num(lambda), "lambda_" + tag(lambda));
            } catch (const NumericalError& e) {
                entry["error"] = e.what();
                result.partial_failure = true;
            }
            members.push_back(std::move(entry));
        }
    }
    result.files.insert(result.files.begin(), table.path());

    json body{{"continuum_edge", edge_json(base.continuum_edge)}, {"members", std::move(members)}};
    if (!deformable) body["note"] = "no H_- zero mode; family members skipped";
    write_summary(c, "dirac", std::move(body), result);
    return result;
}

CommandResult cmd_index(const RunConfig& c) {
    prepare_output(c);
    CommandResult result;
    const Superpotential f = make_superpotential(c);
    const PartnerSpectra spectra = partner_spectra(partner_potentials(f), c.levels);
    const double h = f.grid().spacing();

    std::vector<double> betas = c.betas;
    std::sort(betas.begin(), betas.end());
    json points = json::array();
    {
        CsvFile csv(c.out / "index.csv", {"beta", "delta_analytic", "delta_numeric", "ode_rhs"});
        for (double beta : betas) {
            const double analytic = index_analytic(f.f_plus(), f.f_minus(), beta);
            const NumericIndex numeric = index_numeric(spectra, beta, h);
            const bool usable = !numeric.continuum_contaminated && !numeric.levels_exhausted;
            csv.row({num(beta), num(analytic), usable ? num(numeric.value) : std::string(),
                     num(index_ode_rhs(f.f_plus(), f.f_minus(), beta))});
            points.push_back({{"beta", beta},
                              {"continuum_contaminated", numeric.continuum_contaminated},
                              {"levels_exhausted", numeric.levels_exhausted}});
        }
        result.files.push_back(csv.path());
    }

    const IndexLimit limit = index_limit(f);
    json body{{"limit", limit.value},
              {"limit_indeterminate", limit.indeterminate},
              {"asymptotes", {{"f_minus", f.f_minus()}, {"f_plus", f.f_plus()}}},
              {"points", std::move(points)}};
    write_summary(c, "index", std::move(body), result);
    return result;
}

CommandResult cmd_pt(const RunConfig& c) {
    prepare_output(c);
    CommandResult result;
    const int ell = ladder_ell(c);
    const double l = static_cast<double>(ell);
    const Superpotential f = tanh_ladder_superpotential(make_grid(c), ell);
    const PartnerSpectra spectra =
        partner_spectra(partner_potentials(f), std::max<std::size_t>(c.levels, static_cast<std::size_t>(ell) + 1));
    const pt::LadderSpectra ladder = pt::ladder_spectra(ell);

    // H_- maps onto the ell well; H_+ is the (ell - 1) well shifted by 2 ell - 1.
    auto pt_energies = [](int m) {
        std::vector<double> out;
        const double dm = static_cast<double>(m);
        for (const auto& level : pt::pt_bound_levels(pt::params_from_cs(-0.5 * dm * (dm + 1.0), 0.0)))
            out.push_back(pt::pt_to_partner_energy(level.energy, m));
        return out;
    };
    const std::vector<double> pt_minus = pt_energies(ell);
    const std::vector<double> pt_plus = pt_energies(ell - 1);

    double worst = 0.0;
    {
        CsvFile csv(c.out / "pt.csv", {"operator", "j", "analytic", "pt_formula", "numeric", "abs_error"});
        for (std::size_t j = 0; j < ladder.e_minus.size(); ++j) {
            const double analytic = ladder.e_minus[j];
            const double formula = j < pt_minus.size() ? pt_minus[j] : std::nan("");
            const double numeric = spectra.minus.eigenvalues[j];
            worst = std::max(worst, std::abs(numeric - analytic));
            csv.row({"H_minus", std::to_string(j), num(analytic), num(formula), num(numeric),
                     num(std::abs(numeric - analytic))});
        }
        for (std::size_t j = 0; j < ladder.e_plus.size(); ++j) {
            const double analytic = ladder.e_plus[j];
            const double formula = j < pt_plus.size() ? pt_plus[j] + 2.0 * l - 1.0 : std::nan("");
            const double numeric = spectra.plus.eigenvalues[j];
            worst = std::max(worst, std::abs(numeric - analytic));
            csv.row({"H_plus", std::to_string(j + 1), num(analytic), num(formula), num(numeric),
                     num(std::abs(numeric - analytic))});
        }
        const double edge_formula = pt::pt_to_partner_energy(pt::pt_scattering_energy(0.0), ell);
        csv.row({"edge", "", num(ladder.continuum_edge), num(edge_formula), "", ""});
        result.files.push_back(csv.path());
    }

    json regimes = json::array();
    if (!c.s_values.empty()) {
        CsvFile csv(c.out / "pt_regimes.csv", {"s", "regime", "boundary"});
        for (double s : c.s_values) {
            const pt::RegimeClass r = pt::singularity_regime(s);
            csv.row({num(s), std::string(pt::to_string(r.regime)), r.boundary ? "1" : "0"});
            regimes.push_back({{"s", s}, {"regime", pt::to_string(r.regime)}, {"boundary", r.boundary}});
        }
        result.files.push_back(csv.path());
    }

    const pt::PTParams p = pt::params_from_cs(-0.5 * l * (l + 1.0), 0.0);
    const double h = f.grid().spacing();
    json body{{"ell", ell},
              {"params", {{"c", p.c}, {"s", p.s}, {"k1", p.k1}, {"k2", p.k2}, {"k1_alt", p.k1_alt}, {"k2_alt", p.k2_alt}}},
              {"continuum_edge", ladder.continuum_edge},
              {"bound_count_numeric",
               {{"minus", bound_part(spectra.minus, ladder.continuum_edge, h).size()},
                {"plus", bound_part(spectra.plus, ladder.continuum_edge, h).size()}}},
              {"max_abs_error", worst},
              {"regimes", std::move(regimes)}};
    write_summary(c, "pt", std::move(body), result);
    return result;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirac equation with a scalar potential: SUSY partners, isospectral families, index"};
    app.set_config("--config", "", "Flat key = value file; flags override its values");
    app.require_subcommand(1);

    RunConfig cfg = default_config();
    std::string f_expr;
    std::string out_dir = cfg.out.string();
    app.add_option("--preset", cfg.preset, "Superpotential preset")
        ->check(CLI::IsMember({"kink", "pt", "pt-ell"}));
    app.add_option("--ell", cfg.ell, "Ladder index for the pt preset (f = ell tanh x)");
    app.add_option("--f-expr", f_expr, "Superpotential f(x) as an expression in x");
    app.add_option("--xmin", cfg.x_min, "Left wall");
    app.add_option("--xmax", cfg.x_max, "Right wall");
    app.add_option("--n", cfg.n, "Number of grid points");
    app.add_option("--lambda", cfg.lambdas, "Family parameters (comma list)")->delimiter(',');
    app.add_option("--beta", cfg.betas, "Index regulators (comma list)")->delimiter(',');
    app.add_option("--levels", cfg.levels, "Eigenpairs computed per Hamiltonian");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--s", cfg.s_values, "Singular strengths to classify (comma list)")->delimiter(',');

    using Command = CommandResult (*)(const RunConfig&);
    Command command = nullptr;
    const std::pair<const char*, Command> commands[] = {
        {"partners", cmd_partners}, {"family", cmd_family}, {"dirac", cmd_dirac},
        {"index", cmd_index},       {"pt", cmd_pt},
    };
    const char* descriptions[] = {
        "Partner potentials and zero mode",
        "Isospectral family for each lambda",
        "Dirac levels of the base problem and each family member",
        "Regularized index versus beta",
        "Ladder spectra against the Poschl-Teller formulas",
    };
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
        sub->fallthrough();
        sub->callback([&command, fn = commands[i].second] { command = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_config_error;
    }

    if (cfg.preset == "pt-ell") cfg.preset = "pt";
    cfg.preset_given = app.count("--preset") > 0;
    if (app.count("--f-expr") > 0) cfg.f_expr = f_expr;
    cfg.out = out_dir;

    try {
        validate(cfg);
        const CommandResult result = command(cfg);
        for (const auto& f : result.files) out << f.string() << '\n';
        if (result.partial_failure) {
            err << "error: some items failed; see the run summary\n";
            return exit_numerical_failure;
        }
        return exit_ok;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const expr::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const expr::EvalError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical_failure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("isodirac");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace isodirac::cli
