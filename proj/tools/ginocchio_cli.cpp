// Command-line front end: one subcommand per pipeline stage, CSV/JSON output
// with fixed formatting so identical configs give byte-identical files.
//
//   map | potential | spectrum | wavefunction | susy | verify
//
// Complex parameters are passed as re/im flag pairs. Tolerance overrides come
// from the environment only: GINOCCHIO_MAP_TOL, GINOCCHIO_SHOOT_TOL.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ginocchio/ginocchio.hpp"

namespace {

using namespace ginocchio;

struct RunConfig {
    double gamma = 0.0;
    double s_re = 1.0, s_im = 0.0;
    double lambda_re = 1.0, lambda_im = 0.0;
    double epsilon = 0.0;
    double x_min = -5.0, x_max = 5.0;
    int count = 1001;
    std::string output;
    std::string format = "csv";
    // wavefunction
    int n = 0, q = +1;
    std::string form = "compact";
    // potential
    bool per_term = false;
    // susy
    int partner_only = 0;  // 0 = combined file, otherwise +1/-1
    bool isospectral = false;
    // verify
    double shoot_h = 2.5e-3;
    double perturb = 0.0;

    double map_tol = 1e-12;
    double shoot_tol = 1e-12;
};

double env_tol(const char* name, double fallback) {
    const char* v = std::getenv(name);
    return v ? std::atof(v) : fallback;
}

PotentialParams params_from(const RunConfig& c) {
    return make_params(c.gamma, {c.s_re, c.s_im}, {c.lambda_re, c.lambda_im}, c.epsilon);
}

// Stream to `path`, or stdout when empty.
struct OutputTarget {
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) raise(errc::io_failure, "cannot open output path " + path);
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

MapTable grid_table(const PotentialParams& p, const RunConfig& c) {
    return map_table(p, c.x_min, c.x_max, c.count, c.map_tol);
}

int cmd_map(const RunConfig& c) {
    PotentialParams p = params_from(c);
    MapTable t = grid_table(p, c);
    OutputTarget out(c.output);
    write_map_csv(out.stream(), t);
    return 0;
}

int cmd_potential(const RunConfig& c) {
    PotentialParams p = params_from(c);
    MapTable t = grid_table(p, c);
    OutputTarget out(c.output);
    if (c.per_term)
        write_potential_terms_csv(out.stream(), p, t);
    else
        write_potential_csv(out.stream(), potential_table(p, t));
    return 0;
}

int cmd_spectrum(const RunConfig& c) {
    PotentialParams p = params_from(c);
    SpectrumReport r = full_spectrum(p);
    OutputTarget out(c.output);
    if (c.format == "json")
        out.stream() << spectrum_to_json(r).dump(2) << '\n';
    else
        write_spectrum_csv(out.stream(), r);
    return 0;
}

int cmd_wavefunction(const RunConfig& c) {
    PotentialParams p = params_from(c);
    SpectralValue sv = mu_nq(p, StateLabel{c.n, c.q});
    if (!sv.normalizable)
        raise(errc::out_of_window, "state (n=" + std::to_string(c.n) + ", q=" +
                                       std::to_string(c.q) + ") is not normalizable");
    MapTable t = grid_table(p, c);
    PsiForm form = c.form == "radial" ? PsiForm::Radial : PsiForm::Compact;
    OutputTarget out(c.output);
    if (c.format == "json") {
        double res = schrodinger_residual(p, sv, t, form);
        out.stream() << residual_report_json(p, sv, t, res).dump(2) << '\n';
    } else {
        write_wavefunction_csv(out.stream(), psi_nq(p, sv, t, form));
    }
    return 0;
}

int cmd_susy(const RunConfig& c) {
    PotentialParams p = params_from(c);
    MapTable t = grid_table(p, c);
    OutputTarget out(c.output);
    if (c.format == "json") {
        ordered_json j;
        j["params"] = params_to_json(p);
        for (int q : {+1, -1}) {
            SusyFactorization f = susy_factorization(p, q);
            PartnerCoefficients pc = partner_coeffs(p, q);
            ordered_json js;
            js["factorization_energy_re"] = f.factorization_energy.real();
            js["factorization_energy_im"] = f.factorization_energy.imag();
            js["a_re"] = pc.a_q.real();
            js["a_im"] = pc.a_q.imag();
            js["b_re"] = pc.b_q.real();
            js["b_im"] = pc.b_q.imag();
            js["c_re"] = pc.c_q.real();
            js["c_im"] = pc.c_q.imag();
            js["bosonic_reconstruction_defect"] = bosonic_reconstruction_defect(p, q, t);
            js["partner_reconstruction_defect"] = partner_reconstruction_defect(p, q, t);
            j[q > 0 ? "q_plus" : "q_minus"] = js;
        }
        PartnerPtDefects d = partner_pt_check(p, t);
        j["pt"] = {{"defect_plus", d.defect_plus},
                   {"defect_minus", d.defect_minus},
                   {"cross_defect", d.cross_defect}};
        if (c.isospectral) {
            for (int q : {+1, -1})
                j[q > 0 ? "isospectral_plus" : "isospectral_minus"] =
                    isospectrality_to_json(partner_isospectrality(p, q, t));
        }
        out.stream() << j.dump(2) << '\n';
    } else if (c.partner_only != 0) {
        write_partner_csv(out.stream(), p, c.partner_only, t);
    } else {
        write_susy_csv(out.stream(), p, t);
    }
    return 0;
}

int cmd_verify(const RunConfig& c) {
    PotentialParams p = params_from(c);
    SpectrumReport spec = full_spectrum(p);

    double x_cut = decay_cutoff(p, 1e-10);
    double l_domain = std::max(x_cut, 4.0);
    MapTable t = map_table(p, -l_domain, l_domain,
                           static_cast<int>(std::round(4.0 * l_domain / c.shoot_h)) + 1,
                           c.map_tol);
    SampledPotential vpot;
    vpot.x_min = t.x_min();
    vpot.half_step = t.step;
    vpot.v.resize(t.samples.size());
    for (size_t i = 0; i < t.samples.size(); ++i)
        vpot.v[i] = potential_at(p, t.samples[i]).v;

    std::vector<cplx> seeds;
    for (const auto& sv : spec.states)
        seeds.push_back(sv.energy * (1.0 + c.perturb));
    std::vector<EigenResult> results = spectrum_sweep(vpot, seeds, c.shoot_tol);

    OutputTarget out(c.output);
    out.stream() << eigenresults_to_json(seeds, results).dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PT-symmetric generalised Ginocchio potential toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.map_tol = env_tol("GINOCCHIO_MAP_TOL", 1e-12);
    cfg.shoot_tol = env_tol("GINOCCHIO_SHOOT_TOL", 1e-12);

    auto add_params = [&](CLI::App* sub, bool need_couplings) {
        sub->add_option("--gamma", cfg.gamma, "deformation parameter")->required();
        sub->add_option("--epsilon", cfg.epsilon, "imaginary coordinate shift")->required();
        auto* sre = sub->add_option("--s-re", cfg.s_re, "Re(s)");
        sub->add_option("--s-im", cfg.s_im, "Im(s)");
        auto* lre = sub->add_option("--lambda-re", cfg.lambda_re, "Re(lambda)");
        sub->add_option("--lambda-im", cfg.lambda_im, "Im(lambda)");
        if (need_couplings) {
            sre->required();
            lre->required();
        }
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--x-min", cfg.x_min, "grid start");
        sub->add_option("--x-max", cfg.x_max, "grid end");
        sub->add_option("--count", cfg.count, "grid point count")
            ->check(CLI::Range(2, 100000000));
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--output,-o", cfg.output, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* map_cmd = app.add_subcommand("map", "complex coordinate map table");
    add_params(map_cmd, false);
    add_grid(map_cmd);
    add_out(map_cmd);

    auto* pot_cmd = app.add_subcommand("potential", "complex potential table");
    add_params(pot_cmd, true);
    add_grid(pot_cmd);
    add_out(pot_cmd);
    pot_cmd->add_flag("--per-term", cfg.per_term, "emit the four terms separately");

    auto* spec_cmd = app.add_subcommand("spectrum", "exact quasi-parity spectrum");
    add_params(spec_cmd, true);
    add_out(spec_cmd);

    auto* wf_cmd = app.add_subcommand("wavefunction", "bound-state wavefunction");
    add_params(wf_cmd, true);
    add_grid(wf_cmd);
    add_out(wf_cmd);
    wf_cmd->add_option("--n", cfg.n, "principal quantum number");
    wf_cmd->add_option("--q", cfg.q, "quasi-parity")->check(CLI::IsMember({-1, 1}));
    wf_cmd->add_option("--psi-form", cfg.form, "compact|radial")
        ->check(CLI::IsMember({"compact", "radial"}));

    auto* susy_cmd = app.add_subcommand("susy", "supersymmetric partner potentials");
    add_params(susy_cmd, true);
    add_grid(susy_cmd);
    add_out(susy_cmd);
    susy_cmd->add_option("--partner", cfg.partner_only, "emit only V+ for this q")
        ->check(CLI::IsMember({-1, 1}));
    susy_cmd->add_flag("--isospectral", cfg.isospectral,
                       "include the shooting-oracle isospectrality report (json)");

    auto* ver_cmd = app.add_subcommand("verify", "shooting-method oracle sweep");
    add_params(ver_cmd, true);
    add_out(ver_cmd);
    ver_cmd->add_option("--step", cfg.shoot_h, "integration step");
    ver_cmd->add_option("--perturb", cfg.perturb, "relative seed perturbation");

    CLI11_PARSE(app, argc, argv);

    try {
        if (map_cmd->parsed()) return cmd_map(cfg);
        if (pot_cmd->parsed()) return cmd_potential(cfg);
        if (spec_cmd->parsed()) return cmd_spectrum(cfg);
        if (wf_cmd->parsed()) return cmd_wavefunction(cfg);
        if (susy_cmd->parsed()) return cmd_susy(cfg);
        if (ver_cmd->parsed()) return cmd_verify(cfg);
    } catch (const ginocchio::GinError& e) {
        std::cerr << "ginocchio: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "ginocchio: Error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
