#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ginocchio/coordinate_map.hpp"
#include "ginocchio/params.hpp"
#include "ginocchio/potential.hpp"
#include "ginocchio/spectrum.hpp"
#include "ginocchio/susy.hpp"
#include "ginocchio/shooting.hpp"
#include "ginocchio/wavefunction.hpp"

namespace ginocchio {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits, '.' decimal: value -> text -> value round-trips and
// identical configs produce byte-identical files.
inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_map_csv(std::ostream& os, const MapTable& t) {
    os << "x,re_u,im_u,re_dudx,im_dudx\n";
    for (const auto& s : t.samples)
        os << g17(s.x) << ',' << g17(s.u.real()) << ',' << g17(s.u.imag()) << ','
           << g17(s.dudx.real()) << ',' << g17(s.dudx.imag()) << '\n';
}

inline void write_potential_csv(std::ostream& os, const PotentialTable& t) {
    os << "x,re_v,im_v\n";
    for (const auto& s : t.samples)
        os << g17(s.x) << ',' << g17(s.v.real()) << ',' << g17(s.v.imag()) << '\n';
}

inline void write_potential_terms_csv(std::ostream& os, const PotentialParams& p,
                                      const MapTable& map) {
    os << "x,re_well,im_well,re_centrifugal,im_centrifugal,"
          "re_quadratic,im_quadratic,re_cubic,im_cubic\n";
    for (const auto& m : map.samples) {
        PotentialTerms t = potential_terms_at(p, m);
        os << g17(m.x) << ',' << g17(t.well.real()) << ',' << g17(t.well.imag()) << ','
           << g17(t.centrifugal.real()) << ',' << g17(t.centrifugal.imag()) << ','
           << g17(t.quadratic.real()) << ',' << g17(t.quadratic.imag()) << ','
           << g17(t.cubic.real()) << ',' << g17(t.cubic.imag()) << '\n';
    }
}

inline void write_wavefunction_csv(std::ostream& os, const std::vector<WaveSample>& w) {
    os << "x,re_psi,im_psi,abs_psi\n";
    for (const auto& s : w)
        os << g17(s.x) << ',' << g17(s.psi.real()) << ',' << g17(s.psi.imag()) << ','
           << g17(std::abs(s.psi)) << '\n';
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumReport& r) {
    os << "n,q,re_mu,im_mu,re_e,im_e,normalizable\n";
    for (const auto& s : r.states)
        os << s.label.n << ',' << s.label.q << ',' << g17(s.mu.real()) << ','
           << g17(s.mu.imag()) << ',' << g17(s.energy.real()) << ','
           << g17(s.energy.imag()) << ',' << (s.normalizable ? 1 : 0) << '\n';
}

// Bosonic curve plus both fermionic partners on one grid.
inline void write_susy_csv(std::ostream& os, const PotentialParams& p,
                           const MapTable& map) {
    os << "x,re_v,im_v,re_vplus_p,im_vplus_p,re_vplus_m,im_vplus_m\n";
    for (const auto& m : map.samples) {
        cplx v = potential_at(p, m).v;
        cplx vp = partner_potential_at(p, +1, m);
        cplx vm = partner_potential_at(p, -1, m);
        os << g17(m.x) << ',' << g17(v.real()) << ',' << g17(v.imag()) << ','
           << g17(vp.real()) << ',' << g17(vp.imag()) << ',' << g17(vm.real()) << ','
           << g17(vm.imag()) << '\n';
    }
}

inline void write_partner_csv(std::ostream& os, const PotentialParams& p, int q,
                              const MapTable& map) {
    os << "x,re_vplus,im_vplus\n";
    for (const auto& m : map.samples) {
        cplx v = partner_potential_at(p, q, m);
        os << g17(m.x) << ',' << g17(v.real()) << ',' << g17(v.imag()) << '\n';
    }
}

inline ordered_json params_to_json(const PotentialParams& p) {
    ordered_json j;
    j["gamma"] = p.gamma();
    j["s_re"] = p.s().value().real();
    j["s_im"] = p.s().value().imag();
    j["lambda_re"] = p.lambda().value().real();
    j["lambda_im"] = p.lambda().value().imag();
    j["epsilon"] = p.epsilon();
    j["parity_mirrored"] = p.parity_mirrored();
    return j;
}

inline ordered_json spectrum_to_json(const SpectrumReport& r) {
    ordered_json j;
    j["params"] = params_to_json(r.params);
    j["verdict"] = verdict_name(r.verdict);
    j["counts"] = {{"q_plus", r.count_plus}, {"q_minus", r.count_minus}};
    j["states"] = ordered_json::array();
    for (const auto& s : r.states) {
        ordered_json js;
        js["n"] = s.label.n;
        js["q"] = s.label.q;
        js["re_mu"] = s.mu.real();
        js["im_mu"] = s.mu.imag();
        js["re_e"] = s.energy.real();
        js["im_e"] = s.energy.imag();
        js["normalizable"] = s.normalizable;
        j["states"].push_back(js);
    }
    j["boundary_states"] = ordered_json::array();
    for (const auto& b : r.boundary_states)
        j["boundary_states"].push_back({{"n", b.n}, {"q", b.q}});
    return j;
}

inline ordered_json eigenresults_to_json(const std::vector<cplx>& seeds,
                                         const std::vector<EigenResult>& results) {
    ordered_json j;
    j["results"] = ordered_json::array();
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        ordered_json jr;
        if (i < seeds.size()) {
            jr["seed_re"] = seeds[i].real();
            jr["seed_im"] = seeds[i].imag();
        }
        jr["converged"] = r.converged;
        if (r.converged) {
            jr["re_e"] = r.energy.real();
            jr["im_e"] = r.energy.imag();
            jr["match_residual"] = r.match_residual;
        } else {
            jr["error"] = r.error;
        }
        jr["iterations"] = r.iterations;
        j["results"].push_back(jr);
    }
    return j;
}

inline ordered_json residual_report_json(const PotentialParams& p, const SpectralValue& sv,
                                         const MapTable& grid, double residual) {
    ordered_json j;
    j["params"] = params_to_json(p);
    j["n"] = sv.label.n;
    j["q"] = sv.label.q;
    j["re_e"] = sv.energy.real();
    j["im_e"] = sv.energy.imag();
    j["grid"] = {{"x_min", grid.x_min()}, {"x_max", grid.x_max()},
                 {"count", grid.samples.size()}};
    j["max_rel_residual"] = residual;
    return j;
}

inline ordered_json isospectrality_to_json(const IsospectralityReport& r) {
    ordered_json j;
    j["q"] = r.q;
    j["all_present"] = r.all_present;
    j["removed_level_absent"] = r.removed_level_absent;
    j["removed_seed_behavior"] = r.removed_seed_behavior;
    j["levels"] = ordered_json::array();
    for (const auto& l : r.levels) {
        ordered_json jl;
        jl["n"] = l.label.n;
        jl["q"] = l.label.q;
        jl["expected_re"] = l.expected.real();
        jl["expected_im"] = l.expected.imag();
        jl["found_re"] = l.found.real();
        jl["found_im"] = l.found.imag();
        jl["deviation"] = l.deviation;
        jl["present"] = l.present;
        j["levels"].push_back(jl);
    }
    return j;
}

}  // namespace ginocchio
