#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ginocchio/errors.hpp"

namespace ginocchio {

// Reproduction harness: golden cases live in a versioned JSON manifest (one
// entry per reference figure), each expected value tagged with its
// provenance ("reference" = published reference data, "exact" = closed-form
// arithmetic, "derived" = this project's independent oracle). The suite runs
// the CLI end to end and diffs its JSON output against the manifest.

struct GoldenState {
    int n = 0;
    int q = +1;
    double e_re = 0.0;
    double e_im = 0.0;
    double tol = 5e-3;
    std::string provenance;
};

struct GoldenCase {
    std::string name;
    double gamma = 0.0, s_re = 0.0, s_im = 0.0, lambda_re = 0.0, lambda_im = 0.0,
           epsilon = 0.0;
    std::string expect_verdict;
    int expect_count = -1;
    std::vector<GoldenState> states;
};

struct GoldenOutcome {
    std::string name;
    bool pass = true;
    std::vector<std::string> details;
};

inline std::vector<GoldenCase> load_golden_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_failure, "cannot open golden manifest " + path);
    nlohmann::json j;
    in >> j;
    std::vector<GoldenCase> cases;
    for (const auto& jc : j.at("cases")) {
        GoldenCase c;
        c.name = jc.at("name");
        const auto& p = jc.at("params");
        c.gamma = p.at("gamma");
        c.s_re = p.at("s_re");
        c.s_im = p.value("s_im", 0.0);
        c.lambda_re = p.at("lambda_re");
        c.lambda_im = p.value("lambda_im", 0.0);
        c.epsilon = p.at("epsilon");
        c.expect_verdict = jc.at("expect").value("verdict", "");
        c.expect_count = jc.at("expect").value("count", -1);
        if (jc.at("expect").contains("states")) {
            for (const auto& js : jc.at("expect").at("states")) {
                GoldenState s;
                s.n = js.at("n");
                s.q = js.at("q");
                s.e_re = js.at("e_re");
                s.e_im = js.value("e_im", 0.0);
                s.tol = js.value("tol", 5e-3);
                s.provenance = js.at("provenance");
                c.states.push_back(s);
            }
        }
        cases.push_back(c);
    }
    return cases;
}

inline std::string run_command_capture(const std::string& cmd) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) raise(errc::io_failure, "popen failed for: " + cmd);
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int rc = pclose(pipe);
    if (rc != 0) raise(errc::io_failure, "command exited nonzero: " + cmd);
    return out;
}

inline GoldenOutcome run_golden_case(const std::string& cli, const GoldenCase& c) {
    GoldenOutcome out;
    out.name = c.name;
    std::ostringstream cmd;
    cmd << cli << " spectrum --format json"
        << " --gamma " << c.gamma << " --s-re " << c.s_re << " --s-im " << c.s_im
        << " --lambda-re " << c.lambda_re << " --lambda-im " << c.lambda_im
        << " --epsilon " << c.epsilon;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(run_command_capture(cmd.str()));
    } catch (const std::exception& e) {
        out.pass = false;
        out.details.push_back(std::string("cli run failed: ") + e.what());
        return out;
    }

    if (!c.expect_verdict.empty() && j.at("verdict") != c.expect_verdict) {
        out.pass = false;
        out.details.push_back("verdict " + j.at("verdict").get<std::string>() +
                              " != expected " + c.expect_verdict);
    }
    if (c.expect_count >= 0 &&
        static_cast<int>(j.at("states").size()) != c.expect_count) {
        out.pass = false;
        out.details.push_back("state count " + std::to_string(j.at("states").size()) +
                              " != expected " + std::to_string(c.expect_count));
    }
    for (const auto& exp : c.states) {
        std::string tag = "state (" + std::to_string(exp.n) + "," + std::to_string(exp.q) + ")";
        bool found = false;
        bool matched = false;
        for (const auto& js : j.at("states")) {
            if (js.at("n") != exp.n || js.at("q") != exp.q) continue;
            found = true;
            double dre = std::abs(js.at("re_e").get<double>() - exp.e_re);
            double dim = std::abs(js.at("im_e").get<double>() - exp.e_im);
            matched = dre <= exp.tol && dim <= exp.tol;
            if (!matched)
                out.details.push_back(tag + " off by (" + std::to_string(dre) + "," +
                                      std::to_string(dim) + ") > " + std::to_string(exp.tol));
            break;
        }
        if (!found) out.details.push_back(tag + " missing from report");
        if (!matched) out.pass = false;
    }
    return out;
}

inline std::vector<GoldenOutcome> run_golden_suite(const std::string& cli,
                                                   const std::string& manifest_path) {
    std::vector<GoldenOutcome> outcomes;
    for (const auto& c : load_golden_manifest(manifest_path))
        outcomes.push_back(run_golden_case(cli, c));
    return outcomes;
}

}  // namespace ginocchio
