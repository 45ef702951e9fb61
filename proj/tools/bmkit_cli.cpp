// Copyright 2026 The bmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmkit/engine.hpp"
#include "bmkit/fock.hpp"
#include "bmkit/verifier.hpp"

using nlohmann::json;

namespace {

constexpr uint64_t kDefaultSeed = 1729;

struct CodeArgs {
    std::string family;
    int r = 0, m = 0;
    std::string branching;
    std::string code_file;
};

std::vector<int> parse_branching(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(std::stoi(tok));
    }
    return out;
}

bmkit::StabilizerCode resolve_code(const CodeArgs &args) {
    if (!args.code_file.empty()) {
        std::ifstream in(args.code_file);
        if (!in) {
            throw std::invalid_argument("cannot open " + args.code_file);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        return bmkit::StabilizerCode::deserialize(buf.str());
    }
    if (args.family == "qpc") {
        return bmkit::qpc(args.r, args.m);
    }
    if (args.family == "five-qubit") {
        return bmkit::five_qubit();
    }
    if (args.family == "steane") {
        return bmkit::steane();
    }
    if (args.family == "standard") {
        return bmkit::standard_surface(args.r, args.m);
    }
    if (args.family == "rotated") {
        return bmkit::rotated_surface(args.r, args.m);
    }
    if (args.family == "tree") {
        return bmkit::tree_code(parse_branching(args.branching));
    }
    throw std::invalid_argument("unknown code family " + args.family);
}

struct ResolvedScheme {
    std::optional<bmkit::Scheme> adaptive;
    std::optional<bmkit::StaticScheme> fixed;
    std::optional<bmkit::CandidateGeneratorSequence> cseq;

    std::string name() const {
        return adaptive ? adaptive->name : fixed->name;
    }
    uint32_t n() const {
        return adaptive ? adaptive->n() : fixed->n();
    }
};

ResolvedScheme resolve_scheme(const CodeArgs &code_args, const std::string &kind, const std::string &scheme_file) {
    ResolvedScheme rs;
    if (!scheme_file.empty()) {
        std::ifstream in(scheme_file);
        if (!in) {
            throw std::invalid_argument("cannot open " + scheme_file);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        if (text.find("static-scheme") != std::string::npos) {
            rs.fixed = bmkit::StaticScheme::deserialize(text);
        } else {
            rs.adaptive = bmkit::Scheme::deserialize(text);
            rs.cseq = bmkit::derive_candidate_sequence(*rs.adaptive);
        }
        return rs;
    }
    bmkit::StabilizerCode code = resolve_code(code_args);
    if (kind == "optimal") {
        bmkit::BuiltScheme built = bmkit::build_optimal(code);
        rs.adaptive = std::move(built.scheme);
        rs.cseq = std::move(built.cseq);
        return rs;
    }
    if (kind == "static-simple" && code.family == "rotated-surface") {
        rs.fixed = bmkit::build_static_simple_rotated(code.params[0], code.params[1]);
        return rs;
    }
    if (kind == "static-optimized" && code.family == "rotated-surface") {
        rs.fixed = bmkit::build_static_optimized_rotated(code.params[0], code.params[1]);
        return rs;
    }
    if (kind == "static" && code.family == "tree") {
        rs.fixed = bmkit::build_static_tree(code.params);
        return rs;
    }
    if (kind == "static-string" && code.family == "standard-surface") {
        rs.fixed = bmkit::build_static_standard_string(code.params[0], code.params[1]);
        return rs;
    }
    throw std::invalid_argument("scheme kind " + kind + " unavailable for " + code.family);
}

std::string params_string(const bmkit::StabilizerCode &code) {
    std::string s = code.family;
    for (int p : code.params) {
        s += ":" + std::to_string(p);
    }
    return s;
}

struct Row {
    std::string scheme, code_params, pb;
    std::string exact_num, exact_den;
    double mc_estimate = -1, mc_stderr = -1;
    uint64_t trials = 0, seed = 0;
    double wall_seconds = 0;
};

void emit_rows(const std::vector<Row> &rows, const std::string &format, std::ostream &os) {
    if (format == "csv") {
        os << "scheme,code,pb,exact_num,exact_den,mc_estimate,mc_stderr,trials,seed,wall_seconds\n";
        for (const auto &r : rows) {
            os << r.scheme << "," << r.code_params << "," << r.pb << "," << r.exact_num << "," << r.exact_den << ","
               << r.mc_estimate << "," << r.mc_stderr << "," << r.trials << "," << r.seed << "," << r.wall_seconds
               << "\n";
        }
        return;
    }
    if (format == "json") {
        json j = json::array();
        for (const auto &r : rows) {
            j.push_back({{"scheme", r.scheme},
                         {"code", r.code_params},
                         {"pb", r.pb},
                         {"exact_num", r.exact_num},
                         {"exact_den", r.exact_den},
                         {"mc_estimate", r.mc_estimate},
                         {"mc_stderr", r.mc_stderr},
                         {"trials", r.trials},
                         {"seed", r.seed},
                         {"wall_seconds", r.wall_seconds}});
        }
        os << j.dump(2) << "\n";
        return;
    }
    for (const auto &r : rows) {
        os << r.scheme << " on " << r.code_params << " at pb=" << r.pb;
        if (!r.exact_num.empty()) {
            os << "  exact=" << r.exact_num << "/" << r.exact_den;
        }
        if (r.trials) {
            os << "  mc=" << r.mc_estimate << " (stderr " << r.mc_stderr << ", trials " << r.trials << ", seed "
               << r.seed << ")";
        }
        os << "  [" << r.wall_seconds << "s]\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"logical Bell-measurement schemes on stabilizer codes"};
    app.require_subcommand(1);

    CodeArgs code_args;
    std::string scheme_kind = "optimal", scheme_file, pb_string = "1/2", format = "text", output_path;
    uint64_t trials = 100000, seed = kDefaultSeed;
    int workers = 1, dmax = 4;
    bool with_ledger = false, as_json = false, big = false;

    auto add_code_options = [&](CLI::App *cmd) {
        cmd->add_option("--code", code_args.family, "code family: qpc, five-qubit, steane, standard, rotated, tree");
        cmd->add_option("--r", code_args.r, "rows / first dimension");
        cmd->add_option("--m", code_args.m, "columns / second dimension");
        cmd->add_option("--branching", code_args.branching, "tree branching, e.g. 2,2");
        cmd->add_option("--code-file", code_args.code_file, "read the code from a file");
    };
    auto add_scheme_options = [&](CLI::App *cmd) {
        cmd->add_option("--scheme", scheme_kind,
                        "optimal, static-simple, static-optimized, static, static-string");
        cmd->add_option("--scheme-file", scheme_file, "read the scheme from a file");
    };

    CLI::App *verify = app.add_subcommand("verify", "check the sufficient optimality conditions");
    add_code_options(verify);
    add_scheme_options(verify);
    verify->add_option("--pb", pb_string, "physical BM success probability p/q");
    verify->add_flag("--json", as_json, "emit the report as JSON");

    CLI::App *exact = app.add_subcommand("exact", "exact success probability by enumeration");
    add_code_options(exact);
    add_scheme_options(exact);
    exact->add_option("--pb", pb_string, "physical BM success probability p/q");
    exact->add_option("--workers", workers, "worker threads");
    exact->add_option("--format", format, "text, csv, or json");
    exact->add_option("--out", output_path, "write results to a file");
    exact->add_flag("--ledger", with_ledger, "print the per-pattern ledger (small schemes)");

    CLI::App *mc = app.add_subcommand("mc", "Monte-Carlo tableau simulation");
    add_code_options(mc);
    add_scheme_options(mc);
    mc->add_option("--pb", pb_string, "physical BM success probability p/q");
    mc->add_option("--trials", trials, "trial count");
    mc->add_option("--seed", seed, "master seed");
    mc->add_option("--workers", workers, "worker threads");
    mc->add_option("--format", format, "text, csv, or json");
    mc->add_option("--out", output_path, "write results to a file");

    CLI::App *bound_cmd = app.add_subcommand("bound", "upper bound 1-(1-pb)^min(n1,n2)");
    int n1 = 0, n2 = 0;
    bound_cmd->add_option("--n1", n1, "first code size")->required();
    bound_cmd->add_option("--n2", n2, "second code size")->required();
    bound_cmd->add_option("--pb", pb_string, "physical BM success probability p/q");

    CLI::App *physbm = app.add_subcommand("physbm", "dual-rail analyzer amplitudes and P_B");

    CLI::App *compare = app.add_subcommand("compare-rotated", "three-scheme comparison for the rotated surface");
    compare->add_option("--dmax", dmax, "largest code dimension d");
    compare->add_flag("--big", big, "allow the d=5 enumeration");
    compare->add_option("--workers", workers, "worker threads");
    compare->add_option("--format", format, "text, csv, or json");
    compare->add_option("--out", output_path, "write results to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ofstream out_file;
    std::ostream *os = &std::cout;
    if (!output_path.empty()) {
        out_file.open(output_path);
        os = &out_file;
    }

    try {
        bmkit::BellProb pb = bmkit::BellProb::parse(pb_string);

        if (verify->parsed()) {
            ResolvedScheme rs = resolve_scheme(code_args, scheme_kind, scheme_file);
            if (!rs.adaptive) {
                std::cerr << "verify expects a feedforward scheme\n";
                return 2;
            }
            if (!rs.cseq) {
                std::cout << "no candidate generator sequence satisfies conditions 1-2\n";
                return 1;
            }
            bmkit::ConditionReport rep = bmkit::check_conditions(*rs.adaptive, *rs.cseq);
            bool h1 = bmkit::heuristic_no_premature_logical(*rs.adaptive);
            bool h2 = bmkit::heuristic_no_almost_stabilizer(*rs.adaptive);
            bmkit::Rational bound = bmkit::bm_bound(rs.n(), rs.n(), pb);
            if (as_json) {
                json j = json::parse(rep.json());
                j["heuristic_no_premature_logical"] = h1;
                j["heuristic_no_almost_stabilizer"] = h2;
                j["bound"] = bound.to_string();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << rep.text();
                std::cout << "heuristic 1 (no premature logical): " << (h1 ? "holds" : "VIOLATED") << "\n";
                std::cout << "heuristic 2 (no almost-stabilizer): " << (h2 ? "holds" : "VIOLATED") << "\n";
                std::cout << "bound at pb=" << pb_string << ": " << bound.to_string() << "\n";
            }
            return rep.all_passed() ? 0 : 1;
        }

        if (exact->parsed()) {
            ResolvedScheme rs = resolve_scheme(code_args, scheme_kind, scheme_file);
            bmkit::ExactOptions opts;
            opts.workers = workers;
            opts.with_ledger = with_ledger;
            auto t0 = std::chrono::steady_clock::now();
            bmkit::ExactResult res = rs.adaptive ? bmkit::exact_success_probability(*rs.adaptive, pb, opts)
                                                 : bmkit::exact_success_probability(*rs.fixed, pb, opts);
            double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            Row row;
            row.scheme = rs.name();
            row.code_params = params_string(rs.adaptive ? rs.adaptive->code : rs.fixed->code);
            row.pb = pb_string;
            row.exact_num = res.success_probability.num().to_string();
            row.exact_den = res.success_probability.den().to_string();
            row.wall_seconds = wall;
            emit_rows({row}, format, *os);
            if (with_ledger) {
                for (const auto &e : res.ledger) {
                    std::string bits;
                    for (bool b : e.pattern) {
                        bits += b ? '1' : '0';
                    }
                    *os << bits << " -> " << (e.success ? "success" : "fail") << " (x " << (e.x_known ? "known" : "-")
                        << ", z " << (e.z_known ? "known" : "-") << ")\n";
                }
            }
            return 0;
        }

        if (mc->parsed()) {
            ResolvedScheme rs = resolve_scheme(code_args, scheme_kind, scheme_file);
            bmkit::TwoCodeScheme two = rs.adaptive ? bmkit::lift_to_two_code(*rs.adaptive)
                                                   : bmkit::lift_to_two_code(*rs.fixed);
            auto policy = rs.adaptive ? bmkit::SurrogatePolicy::Require : bmkit::SurrogatePolicy::Count;
            auto t0 = std::chrono::steady_clock::now();
            bmkit::MonteCarloResult res = bmkit::monte_carlo(two, trials, seed, pb, workers, policy);
            double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            Row row;
            row.scheme = rs.name();
            row.code_params = params_string(rs.adaptive ? rs.adaptive->code : rs.fixed->code);
            row.pb = pb_string;
            row.mc_estimate = res.estimate;
            row.mc_stderr = res.stderr_estimate;
            row.trials = trials;
            row.seed = seed;
            row.wall_seconds = wall;
            emit_rows({row}, format, *os);
            if (res.logical_errors) {
                std::cerr << "logical errors: " << res.logical_errors << "\n";
                return 1;
            }
            return 0;
        }

        if (bound_cmd->parsed()) {
            if (n1 < 1 || n2 < 1) {
                std::cerr << "code sizes must be positive\n";
                return 2;
            }
            std::cout << bmkit::bm_bound(static_cast<uint32_t>(n1), static_cast<uint32_t>(n2), pb).to_string()
                      << "\n";
            return 0;
        }

        if (physbm->parsed()) {
            bmkit::BellAnalyzer analyzer;
            for (int j = 0; j < 4; j++) {
                std::cout << bmkit::bell_name(static_cast<bmkit::BellIndex>(j)) << " ->\n";
                for (const auto &[pattern, amp] : analyzer.outputs()[static_cast<size_t>(j)].amps) {
                    std::cout << "  |" << pattern[0] << pattern[1] << pattern[2] << pattern[3] << "> "
                              << amp.str() << "\n";
                }
            }
            std::cout << "P_B = " << analyzer.success_probability().to_string() << "\n";
            return 0;
        }

        if (compare->parsed()) {
            if (dmax < 2 || dmax > 5) {
                std::cerr << "compare-rotated supports 2 <= dmax <= 5\n";
                return 2;
            }
            if (dmax >= 5 && !big) {
                std::cerr << "the d=5 enumeration runs 2^25 patterns; pass --big to confirm\n";
                return 3;
            }
            *os << "d,simple_num,simple_den,optimized_num,optimized_den,feedforward_num,feedforward_den\n";
            for (int d = 2; d <= dmax; d++) {
                bmkit::ExactOptions opts;
                opts.workers = workers;
                auto simple = bmkit::exact_success_probability(bmkit::build_static_simple_rotated(d, d), pb, opts);
                auto optimized =
                    bmkit::exact_success_probability(bmkit::build_static_optimized_rotated(d, d), pb, opts);
                bmkit::Rational ff = bmkit::bm_bound(static_cast<uint32_t>(d * d),
                                                     static_cast<uint32_t>(d * d), pb);
                // The optimized static closed form is a cross-check on the
                // enumeration.
                bmkit::Rational closed =
                    bmkit::bm_bound(static_cast<uint32_t>(bmkit::wz_weight(d, d)),
                                    static_cast<uint32_t>(bmkit::wz_weight(d, d)), pb);
                if (!(optimized.success_probability == closed)) {
                    std::cerr << "optimized-static enumeration disagrees with the closed form at d=" << d << "\n";
                    return 1;
                }
                *os << d << "," << simple.success_probability.num().to_string() << ","
                    << simple.success_probability.den().to_string() << ","
                    << optimized.success_probability.num().to_string() << ","
                    << optimized.success_probability.den().to_string() << "," << ff.num().to_string() << ","
                    << ff.den().to_string() << "\n";
            }
            return 0;
        }
    } catch (const std::invalid_argument &e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("cap") != std::string::npos) {
            std::cerr << "advice: raise the cap or use the Monte-Carlo engine for large schemes\n";
            return 3;
        }
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
