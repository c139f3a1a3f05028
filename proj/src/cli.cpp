#include "gradsos/cli.hpp"

#include "gradsos/bench.hpp"
#include "gradsos/certio.hpp"
#include "gradsos/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace gradsos {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_certify(const std::string& in_path, const std::string& mode, const std::string& out_path) {
    try {
        ProblemInput in = parse_problem(read_file(in_path));
        Certificate cert =
            mode == "poly" ? Certificate{sos_shape(in.f)} : Certificate{sos_grad(in.f)};
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            out << write_certificate(cert);
            if (!out) {
                std::cerr << "cannot write '" << out_path << "'\n";
                return 2;
            }
        }
        Metrics m = bitsize_metrics(cert);
        std::cout << "delta\td_h\ttau_h\ttau_sos\tt_h_ms\tt_sos_ms\n";
        std::cout << m.delta << '\t' << m.d_h << '\t' << m.tau_h << '\t' << m.tau_sos << '\t'
                  << std::fixed << std::setprecision(3) << m.t_h_ms << '\t' << m.t_sos_ms << '\n';
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << '\n';
        return 3;
    } catch (const NotNonnegativeOnCriticalCurve& e) {
        std::cerr << "not nonnegative: " << e.what() << '\n';
        return 4;
    } catch (const NotNonnegative& e) {
        std::cerr << "not nonnegative: " << e.what() << '\n';
        return 4;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return 5;
    }
}

int run_verify(const std::string& in_path, const std::string& cert_path) {
    try {
        ProblemInput in = parse_problem(read_file(in_path));
        Certificate cert = parse_certificate(read_file(cert_path));
        VerifyReport rep = verify(in.f, cert);
        auto flag = [](bool b) { return b ? "true" : "false"; };
        std::cout << "identity_holds = " << flag(rep.identity_holds) << '\n'
                  << "weights_positive = " << flag(rep.weights_positive) << '\n'
                  << "multipliers_in_gradient_ideal = " << flag(rep.multipliers_in_gradient_ideal)
                  << '\n'
                  << "attainment_assumed = " << flag(rep.attainment_assumed) << '\n';
        if (!rep.detail.empty()) std::cout << "detail = " << rep.detail << '\n';
        std::cout << "result = " << (rep.pass() ? "PASS" : "FAIL") << '\n';
        return rep.pass() ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"exact nonnegativity certificates through critical-point restrictions"};
    app.require_subcommand(1);

    std::string in_path, cert_path, out_path;
    std::string mode = "frac";
    BenchOptions bopt;

    CLI::App* cmd_certify = app.add_subcommand(
        "certify", "compute a certificate for the polynomial in the input file");
    cmd_certify->add_option("input", in_path, "problem file: 'nvars = k' header, then a polynomial")
        ->required();
    cmd_certify->add_option("--mode", mode, "certificate flavor")
        ->check(CLI::IsMember({"poly", "frac"}))
        ->capture_default_str();
    cmd_certify->add_option("--out", out_path, "write the certificate to this file");

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "check a certificate file against an input file");
    cmd_verify->add_option("input", in_path, "problem file")->required();
    cmd_verify->add_option("certificate", cert_path, "certificate file")->required();

    CLI::App* cmd_bench = app.add_subcommand(
        "bench", "generate random instances, certify them, and tabulate size/time metrics");
    cmd_bench->add_option("--n", bopt.nvars, "number of variables (>= 2)")->capture_default_str();
    cmd_bench->add_option("--d", bopt.degree, "instance degree, 4 or 6")->capture_default_str();
    cmd_bench->add_option("--count", bopt.count, "number of instances")->capture_default_str();
    cmd_bench->add_option("--seed", bopt.seed, "PRNG seed")->capture_default_str();
    cmd_bench->add_option("--mode", bopt.mode, "certificate flavor")
        ->check(CLI::IsMember({"poly", "frac"}))
        ->capture_default_str();
    cmd_bench->add_option("--recipe", bopt.recipe, "coefficient ranges for the degree-4 family")
        ->check(CLI::IsMember({"t1", "t2"}))
        ->capture_default_str();
    cmd_bench->add_option("--jobs", bopt.jobs, "parallel instances; rows stay in instance order")
        ->capture_default_str();
    cmd_bench->add_option("--timeout", bopt.timeout_sec,
                          "wall-clock budget in seconds for the whole batch (0 = none)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*cmd_certify) return run_certify(in_path, mode, out_path);
    if (*cmd_verify) return run_verify(in_path, cert_path);
    if (*cmd_bench) return run_bench(bopt, std::cout);
    return 2;
}

}  // namespace gradsos
