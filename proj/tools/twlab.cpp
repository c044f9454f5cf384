#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "twlab/errors.hpp"
#include "twlab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"twlab: Monte Carlo laboratory for Tracy-Widom(beta) orderings"};
    app.require_subcommand(1);

    twlab::CliOptions opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "base RNG seed");
        cmd->add_option("--out", opt.out, "output directory");
        cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    };

    auto* figure1 = app.add_subcommand("figure1", "coupled eigenvalue-vs-beta curves");
    add_common(figure1);
    figure1->add_option("--n", opt.n, "matrix size (default 10)");
    figure1->add_option("--k", opt.k, "number of curves (default 4)");

    auto* verify = app.add_subcommand("verify-ordering", "pathwise and statistical dominance checks");
    add_common(verify);
    verify->add_option("--beta", opt.beta, "smaller beta")->required();
    verify->add_option("--beta-prime", opt.beta_prime, "larger beta")->required();
    verify->add_option("--s", opt.s, "scaling parameter s");
    verify->add_option("--alpha", opt.alpha, "comparison constant alpha (converted to s)");
    verify->add_option("--grid-L", opt.grid_L, "domain length (default 10)");
    verify->add_option("--grid-h", opt.grid_h, "grid step (default 0.01)");
    verify->add_option("--trials", opt.trials, "pathwise check trials (default 100)");
    verify->add_option("--n", opt.n, "coupled sample pairs (default 2000)");
    verify->add_option("--k", opt.k, "eigenvalues per pathwise check (default 8)");
    verify->add_option("--delta", opt.delta, "DKW confidence parameter (default 0.05)");
    verify->add_flag("--strict", opt.strict, "refuse inadmissible s instead of probing it");

    auto* lpp = app.add_subcommand("lpp", "last-passage couplings and edge fluctuations");
    add_common(lpp);
    lpp->add_option("--N", opt.N, "square side length, even (default 8)");
    lpp->add_option("--trials", opt.trials, "trials (default 1000)");
    lpp->add_option("--weights", opt.weights, "weight law: exp or geom:q (default exp)");

    auto* tails = app.add_subcommand("tails", "tail-exponent fits");
    add_common(tails);
    tails->add_option("--beta", opt.beta, "beta (default 2)");
    tails->add_option("--trials", opt.trials, "sample count (default 100000)");
    tails->add_option("--grid-L", opt.grid_L, "domain length (default 10)");
    tails->add_option("--grid-h", opt.grid_h, "grid step (default 0.01)");
    tails->add_flag("--synthetic", opt.synthetic, "exact-law self-test instead of TW samples");

    auto* sample = app.add_subcommand("sample", "raw TW or ensemble samples to CSV");
    add_common(sample);
    sample->add_option("--beta", opt.beta, "beta (default 2)");
    sample->add_option("--trials", opt.trials, "number of draws (default 100)");
    sample->add_option("--k", opt.k, "TW values per draw (default 1)");
    sample->add_option("--n", opt.n, "ensemble matrix size (default 10)");
    sample->add_option("--grid-L", opt.grid_L, "domain length (default 10)");
    sample->add_option("--grid-h", opt.grid_h, "grid step (default 0.01)");
    sample->add_flag("--ensemble", opt.ensemble, "sample beta-ensemble spectra instead of TW");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return twlab::kExitUsage;
    }

    opt.command = app.get_subcommands().front()->get_name();

    try {
        return twlab::run_command(opt);
    } catch (const twlab::InvalidParameter& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return twlab::kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return twlab::kExitIo;
    } catch (const std::runtime_error& e) {
        // file-system problems surface here from the writers
        std::string msg = e.what();
        bool io = msg.find("writ") != std::string::npos || msg.find("director") != std::string::npos;
        std::cerr << (io ? "i/o error: " : "error: ") << msg << "\n";
        return io ? twlab::kExitIo : twlab::kExitVerificationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return twlab::kExitVerificationFailure;
    }
}
