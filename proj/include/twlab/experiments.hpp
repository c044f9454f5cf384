#pragma once

#include <cstdint>
#include <string>

namespace twlab {

// Exit codes shared by the CLI and the command runners.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Parsed command line; 0 / empty marks "not given" where a command-specific
// default applies.
struct CliOptions {
    std::string command;
    std::uint64_t seed = 1;
    std::string out = ".";
    unsigned threads = 0;  // 0 = available parallelism

    double beta = 0.0;
    double beta_prime = 0.0;
    double s = 0.0;
    double alpha = 0.0;
    double grid_L = 10.0;
    double grid_h = 0.01;
    std::size_t n = 0;
    int N = 0;
    std::size_t trials = 0;
    std::size_t k = 0;
    double delta = 0.05;
    bool strict = false;
    bool synthetic = false;
    bool ensemble = false;
    std::string weights = "exp";
};

int run_figure1(const CliOptions& opt);
int run_verify_ordering(const CliOptions& opt);
int run_lpp(const CliOptions& opt);
int run_tails(const CliOptions& opt);
int run_sample(const CliOptions& opt);

// dispatch on opt.command
int run_command(const CliOptions& opt);

}  // namespace twlab
