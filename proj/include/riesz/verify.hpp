#pragma once

// Acceptance-check library: every check returns a pass/fail verdict with a
// numeric detail string.  The same checks back the command-line `verify`
// subcommand (with caller-supplied tolerances) and the acceptance binary
// (with the pinned defaults).

#include <string>
#include <vector>

namespace riesz {

struct CheckResult {
    std::string name;    // short machine-ish identifier
    std::string title;   // human description printed by the runners
    bool pass = false;
    std::string detail;  // measured numbers vs tolerances
    double seconds = 0.0;
};

// Options for the parameterized suites; zero/empty fields mean "use the
// pinned default".
struct SuiteOptions {
    double tol = 0.0;
    int trials = 0;
    std::vector<double> t_extra;  // extra partition sample points (must lie in [0,1))
};

CheckResult check_partition_identity(const SuiteOptions& opt = {});   // 1
CheckResult check_scalar_identity(const SuiteOptions& opt = {});      // 2
CheckResult check_shell_decomposition(const SuiteOptions& opt = {});  // 3
CheckResult check_reconstruction();                                   // 4
CheckResult check_square_plancherel(const SuiteOptions& opt = {});    // 5
CheckResult check_kernel_cross_validation(const SuiteOptions& opt = {});  // 6
CheckResult check_shell_kernel_constant();                            // 7
CheckResult check_dyadic_decay();                                     // 8
CheckResult check_convergence();                                      // 9
CheckResult check_exponent_calculus();                                // 10
CheckResult check_path_equivalence();                                 // 11
CheckResult check_telescoping(const SuiteOptions& opt = {});          // 12

// All twelve, in order.
std::vector<CheckResult> run_all_checks();

// Named suites for the command line: partition, steinweiss, decomposition,
// plancherel, kernel, telescope, shellbound.  Unknown names throw
// std::invalid_argument (a configuration error, not a check failure).
CheckResult run_suite(const std::string& name, const SuiteOptions& opt);

struct BenchResult {
    double tensor_seconds = 0.0;
    double loop_seconds = 0.0;
    double speedup = 0.0;    // loop / tensor
    double agreement = 0.0;  // sup-relative deviation between the two paths
};

// Times both bilinear evaluation paths on a dense-spectrum pair (dimension
// one, N as given, alpha = 1, R = 6), minimum over `reps` repetitions after a
// warm-up run.
BenchResult bench_bilinear_paths(int N = 1024, int reps = 3);

}  // namespace riesz
