#ifndef SCS_CLI_HPP
#define SCS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace scs {

/// Parsed command configuration. Validation happens before any compute.
struct RunConfig {
    std::string command;  // "sweep" | "c0" | "image"

    int n = 64;
    double alpha = 2.0;
    int m = 16;
    int k_min = 1;
    int k_max = 0;  // 0: defaults to m
    long trials = 10000;
    std::uint64_t seed = 0;
    std::string matrix_kind = "gaussian";  // gaussian | bernoulli | principal
    bool freeze_matrix = false;
    unsigned threads = 0;

    std::string input_path;
    std::string output_path;  // CSV destination
    std::string output_dir;   // image command artifacts

    void validate() const;
};

/// Format with up to 17 significant digits, enough to round-trip a double
/// and byte-stable across conforming platforms.
std::string format_double(double value);

/// Synthetic sweep over K = 1..M; writes one CSV row per K with header
/// k,mse_adaptive,mse_standard,online_err_rate,final_err_rate,
/// comp1,comp2,comp3,comp4,stderr_adaptive,stderr_standard,trials.
void cmd_synthetic_sweep(const RunConfig& config, std::ostream& log);

/// Monte Carlo bound-constant estimate; prints a one-line report and
/// writes CSV matrix_kind,m,trials,c0_estimate,stderr when an output path
/// is configured.
void cmd_c0(const RunConfig& config, std::ostream& log);

/// Image experiment: adaptive reconstructions per K plus the standard
/// baseline, PGM outputs and a k,psnr_adaptive_db,psnr_standard_db CSV.
void cmd_image(const RunConfig& config, std::ostream& log);

/// Map an escaped exception to the documented exit code:
/// 1 usage/validation, 2 I/O, 3 numeric failure.
int exit_code_for_current_exception();

} // namespace scs

#endif
