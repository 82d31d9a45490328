#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "scs/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, scs::RunConfig& config) {
    cmd->add_option("--n", config.n, "Signal dimension");
    cmd->add_option("--alpha", config.alpha, "Eigenvalue decay exponent");
    cmd->add_option("--m", config.m, "Total measurement count");
    cmd->add_option("--trials", config.trials, "Monte Carlo trials");
    cmd->add_option("--seed", config.seed, "Master seed");
    cmd->add_option("--threads", config.threads,
                    "Worker threads (default: SCS_THREADS env, else cores)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online adaptive statistical compressed sensing for "
                 "Gaussian mixture models"};
    app.require_subcommand(1);

    scs::RunConfig config;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Synthetic MSE-vs-K sweep over K = 1..M");
    add_common_options(sweep, config);
    sweep->add_option("--matrix", config.matrix_kind,
                      "Random matrix kind (gaussian|bernoulli)");
    sweep->add_flag("--freeze-matrix", config.freeze_matrix,
                    "Reuse one random matrix per K instead of redrawing "
                    "per trial");
    sweep->add_option("--out", config.output_path, "CSV output path");

    CLI::App* c0 = app.add_subcommand(
        "c0", "Monte Carlo estimate of the random-sensing MSE bound "
              "constant");
    add_common_options(c0, config);
    c0->add_option("--matrix", config.matrix_kind,
                   "Sensing kind (gaussian|bernoulli|principal)");
    c0->add_option("--out", config.output_path, "CSV output path");

    CLI::App* image = app.add_subcommand(
        "image", "Adaptive vs standard sensing of an 8-bit PGM");
    add_common_options(image, config);
    image->add_option("--input", config.input_path, "Input PGM (binary P5)")
        ->required();
    image->add_option("--k-min", config.k_min, "Smallest K to run");
    image->add_option("--k-max", config.k_max, "Largest K to run (default M)");
    image->add_option("--out-dir", config.output_dir,
                      "Directory for reconstructions and CSV");
    image->add_option("--out", config.output_path,
                      "CSV path (default <out-dir>/psnr.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sweep->parsed()) {
            config.command = "sweep";
            scs::cmd_synthetic_sweep(config, std::cout);
        } else if (c0->parsed()) {
            config.command = "c0";
            scs::cmd_c0(config, std::cout);
        } else if (image->parsed()) {
            config.command = "image";
            scs::cmd_image(config, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scs::exit_code_for_current_exception();
    }
    return 0;
}
