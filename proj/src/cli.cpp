#include "scs/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "scs/errors.hpp"
#include "scs/imaging.hpp"
#include "scs/simulation.hpp"

namespace scs {

namespace {

SensingScheme parse_scheme(const std::string& kind) {
    if (kind == "gaussian") return SensingScheme::RandomGaussian;
    if (kind == "bernoulli") return SensingScheme::RandomBernoulli;
    if (kind == "principal") return SensingScheme::PrincipalDirection;
    throw ValidationError("unknown matrix kind '" + kind + "'");
}

RandomKind parse_random_kind(const std::string& kind) {
    if (kind == "gaussian") return RandomKind::Gaussian;
    if (kind == "bernoulli") return RandomKind::Bernoulli;
    throw ValidationError("matrix kind '" + kind +
                          "' is not a random kind (gaussian|bernoulli)");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
    if (m < 1 || m > n) throw ValidationError("need 1 <= m <= n");
    if (trials < 1) throw ValidationError("trials must be >= 1");
    const int k_hi = k_max == 0 ? m : k_max;
    if (k_min < 1 || k_hi < k_min || k_hi > m)
        throw ValidationError("need 1 <= k-min <= k-max <= m");
    if (command == "image" && input_path.empty())
        throw ValidationError("image command requires an input PGM");
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void cmd_synthetic_sweep(const RunConfig& config, std::ostream& log) {
    config.validate();

    // Output paths are validated before any compute.
    std::ofstream out;
    if (!config.output_path.empty()) out = open_output(config.output_path);

    const Gmm gmm = make_synthetic_gmm(config.n, config.alpha);
    SweepOptions options;
    options.kind = parse_random_kind(config.matrix_kind);
    options.freeze_matrix = config.freeze_matrix;
    options.threads = config.threads;
    const SweepResult sweep =
        sweep_k(gmm, config.m, config.trials, config.seed, options);

    std::ostringstream csv;
    csv << "k,mse_adaptive,mse_standard,online_err_rate,final_err_rate,"
           "comp1,comp2,comp3,comp4,stderr_adaptive,stderr_standard,trials\n";
    for (const KRecord& row : sweep.per_k) {
        csv << row.k << ',' << format_double(row.mse_adaptive) << ','
            << format_double(row.mse_standard) << ','
            << format_double(row.online_error_rate) << ','
            << format_double(row.final_error_rate) << ','
            << format_double(row.components.contribution(1)) << ','
            << format_double(row.components.contribution(2)) << ','
            << format_double(row.components.contribution(3)) << ','
            << format_double(row.components.contribution(4)) << ','
            << format_double(row.stderr_adaptive) << ','
            << format_double(row.stderr_standard) << ',' << row.trials
            << '\n';
    }

    if (!config.output_path.empty()) {
        out << csv.str();
        out.flush();
        if (!out) throw IoError("write failure on '" + config.output_path + "'");
        log << "wrote " << sweep.per_k.size() << " rows to "
            << config.output_path << "\n";
    } else {
        log << csv.str();
    }
}

void cmd_c0(const RunConfig& config, std::ostream& log) {
    config.validate();
    if (config.m >= config.n)
        throw ValidationError("c0 requires m < n (sigma^2_M would be zero)");

    std::ofstream out;
    if (!config.output_path.empty()) out = open_output(config.output_path);

    const GaussianModel model = make_power_law_gaussian(config.n, config.alpha);
    const SensingScheme scheme = parse_scheme(config.matrix_kind);
    const C0Estimate estimate = estimate_c0(model, scheme, config.m,
                                            config.trials, config.seed,
                                            config.threads);

    log << "c0_estimate=" << format_double(estimate.value)
        << " stderr=" << format_double(estimate.stderr_value)
        << " matrix_kind=" << config.matrix_kind << " m=" << config.m
        << " trials=" << config.trials << "\n";

    if (!config.output_path.empty()) {
        out << "matrix_kind,m,trials,c0_estimate,stderr\n"
            << config.matrix_kind << ',' << config.m << ',' << config.trials
            << ',' << format_double(estimate.value) << ','
            << format_double(estimate.stderr_value) << '\n';
        out.flush();
        if (!out) throw IoError("write failure on '" + config.output_path + "'");
    }
}

void cmd_image(const RunConfig& config, std::ostream& log) {
    config.validate();

    const GrayImage img = load_pgm(config.input_path);

    // Validate the output side before the (possibly long) decode.
    const std::filesystem::path dir =
        config.output_dir.empty() ? "." : config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "'");
    const std::filesystem::path csv_path =
        config.output_path.empty() ? dir / "psnr.csv"
                                   : std::filesystem::path(config.output_path);
    auto out = open_output(csv_path.string());

    Rng gmm_rng(derive_seed(config.seed, 0, 0, 19));
    const Gmm gmm = build_directional_gmm(19, 8, gmm_rng);

    std::vector<int> k_list;
    const int k_hi = config.k_max == 0 ? config.m : config.k_max;
    for (int k = config.k_min; k <= k_hi; ++k) k_list.push_back(k);

    const ImageExperimentResult result = run_image_experiment(
        img, gmm, config.m, k_list, config.seed, config.threads);

    for (std::size_t i = 0; i < k_list.size(); ++i) {
        const auto path =
            dir / ("recon_k" + std::to_string(k_list[i]) + ".pgm");
        save_pgm(result.adaptive_reconstructions[i], path.string());
    }
    save_pgm(result.standard_reconstruction,
             (dir / "recon_standard.pgm").string());

    out << "k,psnr_adaptive_db,psnr_standard_db\n";
    for (const auto& row : result.report.rows) {
        out << row.k << ',' << format_double(row.psnr_adaptive) << ','
            << format_double(row.psnr_standard) << '\n';
        log << "K=" << row.k
            << " psnr_adaptive=" << format_double(row.psnr_adaptive)
            << " psnr_standard=" << format_double(row.psnr_standard) << "\n";
    }
    if (!out) throw IoError("write failure on '" + csv_path.string() + "'");
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const ValidationError&) {
        return 1;
    } catch (const FormatError&) {
        return 2;
    } catch (const IoError&) {
        return 2;
    } catch (const NumericError&) {
        return 3;
    } catch (...) {
        return 3;
    }
}

} // namespace scs
