#include "scs/simulation.hpp"

#include <cmath>

#include "scs/decoder.hpp"
#include "scs/errors.hpp"
#include "scs/parallel.hpp"

namespace scs {

namespace {

// Arm codes for seed derivation; fixed so runs stay comparable.
constexpr std::uint64_t kArmAdaptive = 0;
constexpr std::uint64_t kArmStandard = 1;
constexpr std::uint64_t kArmFrozenAdaptive = 2;
constexpr std::uint64_t kArmFrozenStandard = 3;
constexpr std::uint64_t kArmC0 = 4;

double kahan_sum(const std::vector<double>& values) {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double sample_stderr(const std::vector<double>& values, double mean) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    const double variance = acc / static_cast<double>(n - 1);
    return std::sqrt(variance / static_cast<double>(n));
}

} // namespace

const ErrorComponents::Cell& ErrorComponents::component(int which) const {
    switch (which) {
        case 1: return cells_[1][1];
        case 2: return cells_[1][0];
        case 3: return cells_[0][1];
        case 4: return cells_[0][0];
        default: throw ValidationError("ErrorComponents: component must be 1..4");
    }
}

double ErrorComponents::contribution_stderr(int which) const {
    if (total_trials_ < 2) return 0.0;
    const Cell& c = component(which);
    const double n = static_cast<double>(total_trials_);
    const double mean = c.sum_squared_error / n;
    const double variance =
        std::max(0.0, (c.sum_squared_error_sq - n * mean * mean) / (n - 1.0));
    return std::sqrt(variance / n) / energy_;
}

double ErrorComponents::mse() const {
    double total = 0.0;
    for (int which = 1; which <= 4; ++which)
        total += component(which).sum_squared_error;
    return total / static_cast<double>(total_trials_);
}

Gmm make_synthetic_gmm(int dimension, double alpha) {
    GaussianModel first = make_power_law_gaussian(dimension, alpha);
    GaussianModel second = make_flipped_gaussian(first);
    std::vector<GaussianModel> models;
    models.push_back(std::move(first));
    models.push_back(std::move(second));
    return Gmm(std::move(models));
}

StandardTrialOutcome run_standard_scs_trial(const Gmm& gmm, int true_index,
                                            int m, Rng& rng, RandomKind kind,
                                            const SensingMatrix* frozen) {
    if (true_index < 0 || true_index >= gmm.model_count())
        throw ValidationError("run_standard_scs_trial: bad model index");
    const Eigen::VectorXd x = gmm.model(true_index).sample(rng);
    SensingMatrix drawn;
    const SensingMatrix* phi = frozen;
    if (!phi) {
        drawn = draw_random_matrix(kind, m, gmm.dimension(), rng);
        phi = &drawn;
    }
    const MeasurementVector y = encode(*phi, x);
    const DecodeResult decoded = piecewise_decode(gmm, *phi, y);
    return {(x - decoded.reconstruction).squaredNorm(), decoded.selected_index};
}

AdaptiveTrialOutcome run_adaptive_trial(const Gmm& gmm, int true_index, int m,
                                        int k, Rng& rng, RandomKind kind,
                                        const SensingMatrix* frozen) {
    if (true_index < 0 || true_index >= gmm.model_count())
        throw ValidationError("run_adaptive_trial: bad model index");
    const Eigen::VectorXd x = gmm.model(true_index).sample(rng);
    const AdaptiveOutcome outcome =
        run_adaptive(gmm, x, m, k, rng, kind, frozen);
    return {(x - outcome.result.reconstruction).squaredNorm(),
            outcome.online_index, outcome.final_index};
}

SweepResult sweep_k(const Gmm& gmm, int m, long trials, std::uint64_t seed,
                    const SweepOptions& options) {
    if (m < 1 || m > gmm.dimension())
        throw ValidationError("sweep_k: need 1 <= M <= N");
    if (trials < 1)
        throw ValidationError("sweep_k: trials must be >= 1");

    const int true_index = 0;
    const double energy = gmm.model(true_index).eigenvalues().sum();
    const std::size_t count = static_cast<std::size_t>(trials);

    SweepResult result;
    result.m = m;
    result.trials = trials;
    result.seed = seed;
    result.mean_signal_energy = energy;
    result.per_k.reserve(m);

    std::vector<AdaptiveTrialOutcome> adaptive(count);
    std::vector<StandardTrialOutcome> standard(count);

    for (int k = 1; k <= m; ++k) {
        SensingMatrix frozen_adaptive, frozen_standard;
        const SensingMatrix* frozen_a = nullptr;
        const SensingMatrix* frozen_s = nullptr;
        if (options.freeze_matrix) {
            Rng rng_a(derive_seed(seed, k, 0, kArmFrozenAdaptive));
            frozen_adaptive =
                draw_random_matrix(options.kind, k, gmm.dimension(), rng_a);
            frozen_a = &frozen_adaptive;
            Rng rng_s(derive_seed(seed, k, 0, kArmFrozenStandard));
            frozen_standard =
                draw_random_matrix(options.kind, m, gmm.dimension(), rng_s);
            frozen_s = &frozen_standard;
        }

        parallel_for(count, options.threads, [&](std::size_t t) {
            Rng rng_adaptive(derive_seed(seed, k, t, kArmAdaptive));
            adaptive[t] = run_adaptive_trial(gmm, true_index, m, k,
                                             rng_adaptive, options.kind,
                                             frozen_a);
            Rng rng_standard(derive_seed(seed, k, t, kArmStandard));
            standard[t] = run_standard_scs_trial(gmm, true_index, m,
                                                 rng_standard, options.kind,
                                                 frozen_s);
        });

        // Ordered reduction: results do not depend on the worker count.
        KRecord record;
        record.k = k;
        record.trials = trials;
        record.seed = seed;
        record.components = ErrorComponents(trials, energy);
        std::vector<double> adaptive_errors(count), standard_errors(count);
        long online_wrong = 0, final_wrong = 0;
        for (std::size_t t = 0; t < count; ++t) {
            const AdaptiveTrialOutcome& a = adaptive[t];
            adaptive_errors[t] = a.squared_error;
            standard_errors[t] = standard[t].squared_error;
            const bool online_ok = a.online_index == true_index;
            const bool final_ok = a.final_index == true_index;
            if (!online_ok) ++online_wrong;
            if (!final_ok) ++final_wrong;
            record.components.add(online_ok, final_ok, a.squared_error);
        }
        // The adaptive MSE comes from the component accumulators so the
        // four-cell decomposition sums to it exactly.
        record.mse_adaptive = record.components.mse();
        record.mse_standard =
            kahan_sum(standard_errors) / static_cast<double>(trials);
        record.stderr_adaptive =
            sample_stderr(adaptive_errors, record.mse_adaptive);
        record.stderr_standard =
            sample_stderr(standard_errors, record.mse_standard);
        record.online_error_rate =
            static_cast<double>(online_wrong) / static_cast<double>(trials);
        record.final_error_rate =
            static_cast<double>(final_wrong) / static_cast<double>(trials);
        result.per_k.push_back(std::move(record));
    }
    return result;
}

C0Estimate estimate_c0(const GaussianModel& g, SensingScheme scheme, int m,
                       long trials, std::uint64_t seed, unsigned threads) {
    if (trials < 1)
        throw ValidationError("estimate_c0: trials must be >= 1");
    if (m < 1 || m >= g.dimension())
        throw ValidationError("estimate_c0: need 1 <= M < N");
    const double floor = g.linear_approx_error(m);
    if (floor <= 0.0)
        throw ValidationError("estimate_c0: sigma^2_M is zero, ratio undefined");

    SensingMatrix principal;
    if (scheme == SensingScheme::PrincipalDirection)
        principal = principal_direction_matrix(g, m, 0, 0);

    const std::size_t count = static_cast<std::size_t>(trials);
    std::vector<double> errors(count);
    parallel_for(count, threads, [&](std::size_t t) {
        Rng rng(derive_seed(seed, m, t, kArmC0));
        const Eigen::VectorXd x = g.sample(rng);
        SensingMatrix drawn;
        const SensingMatrix* phi = &principal;
        if (scheme == SensingScheme::RandomGaussian) {
            drawn = random_gaussian_matrix(m, g.dimension(), rng);
            phi = &drawn;
        } else if (scheme == SensingScheme::RandomBernoulli) {
            drawn = random_bernoulli_matrix(m, g.dimension(), rng);
            phi = &drawn;
        }
        const MeasurementVector y = encode(*phi, x);
        const Eigen::VectorXd decoded = map_decode(g, *phi, y);
        errors[t] = (x - decoded).squaredNorm();
    });

    const double mean = kahan_sum(errors) / static_cast<double>(trials);
    C0Estimate estimate;
    estimate.value = mean / floor;
    estimate.stderr_value = sample_stderr(errors, mean) / floor;
    estimate.trials = trials;
    return estimate;
}

} // namespace scs
