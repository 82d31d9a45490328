#ifndef SCS_SIMULATION_HPP
#define SCS_SIMULATION_HPP

#include <cstdint>
#include <vector>

#include "scs/adaptive.hpp"
#include "scs/gmm_core.hpp"
#include "scs/sensing.hpp"

namespace scs {

/// Squared-error mass of adaptive trials split into four cells indexed by
/// whether the online and the final selections were correct. Counts sum
/// to the trial count and the cells' unnormalized means sum to the MSE.
class ErrorComponents {
public:
    struct Cell {
        long event_count = 0;
        double sum_squared_error = 0.0;
        double sum_squared_error_sq = 0.0;  // second moment for stderr
    };

    ErrorComponents(long total_trials, double mean_signal_energy)
        : total_trials_(total_trials), energy_(mean_signal_energy) {}

    void add(bool online_correct, bool final_correct, double squared_error) {
        Cell& c = cells_[online_correct ? 1 : 0][final_correct ? 1 : 0];
        c.event_count += 1;
        c.sum_squared_error += squared_error;
        c.sum_squared_error_sq += squared_error * squared_error;
    }

    const Cell& cell(bool online_correct, bool final_correct) const {
        return cells_[online_correct ? 1 : 0][final_correct ? 1 : 0];
    }

    /// Components in the usual order: 1 = (correct, correct),
    /// 2 = (correct, incorrect), 3 = (incorrect, correct),
    /// 4 = (incorrect, incorrect).
    const Cell& component(int which) const;

    /// Squared error summed over the cell, divided by total trials and by
    /// the mean signal energy.
    double contribution(int which) const {
        return component(which).sum_squared_error /
               static_cast<double>(total_trials_) / energy_;
    }

    /// Standard error of a component's contribution, treating the
    /// per-trial variable as (squared error if the trial lands in the
    /// cell, else zero).
    double contribution_stderr(int which) const;

    /// Event frequency of a component among all trials.
    double rate(int which) const {
        return static_cast<double>(component(which).event_count) /
               static_cast<double>(total_trials_);
    }

    /// Sum of the four unnormalized cell means.
    double mse() const;

    long total_trials() const { return total_trials_; }
    double mean_signal_energy() const { return energy_; }

private:
    Cell cells_[2][2];
    long total_trials_ = 0;
    double energy_ = 1.0;
};

struct StandardTrialOutcome {
    double squared_error = 0.0;
    int selected_index = 0;
};

struct AdaptiveTrialOutcome {
    double squared_error = 0.0;
    int online_index = 0;
    int final_index = 0;
};

/// Per-K aggregate of a sweep.
struct KRecord {
    int k = 0;
    double mse_adaptive = 0.0;
    double mse_standard = 0.0;
    double stderr_adaptive = 0.0;
    double stderr_standard = 0.0;
    double online_error_rate = 0.0;
    double final_error_rate = 0.0;
    ErrorComponents components{0, 1.0};
    long trials = 0;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<KRecord> per_k;  // K = 1..M in order
    int m = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    double mean_signal_energy = 0.0;
};

struct SweepOptions {
    RandomKind kind = RandomKind::Gaussian;
    bool freeze_matrix = false;  // one matrix per K instead of per trial
    unsigned threads = 0;        // 0: SCS_THREADS env, else hardware
};

/// The two-model ensemble: power-law eigenvalues on canonical axes plus
/// the left-right flipped companion.
Gmm make_synthetic_gmm(int dimension = 64, double alpha = 2.0);

/// Draw x from gmm[true_index], sense with a fresh (or frozen) random
/// matrix of m rows, piecewise decode.
StandardTrialOutcome run_standard_scs_trial(
    const Gmm& gmm, int true_index, int m, Rng& rng,
    RandomKind kind = RandomKind::Gaussian,
    const SensingMatrix* frozen = nullptr);

/// Draw x from gmm[true_index] and run the full adaptive pipeline.
AdaptiveTrialOutcome run_adaptive_trial(
    const Gmm& gmm, int true_index, int m, int k, Rng& rng,
    RandomKind kind = RandomKind::Gaussian,
    const SensingMatrix* frozen = nullptr);

/// For each K in 1..m run `trials` adaptive and `trials` standard trials
/// with per-(K, trial, arm) derived seeds, signals drawn from model 0.
/// Bit-identical results for equal (seed, parameters) at any thread count.
SweepResult sweep_k(const Gmm& gmm, int m, long trials, std::uint64_t seed,
                    const SweepOptions& options = {});

enum class SensingScheme { RandomGaussian, RandomBernoulli, PrincipalDirection };

struct C0Estimate {
    double value = 0.0;       // Monte Carlo MSE / sigma^2_M
    double stderr_value = 0.0;
    long trials = 0;
};

/// Monte Carlo estimate of the MSE-to-optimum ratio for single-Gaussian
/// MAP decoding: mean ||x - decode(Phi x)||^2 over trials divided by the
/// tail eigenvalue sum. Rejects m with a zero tail (ratio undefined).
C0Estimate estimate_c0(const GaussianModel& g, SensingScheme scheme, int m,
                       long trials, std::uint64_t seed, unsigned threads = 0);

} // namespace scs

#endif
