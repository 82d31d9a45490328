#ifndef SCS_ADAPTIVE_HPP
#define SCS_ADAPTIVE_HPP

#include <Eigen/Dense>
#include <optional>

#include "scs/decoder.hpp"
#include "scs/gmm_core.hpp"
#include "scs/rng.hpp"
#include "scs/sensing.hpp"

namespace scs {

/// Two-phase online adaptive acquisition:
///
///   1. sense with a K x N random matrix,
///   2. select a model online from those K measurements,
///   3. sense with the first M-K principal directions of the selected
///      model,
///   4. decode from all M measurements with the piecewise decoder.
///
/// The session never sees the raw signal; it accepts only measurement
/// vectors, which is what makes it usable in a real acquisition loop
/// where adaptive rows cannot be evaluated before the selection is known.
/// The model chosen in step 2 is frozen; it is never revisited.
///
/// A session references its Gmm without owning it and is mutated by a
/// single owner; distinct sessions are independent.
class AdaptiveSession {
public:
    enum class Phase { AwaitingRandom, AwaitingOptimal, Complete };

    /// Draws the K x N random phase matrix (Gaussian kind by default)
    /// unless frozen_random supplies one. Requires 1 <= K <= M <= N.
    AdaptiveSession(const Gmm& gmm, int total_measurements, int random_count,
                    Rng& rng, RandomKind kind = RandomKind::Gaussian,
                    const SensingMatrix* frozen_random = nullptr);

    Phase phase() const { return phase_; }
    int total_measurements() const { return total_; }
    int random_count() const { return random_count_; }
    const SensingMatrix& random_matrix() const { return random_matrix_; }

    /// Step 2: online decode + model selection from the K random
    /// measurements; fixes the principal-direction matrix for step 3.
    /// Returns the online selection.
    int submit_random_measurements(const Eigen::VectorXd& y_random);

    /// Step 4: decode from random-then-optimal measurements over the full
    /// GMM. Returns the final DecodeResult (also kept on the session).
    DecodeResult submit_optimal_measurements(const Eigen::VectorXd& y_optimal);

    /// Available once the random measurements were submitted.
    int online_index() const;
    const SensingMatrix& optimal_matrix() const;
    /// Available once complete.
    const DecodeResult& result() const;

private:
    const Gmm* gmm_;
    int total_;
    int random_count_;
    Phase phase_ = Phase::AwaitingRandom;
    SensingMatrix random_matrix_;
    Eigen::VectorXd random_values_;
    std::optional<int> online_index_;
    std::optional<SensingMatrix> optimal_matrix_;
    std::optional<DecodeResult> result_;
};

struct AdaptiveOutcome {
    DecodeResult result;
    int online_index = 0;  // selection from the random phase
    int final_index = 0;   // selection of the final decode
};

/// Simulation driver: encodes x against the session's matrices and runs
/// the two submit steps. The only place the raw signal is touched.
AdaptiveOutcome run_adaptive(const Gmm& gmm, const Eigen::VectorXd& x,
                             int total_measurements, int random_count,
                             Rng& rng, RandomKind kind = RandomKind::Gaussian,
                             const SensingMatrix* frozen_random = nullptr);

} // namespace scs

#endif
