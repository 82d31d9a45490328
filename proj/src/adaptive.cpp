#include "scs/adaptive.hpp"

#include "scs/errors.hpp"

namespace scs {

AdaptiveSession::AdaptiveSession(const Gmm& gmm, int total_measurements,
                                 int random_count, Rng& rng, RandomKind kind,
                                 const SensingMatrix* frozen_random)
    : gmm_(&gmm), total_(total_measurements), random_count_(random_count) {
    if (random_count < 1 || random_count > total_measurements ||
        total_measurements > gmm.dimension())
        throw ValidationError("AdaptiveSession: need 1 <= K <= M <= N");
    if (frozen_random) {
        if (frozen_random->rows() != random_count ||
            frozen_random->cols() != gmm.dimension())
            throw ValidationError("AdaptiveSession: frozen matrix has wrong shape");
        random_matrix_ = *frozen_random;
    } else {
        random_matrix_ =
            draw_random_matrix(kind, random_count, gmm.dimension(), rng);
    }
}

int AdaptiveSession::submit_random_measurements(
    const Eigen::VectorXd& y_random) {
    if (phase_ != Phase::AwaitingRandom)
        throw StateError("AdaptiveSession: random measurements already submitted");
    if (y_random.size() != random_count_)
        throw ValidationError("AdaptiveSession: expected K random measurements");

    random_values_ = y_random;
    const DecodeResult online =
        piecewise_decode(*gmm_, random_matrix_, {y_random, &random_matrix_});
    online_index_ = online.selected_index;
    optimal_matrix_ = principal_direction_matrix(
        gmm_->model(*online_index_), total_ - random_count_, 0,
        *online_index_);
    phase_ = Phase::AwaitingOptimal;
    return *online_index_;
}

DecodeResult AdaptiveSession::submit_optimal_measurements(
    const Eigen::VectorXd& y_optimal) {
    if (phase_ != Phase::AwaitingOptimal)
        throw StateError(phase_ == Phase::AwaitingRandom
                             ? "AdaptiveSession: random measurements come first"
                             : "AdaptiveSession: session already complete");
    if (y_optimal.size() != total_ - random_count_)
        throw ValidationError("AdaptiveSession: expected M-K optimal measurements");

    const SensingMatrix full = concat(random_matrix_, *optimal_matrix_);
    Eigen::VectorXd values(total_);
    values.head(random_count_) = random_values_;
    values.tail(total_ - random_count_) = y_optimal;

    result_ = piecewise_decode(*gmm_, full, {std::move(values), &full});
    phase_ = Phase::Complete;
    return *result_;
}

int AdaptiveSession::online_index() const {
    if (!online_index_)
        throw StateError("AdaptiveSession: online selection not made yet");
    return *online_index_;
}

const SensingMatrix& AdaptiveSession::optimal_matrix() const {
    if (!optimal_matrix_)
        throw StateError("AdaptiveSession: optimal matrix not built yet");
    return *optimal_matrix_;
}

const DecodeResult& AdaptiveSession::result() const {
    if (!result_)
        throw StateError("AdaptiveSession: session not complete");
    return *result_;
}

AdaptiveOutcome run_adaptive(const Gmm& gmm, const Eigen::VectorXd& x,
                             int total_measurements, int random_count,
                             Rng& rng, RandomKind kind,
                             const SensingMatrix* frozen_random) {
    AdaptiveSession session(gmm, total_measurements, random_count, rng, kind,
                            frozen_random);
    const MeasurementVector y_random = encode(session.random_matrix(), x);
    const int online = session.submit_random_measurements(y_random.values);
    const MeasurementVector y_optimal = encode(session.optimal_matrix(), x);
    DecodeResult result = session.submit_optimal_measurements(y_optimal.values);
    const int final_index = result.selected_index;
    return {std::move(result), online, final_index};
}

} // namespace scs
