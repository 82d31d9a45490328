#include <doctest.h>

#include <Eigen/Dense>

#include "scs/adaptive.hpp"
#include "scs/decoder.hpp"
#include "scs/errors.hpp"
#include "scs/gmm_core.hpp"
#include "scs/sensing.hpp"

using namespace scs;

namespace {

Gmm synthetic_pair(int n = 64, double alpha = 2.0) {
    std::vector<GaussianModel> models;
    models.push_back(make_power_law_gaussian(n, alpha));
    models.push_back(make_flipped_gaussian(models.front()));
    return Gmm(std::move(models));
}

} // namespace

TEST_CASE("session walks the three phases in order") {
    const Gmm gmm = synthetic_pair(16, 2.0);
    Rng rng(3);
    AdaptiveSession session(gmm, 8, 5, rng);
    CHECK(session.phase() == AdaptiveSession::Phase::AwaitingRandom);
    CHECK(session.random_matrix().rows() == 5);
    CHECK(session.random_matrix().cols() == 16);
    CHECK_THROWS_AS(session.online_index(), StateError);
    CHECK_THROWS_AS(session.optimal_matrix(), StateError);
    CHECK_THROWS_AS(session.result(), StateError);
    CHECK_THROWS_AS(
        session.submit_optimal_measurements(Eigen::VectorXd::Zero(3)),
        StateError);

    const Eigen::VectorXd x = gmm.model(0).sample(rng);
    const Eigen::VectorXd y_random = session.random_matrix().entries * x;
    const int online = session.submit_random_measurements(y_random);
    CHECK(session.phase() == AdaptiveSession::Phase::AwaitingOptimal);
    CHECK(online == session.online_index());
    CHECK(session.optimal_matrix().rows() == 3);
    CHECK(session.optimal_matrix().kind.tag ==
          Provenance::Tag::PrincipalDirection);
    CHECK(session.optimal_matrix().kind.model_index == online);
    CHECK_THROWS_AS(session.submit_random_measurements(y_random), StateError);

    const Eigen::VectorXd y_optimal = session.optimal_matrix().entries * x;
    session.submit_optimal_measurements(y_optimal);
    CHECK(session.phase() == AdaptiveSession::Phase::Complete);
    CHECK_THROWS_AS(session.submit_optimal_measurements(y_optimal),
                    StateError);
    CHECK(session.result().reconstruction.size() == 16);
}

TEST_CASE("session validates bounds and lengths") {
    const Gmm gmm = synthetic_pair(8, 1.0);
    Rng rng(4);
    CHECK_THROWS_AS(AdaptiveSession(gmm, 4, 0, rng), ValidationError);
    CHECK_THROWS_AS(AdaptiveSession(gmm, 4, 5, rng), ValidationError);
    CHECK_THROWS_AS(AdaptiveSession(gmm, 9, 2, rng), ValidationError);

    AdaptiveSession session(gmm, 4, 2, rng);
    CHECK_THROWS_AS(
        session.submit_random_measurements(Eigen::VectorXd::Zero(3)),
        ValidationError);
}

TEST_CASE("optimal matrix rows are the selected model's leading directions") {
    const Gmm gmm = synthetic_pair(12, 1.5);
    Rng rng(5);
    AdaptiveSession session(gmm, 6, 2, rng);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(12);
    x(0) = 3.0;
    const int online = session.submit_random_measurements(
        session.random_matrix().entries * x);
    const SensingMatrix& opt = session.optimal_matrix();
    CHECK(opt.rows() == 4);
    for (int i = 0; i < opt.rows(); ++i) {
        CHECK((opt.entries.row(i).transpose() -
               gmm.model(online).basis().col(i))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("K = M boundary: both phases run, optimal phase is empty") {
    const Gmm gmm = synthetic_pair(16, 2.0);
    Rng rng(6);
    AdaptiveSession session(gmm, 6, 6, rng);
    const Eigen::VectorXd x = gmm.model(0).sample(rng);
    const int online = session.submit_random_measurements(
        session.random_matrix().entries * x);
    CHECK(online >= 0);
    CHECK(session.optimal_matrix().rows() == 0);
    const DecodeResult result =
        session.submit_optimal_measurements(Eigen::VectorXd(0));
    CHECK(session.phase() == AdaptiveSession::Phase::Complete);

    // Equals standard piecewise decoding on the random block alone.
    const DecodeResult direct = piecewise_decode(
        gmm, session.random_matrix(),
        {session.random_matrix().entries * x, &session.random_matrix()});
    CHECK((result.reconstruction - direct.reconstruction)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(result.selected_index == direct.selected_index);
}

TEST_CASE("equal seeds give identical sessions") {
    const Gmm gmm = synthetic_pair(16, 2.0);
    Rng a(42), b(42);
    AdaptiveSession sa(gmm, 8, 3, a);
    AdaptiveSession sb(gmm, 8, 3, b);
    CHECK((sa.random_matrix().entries - sb.random_matrix().entries)
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("online selection is clean when the random rows capture the"
          " signal axis") {
    const Gmm gmm = synthetic_pair(10, 2.0);
    // Model 0's leading direction is e1; model 1's is e10. A random block
    // whose rows span e1 decodes the same candidate under both models, so
    // the energy term decides: unit weight under model 0, maximal penalty
    // under model 1.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(10);
    x(0) = 1.0;
    for (int k = 1; k <= 5; ++k) {
        const SensingMatrix frozen =
            principal_direction_matrix(gmm.model(0), k, 0, 0);
        Rng rng(derive_seed(9, k, 0, 0));
        AdaptiveSession session(gmm, 5, k, rng, RandomKind::Gaussian,
                                &frozen);
        const int online = session.submit_random_measurements(
            session.random_matrix().entries * x);
        CHECK(online == 0);
    }
}

TEST_CASE("run_adaptive equals the manual three-call sequence") {
    const Gmm gmm = synthetic_pair(32, 2.0);
    Rng driver(123);
    const Eigen::VectorXd x = gmm.model(0).sample(driver);

    Rng ra(55);
    const AdaptiveOutcome outcome = run_adaptive(gmm, x, 10, 4, ra);

    Rng rb(55);
    AdaptiveSession session(gmm, 10, 4, rb);
    const int online = session.submit_random_measurements(
        session.random_matrix().entries * x);
    const DecodeResult manual = session.submit_optimal_measurements(
        session.optimal_matrix().entries * x);

    CHECK(outcome.online_index == online);
    CHECK(outcome.final_index == manual.selected_index);
    CHECK((outcome.result.reconstruction - manual.reconstruction)
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("measurement budget is exactly M across both phases") {
    const Gmm gmm = synthetic_pair(20, 2.0);
    for (int k = 1; k <= 7; ++k) {
        Rng rng(derive_seed(31, k, 0, 0));
        AdaptiveSession session(gmm, 7, k, rng);
        Eigen::VectorXd x = gmm.model(0).sample(rng);
        session.submit_random_measurements(session.random_matrix().entries *
                                           x);
        CHECK(session.random_matrix().rows() +
                  session.optimal_matrix().rows() ==
              7);
    }
}

TEST_CASE("zero signal reconstructs to zero") {
    const Gmm gmm = synthetic_pair(16, 2.0);
    Rng rng(77);
    const AdaptiveOutcome outcome =
        run_adaptive(gmm, Eigen::VectorXd::Zero(16), 8, 4, rng);
    CHECK(outcome.result.reconstruction.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("signal in the span of the true model's top directions is"
          " recovered exactly when the selection is right") {
    const Gmm gmm = synthetic_pair(24, 2.0);
    const int m = 12, k = 5;
    // Signal spanned by the first m-k principal directions of model 0.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(24);
    for (int i = 0; i < m - k; ++i)
        x += (1.0 - 0.1 * i) * gmm.model(0).basis().col(i);

    Rng rng(2025);
    const AdaptiveOutcome outcome = run_adaptive(gmm, x, m, k, rng);
    REQUIRE(outcome.online_index == 0);
    CHECK((outcome.result.reconstruction - x).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("frozen random matrix is honored") {
    const Gmm gmm = synthetic_pair(16, 2.0);
    Rng draw(91);
    const SensingMatrix frozen = random_gaussian_matrix(4, 16, draw);
    Rng rng(92);
    AdaptiveSession session(gmm, 8, 4, rng, RandomKind::Gaussian, &frozen);
    CHECK((session.random_matrix().entries - frozen.entries)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const SensingMatrix wrong = random_gaussian_matrix(5, 16, draw);
    CHECK_THROWS_AS(
        AdaptiveSession(gmm, 8, 4, rng, RandomKind::Gaussian, &wrong),
        ValidationError);
}
