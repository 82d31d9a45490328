#include "scs/decoder.hpp"

#include <cmath>
#include <string>

#include "scs/errors.hpp"

namespace scs {

namespace {

constexpr double kPivotThreshold = 1e-10;

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram,
                           const Eigen::VectorXd& rhs, int model_index) {
    const double max_diag = gram.diagonal().maxCoeff();
    if (max_diag > 0.0) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        if (ldlt.info() == Eigen::Success &&
            ldlt.vectorD().minCoeff() >= kPivotThreshold * max_diag) {
            return ldlt.solve(rhs);
        }
    }

    // Rank-deficient path: truncated eigenvalue pseudo-inverse.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw NumericError("map_decode: eigen fallback failed to converge");
    const Eigen::VectorXd& values = solver.eigenvalues();
    const double top = values.maxCoeff();
    const double cutoff = kPivotThreshold * std::max(top, 0.0);
    Eigen::VectorXd inv_values = Eigen::VectorXd::Zero(values.size());
    int rank = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) > cutoff && values(i) > 0.0) {
            inv_values(i) = 1.0 / values(i);
            ++rank;
        }
    }
    if (rank == 0 && rhs.norm() > 0.0)
        throw NumericError(
            "map_decode: measurement Gram matrix numerically singular for model " +
            std::to_string(model_index));
    return solver.eigenvectors() *
           (inv_values.asDiagonal() *
            (solver.eigenvectors().transpose() * rhs));
}

} // namespace

Eigen::VectorXd map_decode(const GaussianModel& g, const SensingMatrix& phi,
                           const MeasurementVector& y, int model_index) {
    if (phi.cols() != g.dimension())
        throw ValidationError("map_decode: matrix width does not match model");
    if (y.values.size() != phi.rows())
        throw ValidationError("map_decode: measurement length does not match matrix");
    if (phi.rows() < 1)
        throw ValidationError("map_decode: at least one measurement required");

    const Eigen::MatrixXd cross = g.covariance() * phi.entries.transpose();
    Eigen::MatrixXd gram = phi.entries * cross;
    gram = 0.5 * (gram + gram.transpose());
    return cross * solve_gram(gram, y.values, model_index);
}

std::pair<int, Eigen::VectorXd>
select_model(const Gmm& gmm, const std::vector<Eigen::VectorXd>& candidates) {
    const int count = gmm.model_count();
    if (static_cast<int>(candidates.size()) != count)
        throw ValidationError("select_model: candidate count does not match models");
    Eigen::VectorXd scores(count);
    int best = 0;
    for (int j = 0; j < count; ++j) {
        scores(j) = gmm.model(j).log_score(candidates[j]);
        if (scores(j) > scores(best)) best = j;
    }
    return {best, std::move(scores)};
}

DecodeResult piecewise_decode(const Gmm& gmm, const SensingMatrix& phi,
                              const MeasurementVector& y,
                              bool keep_candidates) {
    std::vector<Eigen::VectorXd> candidates;
    candidates.reserve(gmm.model_count());
    for (int j = 0; j < gmm.model_count(); ++j)
        candidates.push_back(map_decode(gmm.model(j), phi, y, j));

    auto [best, scores] = select_model(gmm, candidates);

    DecodeResult result;
    result.reconstruction = candidates[best];
    result.selected_index = best;
    result.scores = std::move(scores);
    if (keep_candidates) result.per_model_reconstructions = std::move(candidates);
    return result;
}

} // namespace scs
