#include "scs/gmm_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scs/errors.hpp"

namespace scs {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite())
        throw ValidationError(std::string(what) + ": non-finite entries");
}

void require_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw ValidationError("covariance: matrix is not square");
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(scale, 1e-30))
        throw ValidationError("covariance: not symmetric within tolerance");
}

void apply_sign_convention(Eigen::MatrixXd& basis) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            const double v = basis(r, c);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) basis.col(c) = -basis.col(c);
                break;
            }
        }
    }
}

} // namespace

std::pair<Eigen::MatrixXd, Eigen::VectorXd>
eigendecompose(const Eigen::MatrixXd& covariance) {
    require_finite(covariance, "covariance");
    require_symmetric(covariance);

    // Symmetrize before solving so the tolerance band does not leak into
    // the decomposition.
    const Eigen::MatrixXd sym =
        0.5 * (covariance + covariance.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigendecompose: iteration failed to converge");

    // Reorder to descending eigenvalues. The sort is stable so repeated
    // eigenvalues keep the solver's ordering (identity stays identity).
    const Eigen::Index n = sym.rows();
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                         return solver.eigenvalues()(a) >
                                solver.eigenvalues()(b);
                     });
    Eigen::VectorXd values(n);
    Eigen::MatrixXd basis(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        values(i) = solver.eigenvalues()(order[i]);
        basis.col(i) = solver.eigenvectors().col(order[i]);
    }
    apply_sign_convention(basis);
    return {std::move(basis), std::move(values)};
}

GaussianModel GaussianModel::from_covariance(
    Eigen::VectorXd mean, const Eigen::MatrixXd& covariance) {
    if (mean.size() != covariance.rows())
        throw ValidationError("GaussianModel: mean/covariance size mismatch");
    auto [basis, values] = eigendecompose(covariance);

    // Empirical covariances routinely carry O(eps) negative eigenvalues.
    const double top = values.size() > 0 ? std::max(values(0), 0.0) : 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) < 0.0) {
            if (values(i) < -1e-10 * std::max(top, 1e-30))
                throw ValidationError(
                    "GaussianModel: covariance is not positive semi-definite");
            values(i) = 0.0;
        }
    }

    GaussianModel g;
    g.mean_ = std::move(mean);
    g.covariance_ = 0.5 * (covariance + covariance.transpose());
    g.basis_ = std::move(basis);
    g.eigenvalues_ = std::move(values);
    g.finalize_derived();
    return g;
}

GaussianModel GaussianModel::from_eigensystem(Eigen::VectorXd mean,
                                              Eigen::MatrixXd basis,
                                              Eigen::VectorXd eigenvalues) {
    const Eigen::Index n = mean.size();
    if (basis.rows() != n || basis.cols() != n || eigenvalues.size() != n)
        throw ValidationError("GaussianModel: inconsistent dimensions");
    require_finite(basis, "basis");
    const Eigen::MatrixXd gram =
        basis.transpose() * basis - Eigen::MatrixXd::Identity(n, n);
    if (n > 0 && gram.cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("GaussianModel: basis is not orthonormal");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(eigenvalues(i)) || eigenvalues(i) < 0.0)
            throw ValidationError("GaussianModel: eigenvalues must be >= 0");
        if (i + 1 < n && eigenvalues(i) < eigenvalues(i + 1))
            throw ValidationError("GaussianModel: eigenvalues not descending");
    }

    GaussianModel g;
    g.mean_ = std::move(mean);
    g.covariance_ =
        basis * eigenvalues.asDiagonal() * basis.transpose();
    g.basis_ = std::move(basis);
    g.eigenvalues_ = std::move(eigenvalues);
    g.finalize_derived();
    return g;
}

void GaussianModel::finalize_derived() {
    const Eigen::Index n = eigenvalues_.size();
    const double top = n > 0 ? eigenvalues_(0) : 0.0;
    if (top <= 0.0) {
        // Fully degenerate covariance: sampling still works, scores do not.
        log_det_ = -std::numeric_limits<double>::infinity();
        inv_covariance_ = Eigen::MatrixXd::Zero(n, n);
        return;
    }
    const double ridge = kRegularizationScale * top;
    Eigen::VectorXd inv_values(n);
    log_det_ = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double regularized = eigenvalues_(i) + ridge;
        log_det_ += std::log(regularized);
        inv_values(i) = 1.0 / regularized;
    }
    inv_covariance_ = basis_ * inv_values.asDiagonal() * basis_.transpose();
}

Eigen::VectorXd GaussianModel::sample(Rng& rng) const {
    const Eigen::Index n = mean_.size();
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
    return mean_ +
           basis_ * (eigenvalues_.cwiseSqrt().cwiseProduct(z));
}

double GaussianModel::log_score(const Eigen::VectorXd& x) const {
    if (x.size() != mean_.size())
        throw ValidationError("log_score: dimension mismatch");
    const double energy = x.dot(inv_covariance_ * x);
    return -0.5 * (log_det_ + energy);
}

double GaussianModel::linear_approx_error(int measurement_count) const {
    const int n = dimension();
    if (measurement_count < 0 || measurement_count > n)
        throw ValidationError("linear_approx_error: measurement count out of range");
    double tail = 0.0;
    for (int i = n - 1; i >= measurement_count; --i) tail += eigenvalues_(i);
    return tail;
}

Gmm::Gmm(std::vector<GaussianModel> models) : models_(std::move(models)) {
    if (models_.empty())
        throw ValidationError("Gmm: at least one model required");
    dimension_ = models_.front().dimension();
    for (const auto& m : models_) {
        if (m.dimension() != dimension_)
            throw ValidationError("Gmm: models disagree on dimension");
    }
}

GaussianModel make_power_law_gaussian(int dimension, double alpha) {
    if (dimension < 1)
        throw ValidationError("make_power_law_gaussian: dimension must be >= 1");
    if (!(alpha > 0.0))
        throw ValidationError("make_power_law_gaussian: alpha must be > 0");
    Eigen::VectorXd values(dimension);
    for (int m = 1; m <= dimension; ++m)
        values(m - 1) = std::pow(static_cast<double>(m), -alpha);
    return GaussianModel::from_eigensystem(
        Eigen::VectorXd::Zero(dimension),
        Eigen::MatrixXd::Identity(dimension, dimension), std::move(values));
}

GaussianModel make_flipped_gaussian(const GaussianModel& g) {
    return GaussianModel::from_eigensystem(
        g.mean(), g.basis().rowwise().reverse(), g.eigenvalues());
}

} // namespace scs
