#ifndef SCS_GMM_CORE_HPP
#define SCS_GMM_CORE_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "scs/rng.hpp"

namespace scs {

/// Eigendecomposition of a symmetric matrix.
///
/// Eigenvalues come back sorted descending and eigenvectors
/// column-orthonormal. Sign convention: the first entry of each
/// eigenvector whose magnitude exceeds 1e-12 is made positive, so results
/// are deterministic across math backends.
std::pair<Eigen::MatrixXd, Eigen::VectorXd>
eigendecompose(const Eigen::MatrixXd& covariance);

/// Zero-mean-by-default Gaussian signal model with a cached
/// eigendecomposition, log-determinant, and regularized inverse.
///
/// Immutable after construction; safe to share across threads.
///
/// The inverse and log-determinant use a relative ridge
/// eps = kRegularizationScale * lambda_1, which keeps log-posterior
/// scores finite for the nearly low-rank covariances that imaging
/// produces while remaining scale-covariant.
class GaussianModel {
public:
    static constexpr double kRegularizationScale = 1e-8;

    /// Build from a covariance matrix (symmetric within 1e-12 relative).
    static GaussianModel from_covariance(Eigen::VectorXd mean,
                                         const Eigen::MatrixXd& covariance);

    /// Build from an orthonormal basis and descending eigenvalues.
    static GaussianModel from_eigensystem(Eigen::VectorXd mean,
                                          Eigen::MatrixXd basis,
                                          Eigen::VectorXd eigenvalues);

    int dimension() const { return static_cast<int>(mean_.size()); }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }
    /// Columns are the principal directions, strongest first.
    const Eigen::MatrixXd& basis() const { return basis_; }
    /// Sorted descending, non-negative.
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    /// sum_n ln(lambda_n + eps); -inf when the covariance is all zero.
    double log_det() const { return log_det_; }
    const Eigen::MatrixXd& inv_covariance() const { return inv_covariance_; }

    /// Draw x = mean + B diag(sqrt(lambda)) z with z standard normal.
    /// Deterministic given the stream state.
    Eigen::VectorXd sample(Rng& rng) const;

    /// -1/2 (log|Sigma| + x' Sigma^-1 x), the log a-posteriori score up to
    /// a model-independent constant.
    double log_score(const Eigen::VectorXd& x) const;

    /// Minimum MSE of any m-measurement linear scheme: the tail eigenvalue
    /// sum over indices m+1..N. Summed from the tail so that
    /// value(m) - value(m+1) == eigenvalues[m] exactly.
    double linear_approx_error(int measurement_count) const;

private:
    GaussianModel() = default;
    void finalize_derived();

    Eigen::VectorXd mean_;
    Eigen::MatrixXd covariance_;
    Eigen::MatrixXd basis_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd inv_covariance_;
    double log_det_ = 0.0;
};

/// Ordered list of Gaussian models sharing one dimension.
class Gmm {
public:
    explicit Gmm(std::vector<GaussianModel> models);

    int dimension() const { return dimension_; }
    int model_count() const { return static_cast<int>(models_.size()); }
    const GaussianModel& model(int index) const { return models_.at(index); }
    const std::vector<GaussianModel>& models() const { return models_; }

private:
    std::vector<GaussianModel> models_;
    int dimension_ = 0;
};

/// Zero-mean Gaussian with eigenvalues lambda_m = m^-alpha on the
/// canonical axes. Only the relative orientation between models matters
/// downstream, so the identity basis is the reproducible choice.
GaussianModel make_power_law_gaussian(int dimension, double alpha);

/// Companion model whose principal directions are g's in reversed column
/// order, i.e. B1' B2 is the anti-diagonal flip. Eigenvalues (and thus
/// their multiset) are unchanged; the covariance has the eigenvalue order
/// reversed along g's axes.
GaussianModel make_flipped_gaussian(const GaussianModel& g);

} // namespace scs

#endif
