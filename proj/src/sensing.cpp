#include "scs/sensing.hpp"

#include <cmath>

#include "scs/errors.hpp"

namespace scs {

namespace {

void check_random_shape(int rows, int cols) {
    if (rows < 0 || cols < 0)
        throw ValidationError("sensing: negative dimensions");
    if (rows > cols)
        throw ValidationError(
            "sensing: more rows than columns (oversampling unsupported)");
}

} // namespace

SensingMatrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
    check_random_shape(rows, cols);
    Eigen::MatrixXd m(rows, cols);
    const double sigma = rows > 0 ? 1.0 / std::sqrt(static_cast<double>(rows)) : 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = sigma * rng.normal();
    return {std::move(m), Provenance::random_gaussian()};
}

SensingMatrix random_bernoulli_matrix(int rows, int cols, Rng& rng) {
    check_random_shape(rows, cols);
    Eigen::MatrixXd m(rows, cols);
    const double mag = rows > 0 ? 1.0 / std::sqrt(static_cast<double>(rows)) : 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.coin() ? mag : -mag;
    return {std::move(m), Provenance::random_bernoulli()};
}

SensingMatrix draw_random_matrix(RandomKind kind, int rows, int cols,
                                 Rng& rng) {
    return kind == RandomKind::Gaussian
               ? random_gaussian_matrix(rows, cols, rng)
               : random_bernoulli_matrix(rows, cols, rng);
}

SensingMatrix principal_direction_matrix(const GaussianModel& g, int count,
                                         int start_offset, int model_index) {
    if (count < 0 || start_offset < 0 ||
        start_offset + count > g.dimension())
        throw ValidationError(
            "principal_direction_matrix: direction range out of bounds");
    Eigen::MatrixXd m(count, g.dimension());
    for (int i = 0; i < count; ++i)
        m.row(i) = g.basis().col(start_offset + i).transpose();
    return {std::move(m), Provenance::principal(model_index, start_offset)};
}

SensingMatrix concat(const SensingMatrix& top, const SensingMatrix& bottom) {
    if (top.cols() != bottom.cols())
        throw ValidationError("concat: column counts differ");
    Eigen::MatrixXd m(top.rows() + bottom.rows(), top.cols());
    if (top.rows() > 0) m.topRows(top.rows()) = top.entries;
    if (bottom.rows() > 0) m.bottomRows(bottom.rows()) = bottom.entries;
    Provenance kind{Provenance::Tag::Concatenation};
    kind.parts = {top.kind, bottom.kind};
    return {std::move(m), std::move(kind)};
}

MeasurementVector encode(const SensingMatrix& phi, const Eigen::VectorXd& x) {
    if (x.size() != phi.cols())
        throw ValidationError("encode: signal length does not match matrix");
    return {phi.entries * x, &phi};
}

} // namespace scs
