#ifndef SCS_SENSING_HPP
#define SCS_SENSING_HPP

#include <Eigen/Dense>
#include <vector>

#include "scs/gmm_core.hpp"
#include "scs/rng.hpp"

namespace scs {

/// Where a sensing matrix came from. Concatenations keep their operands'
/// tags in row order.
struct Provenance {
    enum class Tag {
        RandomGaussian,
        RandomBernoulli,
        PrincipalDirection,
        Concatenation,
    };

    Tag tag = Tag::RandomGaussian;
    int model_index = -1;  // PrincipalDirection: which model, -1 if unknown
    int start_offset = 0;  // PrincipalDirection: first direction used
    std::vector<Provenance> parts;  // Concatenation operands

    static Provenance random_gaussian() { return {Tag::RandomGaussian}; }
    static Provenance random_bernoulli() { return {Tag::RandomBernoulli}; }
    static Provenance principal(int model_index, int start_offset) {
        Provenance p{Tag::PrincipalDirection};
        p.model_index = model_index;
        p.start_offset = start_offset;
        return p;
    }
};

/// M x N linear encoder y = Phi x, with provenance.
struct SensingMatrix {
    Eigen::MatrixXd entries;
    Provenance kind;

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }
};

/// Measurements together with the matrix that produced them. The pointer
/// is non-owning; a measurement is always consumed alongside its matrix.
struct MeasurementVector {
    Eigen::VectorXd values;
    const SensingMatrix* source = nullptr;
};

enum class RandomKind { Gaussian, Bernoulli };

/// Entries i.i.d. N(0, 1/M). The MAP decoder is invariant to row scaling,
/// so the normalization is the conventional one for random encoders.
SensingMatrix random_gaussian_matrix(int rows, int cols, Rng& rng);

/// Entries i.i.d. uniform on {+1/sqrt(M), -1/sqrt(M)}.
SensingMatrix random_bernoulli_matrix(int rows, int cols, Rng& rng);

SensingMatrix draw_random_matrix(RandomKind kind, int rows, int cols,
                                 Rng& rng);

/// Rows are principal directions start_offset+1 .. start_offset+count of
/// g, i.e. row i is column (start_offset + i) of g's basis transposed.
/// model_index is recorded in the provenance only.
SensingMatrix principal_direction_matrix(const GaussianModel& g, int count,
                                         int start_offset = 0,
                                         int model_index = -1);

/// Row-stack top over bottom. Zero-row operands are permitted.
SensingMatrix concat(const SensingMatrix& top, const SensingMatrix& bottom);

/// y = Phi x.
MeasurementVector encode(const SensingMatrix& phi, const Eigen::VectorXd& x);

} // namespace scs

#endif
