#ifndef SCS_DECODER_HPP
#define SCS_DECODER_HPP

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "scs/gmm_core.hpp"
#include "scs/sensing.hpp"

namespace scs {

/// Output of the piecewise linear decoder.
///
/// selected_index is the argmax of scores with ties broken toward the
/// lowest index; when candidates are retained, reconstruction equals
/// per_model_reconstructions[selected_index]. Indices are 0-based.
struct DecodeResult {
    Eigen::VectorXd reconstruction;
    int selected_index = 0;
    Eigen::VectorXd scores;
    std::optional<std::vector<Eigen::VectorXd>> per_model_reconstructions;
};

/// MAP linear decode under one Gaussian:
///   x = Sigma Phi' (Phi Sigma Phi')^-1 y.
///
/// The inner system is solved by a symmetric factorization; if the
/// smallest pivot drops below 1e-10 times the largest diagonal the solve
/// falls back to an eigenvalue-truncated pseudo-inverse at the same
/// relative threshold. A system that is singular beyond the fallback
/// (zero numerical rank against nonzero measurements) raises NumericError
/// naming model_index.
Eigen::VectorXd map_decode(const GaussianModel& g, const SensingMatrix& phi,
                           const MeasurementVector& y, int model_index = -1);

/// Log a-posteriori model selection over per-model candidates: score_j is
/// models[j].log_score(candidates[j]); returns the argmax (lowest index on
/// ties) and the full score vector.
std::pair<int, Eigen::VectorXd>
select_model(const Gmm& gmm, const std::vector<Eigen::VectorXd>& candidates);

/// Piecewise linear decoder: MAP decode under every model, select, return
/// the winner's reconstruction. Consumes only (phi, y), never the signal.
DecodeResult piecewise_decode(const Gmm& gmm, const SensingMatrix& phi,
                              const MeasurementVector& y,
                              bool keep_candidates = false);

} // namespace scs

#endif
