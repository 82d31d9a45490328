#ifndef SCS_IMAGING_HPP
#define SCS_IMAGING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "scs/gmm_core.hpp"
#include "scs/rng.hpp"

namespace scs {

/// 8-bit grayscale image, row-major samples.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    std::uint8_t at(int row, int col) const {
        return samples[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t& at(int row, int col) {
        return samples[static_cast<std::size_t>(row) * width + col];
    }
};

/// Binary PGM (magic P5, maxval 255). Header comments ('#' to end of
/// line) are accepted anywhere whitespace is. Parse errors report the
/// byte offset.
GrayImage load_pgm(const std::string& path);
void save_pgm(const GrayImage& img, const std::string& path);

/// Non-overlapping 8x8 patches in raster order, vectorized column-major
/// within the block, per-patch mean removed and kept as side information.
/// Right/bottom remainders are cropped.
struct PatchGrid {
    int patch_size = 8;
    int rows_of_patches = 0;
    int cols_of_patches = 0;
    std::vector<Eigen::VectorXd> patches;
    std::vector<double> means;

    int cropped_width() const { return cols_of_patches * patch_size; }
    int cropped_height() const { return rows_of_patches * patch_size; }
};

PatchGrid extract_patches(const GrayImage& img);

/// Inverse of extract_patches on the cropped region: re-add means, clamp
/// to [0, 255], round half away from zero, tile in raster order.
GrayImage reassemble(const PatchGrid& grid);

/// Crop an image to whole patches (what the experiment actually scores).
GrayImage crop_to_patches(const GrayImage& img, int patch_size = 8);

/// J-component patch model: J-1 directional Gaussians at angles
/// k*pi/(J-1), each estimated from 4096 synthetic smoothed oriented step
/// edges with random offsets, plus one textural model from white-noise
/// patches. Covariances are trace-normalized to patch_size^2.
Gmm build_directional_gmm(int model_count, int patch_size, Rng& rng);

/// 10 log10(255^2 / pixel MSE); +inf for identical images.
double psnr(const GrayImage& a, const GrayImage& b);

/// Smoothed oriented stripes; edge direction `angle` radians from
/// horizontal. Handy as a signal whose patches match one directional
/// model.
GrayImage make_stripe_image(int width, int height, double angle,
                            double period);

struct PsnrReport {
    struct Row {
        int k = 0;
        double psnr_adaptive = 0.0;
        double psnr_standard = 0.0;
    };
    std::vector<Row> rows;
    int m = 0;
    std::string image_id;
    std::uint64_t seed = 0;
};

struct ImageExperimentResult {
    PsnrReport report;
    std::vector<GrayImage> adaptive_reconstructions;  // parallel to k_list
    GrayImage standard_reconstruction;
    std::vector<int> k_list;
};

/// Per-patch adaptive pipeline for every K in k_list plus the standard
/// M-random-measurement baseline; PSNR is computed against the cropped
/// source on final pixel values. The standard baseline is seeded exactly
/// as the adaptive arm at K = M, which the pipeline reduces to, so the
/// two coincide there. Deterministic given (image bytes, seed).
ImageExperimentResult run_image_experiment(const GrayImage& img,
                                           const Gmm& gmm, int m,
                                           const std::vector<int>& k_list,
                                           std::uint64_t seed,
                                           unsigned threads = 0);

} // namespace scs

#endif
