#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "scs/errors.hpp"
#include "scs/imaging.hpp"

using namespace scs;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_bytes(const std::filesystem::path& path,
                 const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

GrayImage constant_image(int width, int height, std::uint8_t value) {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.samples.assign(static_cast<std::size_t>(width) * height, value);
    return img;
}

} // namespace

TEST_CASE("load_pgm: minimal file, comments, and malformed input") {
    const auto path = temp_path("scs_minimal.pgm");
    write_bytes(path, std::string("P5 2 2 255 ") + '\x01' + '\x02' + '\x03' +
                          '\xfF');
    const GrayImage img = load_pgm(path.string());
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.at(0, 0) == 1);
    CHECK(img.at(0, 1) == 2);
    CHECK(img.at(1, 0) == 3);
    CHECK(img.at(1, 1) == 255);

    const auto commented = temp_path("scs_comment.pgm");
    write_bytes(commented,
                std::string("P5\n# a comment\n2 # inline\n1\n255\n") + 'a' +
                    'b');
    const GrayImage img2 = load_pgm(commented.string());
    CHECK(img2.width == 2);
    CHECK(img2.height == 1);
    CHECK(img2.at(0, 0) == 'a');

    const auto bad_magic = temp_path("scs_p6.pgm");
    write_bytes(bad_magic, "P6 1 1 255 x");
    CHECK_THROWS_AS(load_pgm(bad_magic.string()), FormatError);

    const auto truncated = temp_path("scs_trunc.pgm");
    write_bytes(truncated, "P5 4 4 255 xy");
    CHECK_THROWS_AS(load_pgm(truncated.string()), FormatError);

    const auto deep = temp_path("scs_16bit.pgm");
    write_bytes(deep, std::string("P5 1 1 65535 ") + "xx");
    CHECK_THROWS_AS(load_pgm(deep.string()), FormatError);

    CHECK_THROWS_AS(load_pgm("/nonexistent/file.pgm"), IoError);

    std::filesystem::remove(path);
    std::filesystem::remove(commented);
    std::filesystem::remove(bad_magic);
    std::filesystem::remove(truncated);
    std::filesystem::remove(deep);
}

TEST_CASE("pgm round-trip is exact") {
    Rng rng(64);
    GrayImage img;
    img.width = 19;
    img.height = 7;
    img.samples.resize(19 * 7);
    for (auto& s : img.samples)
        s = static_cast<std::uint8_t>(rng.next_u64() & 0xff);

    const auto path = temp_path("scs_roundtrip.pgm");
    save_pgm(img, path.string());
    const GrayImage back = load_pgm(path.string());
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.samples == img.samples);
    std::filesystem::remove(path);
}

TEST_CASE("extract_patches: constant image, cropping, mean removal") {
    const GrayImage constant = constant_image(16, 16, 100);
    const PatchGrid grid = extract_patches(constant);
    CHECK(grid.rows_of_patches == 2);
    CHECK(grid.cols_of_patches == 2);
    REQUIRE(grid.patches.size() == 4);
    for (const auto& p : grid.patches) CHECK(p.cwiseAbs().maxCoeff() == 0.0);
    for (double m : grid.means) CHECK(m == 100.0);

    const GrayImage ragged = constant_image(17, 16, 10);
    const PatchGrid cropped = extract_patches(ragged);
    CHECK(cropped.rows_of_patches == 2);
    CHECK(cropped.cols_of_patches == 2);

    CHECK_THROWS_AS(extract_patches(constant_image(7, 16, 1)),
                    ValidationError);
}

TEST_CASE("extract/reassemble round-trip is the identity on the crop") {
    Rng rng(123);
    GrayImage img;
    img.width = 33;  // forces a crop to 32
    img.height = 17; // forces a crop to 16
    img.samples.resize(static_cast<std::size_t>(img.width) * img.height);
    for (auto& s : img.samples)
        s = static_cast<std::uint8_t>(rng.next_u64() & 0xff);

    const GrayImage rebuilt = reassemble(extract_patches(img));
    const GrayImage cropped = crop_to_patches(img);
    CHECK(rebuilt.width == 32);
    CHECK(rebuilt.height == 16);
    CHECK(rebuilt.samples == cropped.samples);
}

TEST_CASE("reassemble: means restored, out-of-range values clamped") {
    PatchGrid grid;
    grid.patch_size = 8;
    grid.rows_of_patches = 1;
    grid.cols_of_patches = 1;
    grid.patches.push_back(Eigen::VectorXd::Zero(64));
    grid.means.push_back(128.0);
    const GrayImage uniform = reassemble(grid);
    for (auto s : uniform.samples) CHECK(s == 128);

    grid.patches[0](0) = 1000.0;
    grid.patches[0](63) = -1000.0;
    const GrayImage clamped = reassemble(grid);
    CHECK(clamped.at(0, 0) == 255);
    CHECK(clamped.at(7, 7) == 0);
}

TEST_CASE("psnr: formula, symmetry, identical flag") {
    const GrayImage a = constant_image(10, 10, 50);
    GrayImage b = a;
    CHECK(std::isinf(psnr(a, b)));

    // Every pixel off by one: MSE = 1.
    for (auto& s : b.samples) s = 51;
    CHECK(psnr(a, b) == doctest::Approx(48.130803608679104).epsilon(1e-9));
    CHECK(psnr(a, b) == psnr(b, a));

    const GrayImage wrong = constant_image(9, 10, 50);
    CHECK_THROWS_AS(psnr(a, wrong), ValidationError);
}

TEST_CASE("directional gmm: sizes, normalization, orientation") {
    Rng rng(2718);
    const Gmm gmm = build_directional_gmm(19, 8, rng);
    CHECK(gmm.model_count() == 19);
    CHECK(gmm.dimension() == 64);

    for (int j = 0; j < gmm.model_count(); ++j) {
        const GaussianModel& g = gmm.model(j);
        CHECK(g.covariance().trace() == doctest::Approx(64.0).epsilon(1e-9));
        // PSD with descending eigenvalues comes from the constructor; spot
        // check symmetry.
        CHECK((g.covariance() - g.covariance().transpose())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }

    // Angle-zero model: horizontal edges, so the leading direction varies
    // down the rows and is nearly constant along each row.
    const GaussianModel& horizontal = gmm.model(0);
    const Eigen::VectorXd lead = horizontal.basis().col(0);
    double along_edge = 0.0, total = 0.0;
    for (int r = 0; r < 8; ++r) {
        double row_mean = 0.0;
        for (int c = 0; c < 8; ++c) row_mean += lead(c * 8 + r);
        row_mean /= 8.0;
        for (int c = 0; c < 8; ++c) {
            const double v = lead(c * 8 + r);
            along_edge += (v - row_mean) * (v - row_mean);
            total += v * v;
        }
    }
    CHECK(along_edge / total < 0.10);

    CHECK_THROWS_AS(build_directional_gmm(1, 8, rng), ValidationError);
}

TEST_CASE("stripe image matches its announced geometry") {
    const GrayImage horizontal = make_stripe_image(32, 32, 0.0, 8.0);
    // Edge direction 0: rows are constant, columns vary.
    for (int r = 0; r < 32; ++r)
        for (int c = 1; c < 32; ++c)
            CHECK(horizontal.at(r, c) == horizontal.at(r, 0));

    const GrayImage vertical = make_stripe_image(32, 32, M_PI / 2.0, 8.0);
    for (int c = 0; c < 32; ++c)
        for (int r = 1; r < 32; ++r)
            CHECK(vertical.at(r, c) == vertical.at(0, c));
}

TEST_CASE("image experiment: determinism, convergence at K = M, adaptive"
          " advantage on stripes") {
    Rng gmm_rng(5150);
    const Gmm gmm = build_directional_gmm(19, 8, gmm_rng);
    // Oblique stripes matched to the 20-degree directional model. Oblique
    // patches carry a full decaying spectrum, which is where adapted
    // principal rows beat purely random rows; axis-aligned stripes
    // collapse onto a rank-7 subspace that random sensing already nails.
    const GrayImage stripes = make_stripe_image(64, 64, M_PI / 9.0, 20.0);

    const std::vector<int> k_list{8, 16};
    const ImageExperimentResult a =
        run_image_experiment(stripes, gmm, 16, k_list, 1001);
    const ImageExperimentResult b =
        run_image_experiment(stripes, gmm, 16, k_list, 1001);

    REQUIRE(a.report.rows.size() == 2);
    for (std::size_t i = 0; i < a.report.rows.size(); ++i) {
        CHECK(a.report.rows[i].psnr_adaptive ==
              b.report.rows[i].psnr_adaptive);
        CHECK(a.report.rows[i].psnr_standard ==
              b.report.rows[i].psnr_standard);
    }

    // K = M reduces to the standard baseline bit for bit.
    CHECK(a.report.rows[1].psnr_adaptive == a.report.rows[1].psnr_standard);
    CHECK(a.adaptive_reconstructions[1].samples ==
          a.standard_reconstruction.samples);

    // Adaptive beats standard at K = M/2 on a directional image.
    CHECK(a.report.rows[0].psnr_adaptive >
          a.report.rows[0].psnr_standard + 0.5);

    CHECK_THROWS_AS(
        run_image_experiment(stripes, gmm, 16, {0}, 1),
        ValidationError);
    CHECK_THROWS_AS(
        run_image_experiment(stripes, gmm, 16, {17}, 1),
        ValidationError);
}
