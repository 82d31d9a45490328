#include "scs/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "scs/adaptive.hpp"
#include "scs/decoder.hpp"
#include "scs/errors.hpp"
#include "scs/parallel.hpp"
#include "scs/sensing.hpp"

namespace scs {

namespace {

class PgmParser {
public:
    explicit PgmParser(std::vector<char> bytes, std::string path)
        : bytes_(std::move(bytes)), path_(std::move(path)) {}

    GrayImage parse() {
        expect_magic();
        const long width = next_integer("width");
        const long height = next_integer("height");
        const long maxval = next_integer("maxval");
        if (maxval != 255)
            fail("unsupported maxval " + std::to_string(maxval) +
                 " (only 255)");
        if (width < 1 || height < 1) fail("non-positive dimensions");
        // Exactly one whitespace byte separates the header from payload.
        if (pos_ >= bytes_.size() || !std::isspace(byte(pos_)))
            fail("missing whitespace before pixel payload");
        ++pos_;

        const std::size_t need =
            static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
        if (bytes_.size() - pos_ < need)
            fail("truncated payload: need " + std::to_string(need) +
                 " bytes, have " + std::to_string(bytes_.size() - pos_));

        GrayImage img;
        img.width = static_cast<int>(width);
        img.height = static_cast<int>(height);
        img.samples.resize(need);
        std::copy_n(bytes_.begin() + static_cast<long>(pos_), need,
                    img.samples.begin());
        return img;
    }

private:
    unsigned char byte(std::size_t i) const {
        return static_cast<unsigned char>(bytes_[i]);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError("PGM '" + path_ + "' at byte " +
                          std::to_string(pos_) + ": " + what);
    }

    void expect_magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5')
            fail("bad magic (expected P5)");
        pos_ = 2;
    }

    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(byte(pos_))) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                return;
            }
        }
    }

    long next_integer(const char* field) {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(byte(pos_)))
            fail(std::string("expected ") + field);
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(byte(pos_))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000) fail(std::string(field) + " overflows");
            ++pos_;
        }
        return value;
    }

    std::vector<char> bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

Eigen::MatrixXd covariance_of_patches(const std::vector<Eigen::VectorXd>& patches,
                                      int dimension) {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dimension, dimension);
    for (const auto& p : patches)
        cov.selfadjointView<Eigen::Lower>().rankUpdate(p);
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= static_cast<double>(patches.size());
    return cov;
}

void remove_mean(Eigen::VectorXd& patch) {
    patch.array() -= patch.mean();
}

GaussianModel model_from_patches(std::vector<Eigen::VectorXd>& patches,
                                 int dimension) {
    Eigen::MatrixXd cov = covariance_of_patches(patches, dimension);
    const double trace = cov.trace();
    if (trace > 0.0) cov *= static_cast<double>(dimension) / trace;
    return GaussianModel::from_covariance(Eigen::VectorXd::Zero(dimension),
                                          cov);
}

} // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return PgmParser(std::move(bytes), path).parse();
}

void save_pgm(const GrayImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1 ||
        img.samples.size() !=
            static_cast<std::size_t>(img.width) * img.height)
        throw ValidationError("save_pgm: inconsistent image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.samples.data()),
              static_cast<std::streamsize>(img.samples.size()));
    if (!out) throw IoError("write failure on '" + path + "'");
}

PatchGrid extract_patches(const GrayImage& img) {
    constexpr int kSize = 8;
    if (img.width < kSize || img.height < kSize)
        throw ValidationError("extract_patches: image smaller than one patch");

    PatchGrid grid;
    grid.patch_size = kSize;
    grid.rows_of_patches = img.height / kSize;
    grid.cols_of_patches = img.width / kSize;
    const int count = grid.rows_of_patches * grid.cols_of_patches;
    grid.patches.reserve(count);
    grid.means.reserve(count);

    for (int pr = 0; pr < grid.rows_of_patches; ++pr) {
        for (int pc = 0; pc < grid.cols_of_patches; ++pc) {
            Eigen::VectorXd v(kSize * kSize);
            for (int c = 0; c < kSize; ++c)
                for (int r = 0; r < kSize; ++r)
                    v(c * kSize + r) = static_cast<double>(
                        img.at(pr * kSize + r, pc * kSize + c));
            // Integer sum over 64 samples divided by a power of two: the
            // mean is exact and the round trip is bit-exact.
            const double mean = v.mean();
            v.array() -= mean;
            grid.patches.push_back(std::move(v));
            grid.means.push_back(mean);
        }
    }
    return grid;
}

GrayImage reassemble(const PatchGrid& grid) {
    const int kSize = grid.patch_size;
    GrayImage img;
    img.width = grid.cropped_width();
    img.height = grid.cropped_height();
    img.samples.resize(static_cast<std::size_t>(img.width) * img.height);

    for (int pr = 0; pr < grid.rows_of_patches; ++pr) {
        for (int pc = 0; pc < grid.cols_of_patches; ++pc) {
            const std::size_t index =
                static_cast<std::size_t>(pr) * grid.cols_of_patches + pc;
            const Eigen::VectorXd& v = grid.patches[index];
            const double mean = grid.means[index];
            for (int c = 0; c < kSize; ++c) {
                for (int r = 0; r < kSize; ++r) {
                    double value = v(c * kSize + r) + mean;
                    value = std::clamp(value, 0.0, 255.0);
                    img.at(pr * kSize + r, pc * kSize + c) =
                        static_cast<std::uint8_t>(std::round(value));
                }
            }
        }
    }
    return img;
}

GrayImage crop_to_patches(const GrayImage& img, int patch_size) {
    GrayImage out;
    out.width = (img.width / patch_size) * patch_size;
    out.height = (img.height / patch_size) * patch_size;
    out.samples.resize(static_cast<std::size_t>(out.width) * out.height);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) out.at(r, c) = img.at(r, c);
    return out;
}

Gmm build_directional_gmm(int model_count, int patch_size, Rng& rng) {
    if (model_count < 2)
        throw ValidationError("build_directional_gmm: need at least 2 models");
    if (patch_size < 2)
        throw ValidationError("build_directional_gmm: patch size too small");

    constexpr int kTrainingPatches = 4096;
    const int dimension = patch_size * patch_size;
    const double center = (patch_size - 1) / 2.0;
    const double max_offset = patch_size * 0.75;
    const double edge_width = 1.0;

    std::vector<GaussianModel> models;
    models.reserve(model_count);

    const int directional = model_count - 1;
    for (int k = 0; k < directional; ++k) {
        const double angle = k * M_PI / directional;
        // Edge direction `angle`; profile varies along the normal.
        const double nx = -std::sin(angle);
        const double ny = std::cos(angle);
        std::vector<Eigen::VectorXd> patches;
        patches.reserve(kTrainingPatches);
        for (int p = 0; p < kTrainingPatches; ++p) {
            const double offset = (2.0 * rng.uniform() - 1.0) * max_offset;
            const double polarity = rng.coin() ? 1.0 : -1.0;
            Eigen::VectorXd v(dimension);
            for (int c = 0; c < patch_size; ++c) {
                for (int r = 0; r < patch_size; ++r) {
                    const double s = (c - center) * nx + (r - center) * ny -
                                     offset;
                    v(c * patch_size + r) =
                        polarity * std::tanh(s / edge_width);
                }
            }
            remove_mean(v);
            patches.push_back(std::move(v));
        }
        models.push_back(model_from_patches(patches, dimension));
    }

    // Textural component: white-noise patches.
    std::vector<Eigen::VectorXd> noise;
    noise.reserve(kTrainingPatches);
    for (int p = 0; p < kTrainingPatches; ++p) {
        Eigen::VectorXd v(dimension);
        for (int i = 0; i < dimension; ++i) v(i) = rng.normal();
        remove_mean(v);
        noise.push_back(std::move(v));
    }
    models.push_back(model_from_patches(noise, dimension));

    return Gmm(std::move(models));
}

double psnr(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw ValidationError("psnr: image sizes differ");
    if (a.samples.empty()) throw ValidationError("psnr: empty images");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double d =
            static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]);
        acc += d * d;
    }
    const double mse = acc / static_cast<double>(a.samples.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

GrayImage make_stripe_image(int width, int height, double angle,
                            double period) {
    if (width < 1 || height < 1 || period <= 0.0)
        throw ValidationError("make_stripe_image: bad parameters");
    GrayImage img;
    img.width = width;
    img.height = height;
    img.samples.resize(static_cast<std::size_t>(width) * height);
    const double nx = -std::sin(angle);
    const double ny = std::cos(angle);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double s = c * nx + r * ny;
            const double wave = std::sin(2.0 * M_PI * s / period);
            // Soft-clipped stripes: smooth edges, not pure sinusoids.
            const double shaped = std::tanh(2.0 * wave);
            img.at(r, c) =
                static_cast<std::uint8_t>(std::round(127.5 + 110.0 * shaped));
        }
    }
    return img;
}

ImageExperimentResult run_image_experiment(const GrayImage& img,
                                           const Gmm& gmm, int m,
                                           const std::vector<int>& k_list,
                                           std::uint64_t seed,
                                           unsigned threads) {
    if (gmm.dimension() != 64)
        throw ValidationError("run_image_experiment: GMM must model 8x8 patches");
    if (m < 1 || m > gmm.dimension())
        throw ValidationError("run_image_experiment: need 1 <= M <= N");
    for (int k : k_list)
        if (k < 1 || k > m)
            throw ValidationError("run_image_experiment: K values must be in 1..M");

    const GrayImage cropped = crop_to_patches(img);
    const PatchGrid grid = extract_patches(img);
    const std::size_t patch_count = grid.patches.size();

    ImageExperimentResult out;
    out.k_list = k_list;
    out.report.m = m;
    out.report.seed = seed;

    auto decode_adaptive = [&](int k) {
        PatchGrid recon = grid;
        parallel_for(patch_count, threads, [&](std::size_t p) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k), p, 0));
            const AdaptiveOutcome outcome =
                run_adaptive(gmm, grid.patches[p], m, k, rng);
            recon.patches[p] = outcome.result.reconstruction;
        });
        return reassemble(recon);
    };

    // The standard baseline is seeded as the K = M adaptive arm, which
    // performs the same M random measurements and the same final decode;
    // the two coincide bit for bit, so only the direct decode is run.
    {
        PatchGrid recon = grid;
        parallel_for(patch_count, threads, [&](std::size_t p) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(m), p, 0));
            const SensingMatrix phi =
                random_gaussian_matrix(m, gmm.dimension(), rng);
            const MeasurementVector y = encode(phi, grid.patches[p]);
            recon.patches[p] = piecewise_decode(gmm, phi, y).reconstruction;
        });
        out.standard_reconstruction = reassemble(recon);
    }
    const double psnr_standard = psnr(cropped, out.standard_reconstruction);

    out.adaptive_reconstructions.reserve(k_list.size());
    for (int k : k_list) {
        GrayImage recon = k == m ? out.standard_reconstruction
                                 : decode_adaptive(k);
        const double psnr_adaptive = psnr(cropped, recon);
        out.adaptive_reconstructions.push_back(std::move(recon));
        out.report.rows.push_back({k, psnr_adaptive, psnr_standard});
    }
    return out;
}

} // namespace scs
