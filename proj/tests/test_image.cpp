#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "sigret/image.hpp"
#include "sigret/rng.hpp"

using namespace sigret;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = SIGRET_FIXTURE_DIR;

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("sigret_image_" + name);
}

} // namespace

TEST_CASE("load_image normalizes PGM samples by maxval") {
    const GrayImage img = load_image(fixtures / "gradient_2x2.pgm");
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    CHECK(img.pixels[0] == 0.0);
    CHECK(img.pixels[1] == Catch::Approx(51.0 / 255.0).margin(0));
    CHECK(img.pixels[2] == Catch::Approx(0.4).epsilon(1e-12));
    CHECK(img.pixels[3] == 1.0);
}

TEST_CASE("load_image error cases") {
    CHECK_THROWS_AS(load_image("/no/such/file.pgm"), FileNotFound);

    const fs::path bad_magic = temp_file("bad_magic.pgm");
    std::ofstream(bad_magic) << "P7\n2 2\n255\n0 0 0 0\n";
    CHECK_THROWS_AS(load_image(bad_magic), UnsupportedFormat);

    const fs::path truncated = temp_file("truncated.pgm");
    std::ofstream(truncated) << "P2\n2 2\n255\n0 51 102\n"; // one sample short
    CHECK_THROWS_AS(load_image(truncated), CorruptImage);

    const fs::path out_of_range = temp_file("range.pgm");
    std::ofstream(out_of_range) << "P2\n2 2\n255\n0 51 102 300\n";
    CHECK_THROWS_AS(load_image(out_of_range), CorruptImage);
}

TEST_CASE("binary PGM round-trips within quantization error") {
    GrayImage img = make_image(7, 5);
    SplitMix64 rng(11);
    for (auto& p : img.pixels) p = rng.uniform();

    const fs::path path = temp_file("roundtrip.pgm");
    save_pgm(img, path, 255);
    const GrayImage back = load_image(path);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(std::abs(back.pixels[i] - img.pixels[i]) <= 1.0 / (2.0 * 255.0));
    }
}

TEST_CASE("preprocess leaves a canonical image untouched") {
    GrayImage img = make_image(256, 256);
    SplitMix64 rng(3);
    for (auto& p : img.pixels) p = rng.uniform();
    CHECK(preprocess(img) == img);
}

TEST_CASE("preprocess centers small images on white") {
    GrayImage img = make_image(128, 128, 0.25);
    const GrayImage out = preprocess(img);
    REQUIRE(out.width == 256);
    REQUIRE(out.height == 256);
    CHECK(out.at(0, 0) == 1.0);
    CHECK(out.at(63, 63) == 1.0);
    CHECK(out.at(64, 64) == 0.25);
    CHECK(out.at(191, 191) == 0.25);
    CHECK(out.at(192, 192) == 1.0);
}

TEST_CASE("preprocess downscales by area averaging") {
    // 512x256 checkerboard of 2x2 blocks: each output pixel averages one
    // 2x2 source block exactly.
    GrayImage img = make_image(512, 256);
    for (int r = 0; r < 256; ++r) {
        for (int c = 0; c < 512; ++c) {
            img.at(r, c) = ((r + c) % 2 == 0) ? 1.0 : 0.0;
        }
    }
    const GrayImage out = preprocess(img);
    REQUIRE(out.width == 256);
    REQUIRE(out.height == 256);
    // rows 0..63 and 192..255 are padding
    CHECK(out.at(0, 0) == 1.0);
    CHECK(out.at(255, 255) == 1.0);
    // independent oracle: area average of any 2x2 checkerboard block is 0.5
    for (int r = 64; r < 192; r += 17) {
        for (int c = 0; c < 256; c += 13) {
            CHECK(out.at(r, c) == Catch::Approx(0.5).margin(1e-12));
        }
    }
}

TEST_CASE("preprocess is idempotent") {
    SplitMix64 rng(17);
    for (int w : {31, 256, 300}) {
        GrayImage img = make_image(w, 97);
        for (auto& p : img.pixels) p = rng.uniform();
        const GrayImage once = preprocess(img);
        CHECK(preprocess(once) == once);
        CHECK(once.width == 256);
        CHECK(once.height == 256);
    }
}
