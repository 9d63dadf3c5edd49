#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigret/rng.hpp"
#include "sigret/store.hpp"

using namespace sigret;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = SIGRET_FIXTURE_DIR;

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("sigret_store_" + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FeatureDB random_db(SplitMix64& rng) {
    FeatureDB db;
    const int n_sub = 1 + static_cast<int>(rng.below(8));
    if (rng.below(2) == 0) {
        db.layout.transform = DwtParams{1 + static_cast<int>(rng.below(4)),
                                        rng.below(2) == 0 ? "haar" : "db4"};
    } else {
        db.layout.transform = CurveletParams{CurveletConfig{
            2 + static_cast<int>(rng.below(4)), 4 * (1 + static_cast<int>(rng.below(4))),
            rng.below(2) == 0}};
    }
    db.layout.subband_count = n_sub;
    const std::size_t count = rng.below(10);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> v(2 * n_sub);
        for (auto& x : v) x = rng.uniform(-3.0, 3.0);
        db.records.push_back({"id" + std::to_string(i), "w" + std::to_string(i % 3),
                              "synthetic", std::move(v)});
    }
    return db;
}

bool db_equal(const FeatureDB& a, const FeatureDB& b) {
    if (!(a.layout == b.layout) || a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& ra = a.records[i];
        const auto& rb = b.records[i];
        if (ra.id != rb.id || ra.writer != rb.writer || ra.source != rb.source ||
            ra.vector != rb.vector) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("save/load round-trip is the identity, vectors bit-exact") {
    SplitMix64 rng(606);
    const fs::path path = temp_file("roundtrip.sigdb");
    for (int trial = 0; trial < 100; ++trial) {
        FeatureDB db = random_db(rng);
        // saved records come back sorted by id; sort the reference the same way
        std::sort(db.records.begin(), db.records.end(),
                  [](const FeatureRecord& a, const FeatureRecord& b) { return a.id < b.id; });
        save_db(db, path);
        const FeatureDB back = load_db(path);
        REQUIRE(db_equal(db, back));
    }
}

TEST_CASE("two saves of the same database are byte-identical") {
    SplitMix64 rng(7);
    const FeatureDB db = random_db(rng);
    const fs::path a = temp_file("det_a.sigdb");
    const fs::path b = temp_file("det_b.sigdb");
    save_db(db, a);
    save_db(db, b);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("empty database saves a header with count 0 and no record lines") {
    FeatureDB db;
    db.layout = FeatureLayout{DwtParams{3, "db4"}, 10};
    const fs::path path = temp_file("empty.sigdb");
    save_db(db, path);
    const std::string text = slurp(path);
    CHECK(text.find("\"count\":0") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    const FeatureDB back = load_db(path);
    CHECK(back.records.empty());
    CHECK(back.layout == db.layout);
}

TEST_CASE("golden fixture loads to the expected in-memory database") {
    const FeatureDB db = load_db(fixtures / "golden_two_records.sigdb");
    REQUIRE(db.records.size() == 2);
    CHECK(db.layout == FeatureLayout{DwtParams{1, "haar"}, 2});
    CHECK(db.records[0].id == "alice/s00");
    CHECK(db.records[0].writer == "alice");
    CHECK(db.records[0].source == "corpus/alice/s00.pgm");
    CHECK(db.records[0].vector == std::vector<double>{0.5, 1.25, 0.0625, 2.0});
    CHECK(db.records[1].id == "bob/s00");
    CHECK(db.records[1].vector == std::vector<double>{0.1, 0.2, 0.3, 0.4});
}

TEST_CASE("load rejects inconsistent files") {
    SECTION("record dimension disagrees with header") {
        const fs::path p = temp_file("baddim.sigdb");
        std::ofstream(p) << R"({"count":1,"dim":4,"params":{"levels":1,"wavelet":"haar"},"transform":"dwt","version":1})"
                         << "\n"
                         << R"({"id":"a","source":"x","vector":[1.0,2.0],"writer":"w"})" << "\n";
        CHECK_THROWS_AS(load_db(p), DimensionMismatch);
    }
    SECTION("record count disagrees with header") {
        const fs::path p = temp_file("badcount.sigdb");
        std::ofstream(p) << R"({"count":2,"dim":2,"params":{"levels":1,"wavelet":"haar"},"transform":"dwt","version":1})"
                         << "\n"
                         << R"({"id":"a","source":"x","vector":[1.0,2.0],"writer":"w"})" << "\n";
        CHECK_THROWS_AS(load_db(p), DimensionMismatch);
    }
    SECTION("unknown format version") {
        const fs::path p = temp_file("badver.sigdb");
        std::ofstream(p) << R"({"count":0,"dim":2,"params":{"levels":1,"wavelet":"haar"},"transform":"dwt","version":99})"
                         << "\n";
        CHECK_THROWS_AS(load_db(p), VersionMismatch);
    }
    SECTION("garbage") {
        const fs::path p = temp_file("garbage.sigdb");
        std::ofstream(p) << "not json\n";
        CHECK_THROWS_AS(load_db(p), ParseError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_db("/no/such/file.sigdb"), IoError);
    }
}
