#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "sigret/retrieval.hpp"
#include "sigret/rng.hpp"

using namespace sigret;

namespace {

// Independent brute-force oracle, kept free of the implementation path.
double canberra_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double num = std::fabs(x[i] - y[i]);
        const double den = std::fabs(x[i]) + std::fabs(y[i]);
        if (den != 0.0) s += num / den;
    }
    return s;
}

FeatureLayout toy_layout(int dim) {
    return FeatureLayout{DwtParams{1, "haar"}, dim / 2};
}

FeatureDB toy_db(std::vector<std::vector<double>> vectors) {
    FeatureDB db;
    db.layout = toy_layout(static_cast<int>(vectors[0].size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        db.records.push_back({"rec" + std::to_string(i), "w" + std::to_string(i), "synthetic",
                              std::move(vectors[i])});
    }
    return db;
}

} // namespace

TEST_CASE("canberra hand-checked values") {
    CHECK(canberra(std::vector<double>{1, 2}, std::vector<double>{1, 2}) == 0.0);
    CHECK(canberra(std::vector<double>{1, 2}, std::vector<double>{3, 2}) == 0.5);
    CHECK(canberra(std::vector<double>{0, 1}, std::vector<double>{0, 0}) == 1.0);
    CHECK_THROWS_AS(canberra(std::vector<double>{1}, std::vector<double>{1, 2}),
                    DimensionMismatch);
    CHECK_THROWS_AS(canberra(std::vector<double>{}, std::vector<double>{}), DimensionMismatch);
}

TEST_CASE("canberra matches the brute-force oracle on random pairs") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + rng.below(40);
        std::vector<double> x(d), y(d);
        for (std::size_t i = 0; i < d; ++i) {
            // mix signs, magnitudes and exact zeros
            x[i] = rng.below(8) == 0 ? 0.0 : rng.uniform(-10.0, 10.0);
            y[i] = rng.below(8) == 0 ? 0.0 : rng.uniform(-10.0, 10.0);
        }
        CHECK(std::abs(canberra(x, y) - canberra_oracle(x, y)) < 1e-12);
    }
}

TEST_CASE("canberra metric properties") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.below(20);
        std::vector<double> x(d), y(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = rng.uniform(-5.0, 5.0);
            y[i] = rng.uniform(-5.0, 5.0);
        }
        const double dxy = canberra(x, y);
        CHECK(dxy >= 0.0);
        CHECK(dxy <= static_cast<double>(d));
        CHECK(dxy == canberra(y, x));
        CHECK(canberra(x, x) == 0.0);
    }
}

TEST_CASE("query ranks by distance with id tie-break") {
    FeatureDB db = toy_db({{1, 1}, {2, 2}, {9, 9}});
    db.records[0].writer = db.records[1].writer = db.records[2].writer = "w";
    const FeatureVector probe{db.layout, {1, 1}};

    const RankedList ranked = query(db, probe, 3);
    REQUIRE(ranked.entries.size() == 3);
    CHECK(ranked.entries[0].id == "rec0");
    CHECK(ranked.entries[0].distance == 0.0);
    CHECK(ranked.entries[1].id == "rec1");
    CHECK(ranked.entries[1].distance ==
          Catch::Approx(canberra_oracle({1, 1}, {2, 2})).margin(1e-15));
    CHECK(ranked.entries[2].id == "rec2");
    CHECK(ranked.entries[2].distance ==
          Catch::Approx(canberra_oracle({1, 1}, {9, 9})).margin(1e-15));
}

TEST_CASE("query truncates k to the database size") {
    const FeatureDB db = toy_db({{1, 2}, {3, 4}, {5, 6}});
    const FeatureVector probe{db.layout, {1, 2}};
    CHECK(query(db, probe, 8).entries.size() == 3);
    CHECK(query(db, probe, 2).entries.size() == 2);
}

TEST_CASE("query error cases") {
    const FeatureDB db = toy_db({{1, 2}});
    const FeatureDB empty{db.layout, {}};
    const FeatureVector probe{db.layout, {1, 2}};
    CHECK_THROWS_AS(query(empty, probe, 1), EmptyDatabase);

    FeatureVector wrong{toy_layout(4), {1, 2, 3, 4}};
    CHECK_THROWS_AS(query(db, wrong, 1), LayoutMismatch);

    FeatureVector other_transform{FeatureLayout{CurveletParams{}, 1}, {1, 2}};
    CHECK_THROWS_AS(query(db, other_transform, 1), LayoutMismatch);
}

TEST_CASE("query ordering is invariant under record shuffling") {
    SplitMix64 rng(808);
    FeatureDB db;
    db.layout = toy_layout(6);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> v(6);
        for (auto& x : v) x = rng.below(3) == 0 ? 0.0 : rng.uniform(0.0, 4.0);
        db.records.push_back({"id" + std::to_string(i), "w" + std::to_string(i % 4), "synthetic", v});
    }
    // duplicated vector forces a distance tie
    db.records[7].vector = db.records[3].vector;

    FeatureVector probe{db.layout, db.records[3].vector};
    const RankedList before = query(db, probe, 20);

    FeatureDB shuffled = db;
    for (std::size_t i = shuffled.records.size(); i > 1; --i) {
        std::swap(shuffled.records[i - 1], shuffled.records[rng.below(i)]);
    }
    const RankedList after = query(shuffled, probe, 20);
    REQUIRE(before.entries.size() == after.entries.size());
    for (std::size_t i = 0; i < before.entries.size(); ++i) {
        CHECK(before.entries[i].id == after.entries[i].id);
    }
    CHECK(before.entries[0].id == "id3"); // tie with id7 broken by ascending id
    CHECK(before.entries[1].id == "id7");
}

TEST_CASE("exhaustive query equals brute-force sort on random databases") {
    SplitMix64 rng(99999);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(49);
        const std::size_t d = 2 * (1 + rng.below(5));
        FeatureDB db;
        db.layout = toy_layout(static_cast<int>(d));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> v(d);
            for (auto& x : v) x = rng.uniform(0.0, 3.0);
            db.records.push_back({"r" + std::to_string(i), "w", "synthetic", v});
        }
        std::vector<double> pv(d);
        for (auto& x : pv) x = rng.uniform(0.0, 3.0);
        FeatureVector probe{db.layout, pv};

        std::vector<std::pair<double, std::string>> brute;
        for (const auto& r : db.records) brute.emplace_back(canberra_oracle(pv, r.vector), r.id);
        std::sort(brute.begin(), brute.end());

        const RankedList ranked = query(db, probe, n);
        REQUIRE(ranked.entries.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ranked.entries[i].id == brute[i].second);
            CHECK(std::abs(ranked.entries[i].distance - brute[i].first) < 1e-12);
        }
    }
}
