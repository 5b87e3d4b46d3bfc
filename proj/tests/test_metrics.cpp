#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "orientext/errors.hpp"
#include "orientext/metrics.hpp"

using namespace orientext;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("angular_error_deg on axis pairs and small rotations") {
    const UnitVec3 z(0, 0, 1);
    CHECK(angular_error_deg(z, z) == 0.0);
    CHECK(angular_error_deg(z, UnitVec3(0, 1, 0)) == doctest::Approx(90.0).epsilon(1e-12));
    const double a = 10.0 * kPi / 180.0;
    CHECK(angular_error_deg(z, UnitVec3(0, std::sin(a), std::cos(a))) ==
          doctest::Approx(10.0).epsilon(1e-9));
    CHECK(angular_error_deg(z, UnitVec3(0, 0, -1)) == doctest::Approx(180.0).epsilon(1e-12));
}

TEST_CASE("mae_n constant-field analytics, symmetry and masking") {
    const UnitVec3 z(0, 0, 1);
    const double a = 25.0 * kPi / 180.0;
    const UnitVec3 tilted(std::sin(a), 0, std::cos(a));
    const NormalField before = synth_plane(z, 10, 8);
    const NormalField after = synth_plane(tilted, 10, 8);

    const MetricReport rep = mae_n(before, after);
    CHECK(rep.mae_degrees == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(rep.max_error_degrees == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(rep.pixel_count == 80);

    CHECK(mae_n(before, before).mae_degrees == 0.0);
    CHECK(mae_n(before, after).mae_degrees == mae_n(after, before).mae_degrees);

    // Dihedral vs plane: brute-force per-pixel oracle.
    const NormalField dih = synth_dihedral(z, tilted, 10, 8, 3);
    double sum = 0.0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 10; ++x)
            sum += angular_error_deg(UnitVec3(before.at(x, y)), UnitVec3(dih.at(x, y)));
    CHECK(mae_n(before, dih).mae_degrees == doctest::Approx(sum / 80.0).epsilon(1e-9));

    // Masked metric equals the unmasked metric of the cropped fields.
    const RoiMask roi = RoiMask::from_rect(10, 8, 2, 1, 5, 4);
    NormalField cb(5, 4), ca(5, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 5; ++x) {
            cb.set(x, y, UnitVec3(before.at(x + 2, y + 1)));
            ca.set(x, y, UnitVec3(dih.at(x + 2, y + 1)));
        }
    CHECK(mae_n(before, dih, &roi).mae_degrees == doctest::Approx(
              mae_n(cb, ca).mae_degrees).epsilon(1e-12));

    CHECK_THROWS_AS(mae_n(before, synth_plane(z, 9, 8)), DimensionMismatch);
    const RoiMask empty(10, 8);
    CHECK_THROWS_AS(mae_n(before, after, &empty), EmptyRoi);
}

TEST_CASE("mae_n increases strictly with tilt for constant fields") {
    const UnitVec3 z(0, 0, 1);
    double prev = -1.0;
    for (double deg : {1.0, 5.0, 20.0, 60.0, 120.0, 179.0}) {
        const double t = deg * kPi / 180.0;
        const double m =
            mae_n(synth_plane(z, 4, 4), synth_plane(UnitVec3(0, std::sin(t), std::cos(t)), 4, 4))
                .mae_degrees;
        CHECK(m > prev);
        prev = m;
    }
}

TEST_CASE("rating_stats means, variances and histograms") {
    std::vector<RatingRecord> one = {{"m", "img", "p1", 3, 3, 3}};
    const auto s1 = rating_stats(one);
    for (int p = 0; p < 3; ++p) {
        CHECK(s1.at("m")[p].mean == 3.0);
        CHECK(s1.at("m")[p].variance == 0.0);
        CHECK(s1.at("m")[p].histogram[2] == 1);
    }

    std::vector<RatingRecord> two = {{"m", "a", "p1", 2, 1, 5}, {"m", "b", "p2", 4, 1, 5}};
    const auto s2 = rating_stats(two);
    CHECK(s2.at("m")[0].mean == 3.0);
    CHECK(s2.at("m")[0].variance == 1.0);  // population variance
    CHECK(s2.at("m")[2].fives == 2);

    // 15 participants x 4 methods: histograms sum to the record count per cell.
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> score(1, 5);
    std::vector<RatingRecord> table;
    for (int m = 0; m < 4; ++m)
        for (int p = 0; p < 15; ++p)
            table.push_back({"method" + std::to_string(m), "img", "p" + std::to_string(p),
                             score(rng), score(rng), score(rng)});
    const auto s3 = rating_stats(table);
    CHECK(s3.size() == 4);
    for (const auto& [method, stats] : s3)
        for (int p = 0; p < 3; ++p) {
            int total = 0;
            for (int c : stats[p].histogram) total += c;
            CHECK(total == 15);
        }
}

TEST_CASE("ratings CSV parsing validates header, fields and range") {
    std::istringstream good(
        "method,image_id,participant,harmonization,text_rendering,perspective_blending\n"
        "ours,img1,p1,4,5,3\n"
        "base,img1,p1,2,3,1\n");
    const auto records = parse_ratings_csv(good);
    REQUIRE(records.size() == 2);
    CHECK(records[0].method == "ours");
    CHECK(records[0].text_rendering == 5);

    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(parse_ratings_csv(bad_header), MalformedRecord);

    std::istringstream bad_score(
        "method,image_id,participant,harmonization,text_rendering,perspective_blending\n"
        "ours,img1,p1,4,9,3\n");
    try {
        parse_ratings_csv(bad_score);
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }

    std::istringstream missing_field(
        "method,image_id,participant,harmonization,text_rendering,perspective_blending\n"
        "ours,img1,p1,4,5\n");
    CHECK_THROWS_AS(parse_ratings_csv(missing_field), MalformedRecord);
}
