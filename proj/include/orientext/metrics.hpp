#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orientext/normal_field.hpp"
#include "orientext/vec3.hpp"

namespace orientext {

struct MetricReport {
    double mae_degrees = 0.0;
    double max_error_degrees = 0.0;
    size_t pixel_count = 0;
};

// arccos(clamp(a.b, -1, 1)) in degrees; range [0, 180].
double angular_error_deg(const UnitVec3& a, const UnitVec3& b);

// Mean and max per-pixel angular error between two fields, optionally
// restricted to a mask.
MetricReport mae_n(const NormalField& before, const NormalField& after,
                   const RoiMask* mask = nullptr);

// One participant's 1-5 scores for one method/image.
struct RatingRecord {
    std::string method;
    std::string image_id;
    std::string participant;
    int harmonization = 0;
    int text_rendering = 0;
    int perspective_blending = 0;
};

inline constexpr std::array<const char*, 3> kRatingParameters = {
    "harmonization", "text_rendering", "perspective_blending"};

struct ParameterStats {
    double mean = 0.0;
    double variance = 0.0;  // population variance
    std::array<int, 5> histogram{};  // counts for ratings 1..5
    int fives = 0;
};

// method -> stats per parameter, in kRatingParameters order.
using RatingSummary = std::map<std::string, std::array<ParameterStats, 3>>;

// CSV with header method,image_id,participant,harmonization,text_rendering,
// perspective_blending. Throws MalformedRecord naming the offending row.
std::vector<RatingRecord> parse_ratings_csv(std::istream& in);

RatingSummary rating_stats(const std::vector<RatingRecord>& records);

}  // namespace orientext
