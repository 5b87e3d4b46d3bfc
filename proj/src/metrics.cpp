#include "orientext/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orientext/errors.hpp"

namespace orientext {

double angular_error_deg(const UnitVec3& a, const UnitVec3& b) {
    const double d = std::clamp(a.vec().dot(b.vec()), -1.0, 1.0);
    return std::acos(d) * 180.0 / std::numbers::pi;
}

MetricReport mae_n(const NormalField& before, const NormalField& after, const RoiMask* mask) {
    if (before.width() != after.width() || before.height() != after.height())
        throw DimensionMismatch("normal fields differ in size");
    if (mask && (mask->width != before.width() || mask->height != before.height()))
        throw DimensionMismatch("mask dimensions do not match the fields");

    double sum = 0.0;
    double max_err = 0.0;
    size_t count = 0;
    for (int y = 0; y < before.height(); ++y) {
        for (int x = 0; x < before.width(); ++x) {
            if (mask && !mask->at(x, y)) continue;
            const Vec3& a = before.at(x, y);
            const Vec3& b = after.at(x, y);
            // atan2(|a x b|, a.b) equals arccos of the normalized dot for
            // unit inputs and stays accurate near 0 degrees, where the
            // arccos form loses ~1/sin(theta) digits.
            const double err =
                std::atan2(a.cross(b).norm(), a.dot(b)) * 180.0 / std::numbers::pi;
            sum += err;
            max_err = std::max(max_err, err);
            ++count;
        }
    }
    if (count == 0) throw EmptyRoi("no pixels selected for MAE-N");
    return {sum / static_cast<double>(count), max_err, count};
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

int parse_score(const std::string& s, int row) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw MalformedRecord("row " + std::to_string(row) + ": score is not an integer: " + s);
    }
    if (pos != s.size() || v < 1 || v > 5)
        throw MalformedRecord("row " + std::to_string(row) + ": score out of range 1-5: " + s);
    return v;
}

}  // namespace

std::vector<RatingRecord> parse_ratings_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedRecord("row 1: missing header");
    const auto header = split_csv_row(line);
    const std::vector<std::string> expected = {"method",        "image_id",
                                               "participant",   "harmonization",
                                               "text_rendering", "perspective_blending"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected)
        throw MalformedRecord("row 1: header must be method,image_id,participant,"
                              "harmonization,text_rendering,perspective_blending");

    std::vector<RatingRecord> records;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_row(line);
        if (f.size() != 6)
            throw MalformedRecord("row " + std::to_string(row) + ": expected 6 fields, got " +
                                  std::to_string(f.size()));
        RatingRecord r;
        r.method = f[0];
        r.image_id = f[1];
        r.participant = f[2];
        r.harmonization = parse_score(f[3], row);
        r.text_rendering = parse_score(f[4], row);
        r.perspective_blending = parse_score(f[5], row);
        records.push_back(std::move(r));
    }
    return records;
}

RatingSummary rating_stats(const std::vector<RatingRecord>& records) {
    if (records.empty()) throw InputError("no rating records");

    std::map<std::string, std::array<std::vector<int>, 3>> scores;
    for (const auto& r : records) {
        auto& s = scores[r.method];
        s[0].push_back(r.harmonization);
        s[1].push_back(r.text_rendering);
        s[2].push_back(r.perspective_blending);
    }

    RatingSummary out;
    for (const auto& [method, per_param] : scores) {
        std::array<ParameterStats, 3> stats;
        for (int p = 0; p < 3; ++p) {
            const auto& v = per_param[p];
            ParameterStats& st = stats[p];
            double sum = 0.0;
            for (int s : v) {
                sum += s;
                st.histogram[s - 1] += 1;
            }
            st.mean = sum / static_cast<double>(v.size());
            double sq = 0.0;
            for (int s : v) sq += (s - st.mean) * (s - st.mean);
            st.variance = sq / static_cast<double>(v.size());
            st.fives = st.histogram[4];
        }
        out[method] = stats;
    }
    return out;
}

}  // namespace orientext
