#include "orientext/maskgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orientext/errors.hpp"

namespace orientext {

void LayoutConfig::validate() const {
    if (char_aspect <= 0.1 || char_aspect >= 2.0)
        throw InputError("char_aspect must lie in (0.1, 2)");
    for (double f : {char_gap_frac, line_gap_frac, margin_frac})
        if (f < 0.0 || f > 0.5) throw InputError("layout fractions must lie in [0, 0.5]");
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    lines.push_back(cur);
    return lines;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CharBox> layout_text(const std::string& text, const RoiRect& roi,
                                 const LayoutConfig& cfg, const GlyphSet& glyphs) {
    cfg.validate();
    if (roi.w <= 0 || roi.h <= 0) throw InputError("ROI area must be positive");
    const std::string body = trimmed(text);
    if (body.empty()) throw InputError("text is empty");

    for (char c : body) {
        if (c == '\n' || c == ' ') continue;
        if (!glyphs.supports(c))
            throw UnsupportedCharacter(std::string("unsupported character '") + c + "'");
    }

    const auto lines = split_lines(body);
    size_t max_cells = 0;
    for (const auto& l : lines) max_cells = std::max(max_cells, l.size());
    if (max_cells == 0) throw InputError("text has no characters");

    const double avail_w = roi.w * (1.0 - 2.0 * cfg.margin_frac);
    const double avail_h = roi.h * (1.0 - 2.0 * cfg.margin_frac);
    const auto n_lines = static_cast<double>(lines.size());
    const auto m = static_cast<double>(max_cells);

    // Widest line: m*w + (m-1)*gap with w = aspect*h, gap = gap_frac*w.
    const double width_factor = cfg.char_aspect * (m + (m - 1.0) * cfg.char_gap_frac);
    const double height_factor = n_lines + (n_lines - 1.0) * cfg.line_gap_frac;
    const double h = std::min(avail_w / width_factor, avail_h / height_factor);
    if (h < 4.0) throw RoiTooSmall("computed font height below 4 px");

    const double w = cfg.char_aspect * h;
    const double gap = cfg.char_gap_frac * w;
    const double line_gap = cfg.line_gap_frac * h;

    const double stack_h = n_lines * h + (n_lines - 1.0) * line_gap;
    const double top = roi.y + roi.h / 2.0 - stack_h / 2.0;
    const double margin_x = cfg.margin_frac * roi.w;

    std::vector<CharBox> boxes;
    for (size_t li = 0; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        if (line.empty()) continue;
        const auto cells = static_cast<double>(line.size());
        const double line_w = cells * w + (cells - 1.0) * gap;
        double start;
        switch (cfg.align) {
            case LayoutConfig::Align::Left: start = roi.x + margin_x; break;
            case LayoutConfig::Align::Right: start = roi.x + roi.w - margin_x - line_w; break;
            default: start = roi.x + roi.w / 2.0 - line_w / 2.0; break;
        }
        const double cy = top + static_cast<double>(li) * (h + line_gap) + h / 2.0;
        for (size_t ci = 0; ci < line.size(); ++ci) {
            if (line[ci] == ' ') continue;
            const double cx = start + static_cast<double>(ci) * (w + gap) + w / 2.0;
            boxes.push_back({line[ci], {cx, cy, w, h}});
        }
    }
    return boxes;
}

std::vector<CharQuad> align_char_boxes(const std::vector<CharBox>& boxes,
                                       const NormalField& field, const RoiMask& roi,
                                       const ProjectionConfig& cfg, bool per_box) {
    const ImageSize size{field.width(), field.height()};
    std::vector<CharQuad> quads;
    quads.reserve(boxes.size());

    UnitVec3 shared;
    if (!per_box) shared = dominant_normal(field, roi);

    for (size_t i = 0; i < boxes.size(); ++i) {
        const CharBox& cb = boxes[i];
        try {
            UnitVec3 n = shared;
            if (per_box) {
                // Dominant normal over ROI ∩ the box footprint.
                const int x0 = std::max(0, static_cast<int>(std::floor(cb.box.cx - cb.box.w / 2)));
                const int y0 = std::max(0, static_cast<int>(std::floor(cb.box.cy - cb.box.h / 2)));
                const int x1 = std::min(field.width(),
                                        static_cast<int>(std::ceil(cb.box.cx + cb.box.w / 2)));
                const int y1 = std::min(field.height(),
                                        static_cast<int>(std::ceil(cb.box.cy + cb.box.h / 2)));
                RoiMask local(field.width(), field.height());
                for (int y = y0; y < y1; ++y)
                    for (int x = x0; x < x1; ++x)
                        if (roi.at(x, y)) local.set(x, y, true);
                n = dominant_normal(field, local);
            }
            quads.push_back({cb.ch, align_bbox(cb.box, n, cfg, size)});
        } catch (const DegenerateNormal& e) {
            throw DegenerateNormal("box " + std::to_string(i) + ": " + e.what());
        } catch (const IncoherentNormals& e) {
            throw IncoherentNormals("box " + std::to_string(i) + ": " + e.what());
        } catch (const EmptyRoi& e) {
            throw EmptyRoi("box " + std::to_string(i) + ": " + e.what());
        }
    }
    return quads;
}

MaskImage rasterize_mask(const std::vector<CharQuad>& quads, ImageSize size,
                         const GlyphSet& glyphs) {
    MaskImage mask(size.width, size.height);
    const Quad2D unit{{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}};

    for (const CharQuad& cq : quads) {
        const GlyphStamp& stamp = glyphs.stamp(cq.ch);
        const Homography to_unit = homography_from_quads(cq.quad, unit);

        double minx = cq.quad.corners[0].x, maxx = minx;
        double miny = cq.quad.corners[0].y, maxy = miny;
        for (const Point2& c : cq.quad.corners) {
            minx = std::min(minx, c.x);
            maxx = std::max(maxx, c.x);
            miny = std::min(miny, c.y);
            maxy = std::max(maxy, c.y);
        }
        const int x0 = std::max(0, static_cast<int>(std::floor(minx)));
        const int y0 = std::max(0, static_cast<int>(std::floor(miny)));
        const int x1 = std::min(size.width - 1, static_cast<int>(std::ceil(maxx)));
        const int y1 = std::min(size.height - 1, static_cast<int>(std::ceil(maxy)));

        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                Point2 uv;
                try {
                    uv = apply_homography(to_unit, {x + 0.5, y + 0.5});
                } catch (const PointAtInfinity&) {
                    continue;
                }
                if (uv.x < 0.0 || uv.x >= 1.0 || uv.y < 0.0 || uv.y >= 1.0) continue;
                if (stamp.covered(uv.x, uv.y)) mask.at(x, y) = 255;
            }
        }
    }
    return mask;
}

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << content;
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace

ConditioningExport export_conditioning(const ImageRGB8& source, const MaskImage& mask,
                                       const NormalField& field, const RoiMask& roi,
                                       const std::vector<CharQuad>& quads,
                                       const UnitVec3& dominant, const std::string& config_digest,
                                       const std::string& out_dir) {
    if (mask.width != source.width || mask.height != source.height ||
        field.width() != source.width || field.height() != source.height ||
        roi.width != source.width || roi.height != source.height)
        throw DimensionMismatch("conditioning inputs differ in size");

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);

    const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    write_png(path("source.png"), source);
    write_png(path("cmask_aligned.png"), mask);
    write_png(path("normals.png"), encode_normal_map(field));
    write_png(path("roi.png"), roi.to_image());

    nlohmann::json jq;
    jq["chars"] = nlohmann::json::array();
    for (const CharQuad& cq : quads) {
        nlohmann::json corners = nlohmann::json::array();
        for (const Point2& c : cq.quad.corners)
            corners.push_back({round3(c.x), round3(c.y)});
        jq["chars"].push_back({{"ch", std::string(1, cq.ch)}, {"quad", corners}});
    }
    jq["dominant_normal"] = {dominant.x(), dominant.y(), dominant.z()};
    write_text_file(path("quads.json"), jq.dump(2) + "\n");

    const std::vector<std::string> names = {"source.png", "cmask_aligned.png", "normals.png",
                                            "roi.png", "quads.json"};
    nlohmann::json jm;
    jm["files"] = names;
    jm["dominant_normal"] = {dominant.x(), dominant.y(), dominant.z()};
    jm["config_digest"] = config_digest;
    jm["width"] = source.width;
    jm["height"] = source.height;
    write_text_file(path("manifest.json"), jm.dump(2) + "\n");

    ConditioningExport result;
    for (const auto& n : names) result.files.push_back(path(n.c_str()));
    result.manifest_path = path("manifest.json");
    return result;
}

}  // namespace orientext
