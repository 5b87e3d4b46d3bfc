#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orientext/augment.hpp"
#include "orientext/errors.hpp"
#include "orientext/geometry.hpp"
#include "orientext/image.hpp"
#include "orientext/maskgen.hpp"
#include "orientext/metrics.hpp"
#include "orientext/normal_field.hpp"

namespace ox = orientext;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitDegenerateGeometry = 3;
constexpr int kExitIoFailure = 4;

ox::Vec3 parse_vec3(const std::string& s) {
    std::istringstream is(s);
    double x, y, z;
    char c1, c2;
    if (!(is >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',' || !(is >> std::ws).eof())
        throw ox::InputError("expected a vector as nx,ny,nz: " + s);
    return {x, y, z};
}

std::pair<int, int> parse_size(const std::string& s) {
    std::istringstream is(s);
    int w, h;
    char x;
    if (!(is >> w >> x >> h) || (x != 'x' && x != 'X') || !(is >> std::ws).eof() || w <= 0 ||
        h <= 0)
        throw ox::InputError("expected a size as WxH: " + s);
    return {w, h};
}

ox::RoiRect parse_roi(const std::string& s) {
    std::istringstream is(s);
    ox::RoiRect r;
    char c1, c2, c3;
    if (!(is >> r.x >> c1 >> r.y >> c2 >> r.w >> c3 >> r.h) || c1 != ',' || c2 != ',' ||
        c3 != ',' || !(is >> std::ws).eof())
        throw ox::InputError("expected an ROI as x,y,w,h: " + s);
    return r;
}

std::string fnv1a_hex(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

ox::NormalField load_normals(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".nrm") return ox::read_raw(path);
    return ox::decode_normal_map(ox::read_png_rgb(path));
}

void draw_line(ox::ImageRGB8& img, ox::Point2 a, ox::Point2 b) {
    const int steps =
        std::max(1, static_cast<int>(std::ceil(std::max(std::abs(b.x - a.x),
                                                        std::abs(b.y - a.y)))));
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const int x = static_cast<int>(std::lround(a.x + (b.x - a.x) * t));
        const int y = static_cast<int>(std::lround(a.y + (b.y - a.y) * t));
        if (x < 0 || y < 0 || x >= img.width || y >= img.height) continue;
        uint8_t* px = img.pixel(x, y);
        px[0] = 255;
        px[1] = 32;
        px[2] = 32;
    }
}

struct SynthArgs {
    std::string normal;
    std::string dihedral;
    int split = -1;
    std::string size = "256x256";
    std::string out;
    std::string raw_out;
};

int run_synth(const SynthArgs& a) try {
    const auto [w, h] = parse_size(a.size);
    ox::NormalField field;
    json report;
    if (!a.dihedral.empty()) {
        const auto colon = a.dihedral.find(':');
        if (colon == std::string::npos)
            throw ox::InputError("--dihedral expects nl_x,nl_y,nl_z:nr_x,nr_y,nr_z");
        const ox::UnitVec3 nl(parse_vec3(a.dihedral.substr(0, colon)));
        const ox::UnitVec3 nr(parse_vec3(a.dihedral.substr(colon + 1)));
        const int split = a.split >= 0 ? a.split : w / 2;
        field = ox::synth_dihedral(nl, nr, w, h, split);
        report["normal_left"] = {nl.x(), nl.y(), nl.z()};
        report["normal_right"] = {nr.x(), nr.y(), nr.z()};
        report["split_col"] = split;
    } else {
        const ox::UnitVec3 n(parse_vec3(a.normal));
        field = ox::synth_plane(n, w, h);
        report["normal"] = {n.x(), n.y(), n.z()};
    }
    ox::write_png(a.out, ox::encode_normal_map(field));
    if (!a.raw_out.empty()) ox::write_raw(a.raw_out, field);
    report["size"] = {w, h};
    std::cout << report.dump() << "\n";
    return kExitOk;
} catch (const ox::DegenerateNormal& e) {
    // A zero-length --normal is a parse problem, not a geometry problem.
    throw ox::InputError(e.what());
}

struct AlignArgs {
    std::string image;
    std::string normals;
    std::string roi;
    std::string roi_mask;
    std::string text;
    std::string out_dir;
    bool per_char_normals = false;
    ox::LayoutConfig layout;
    std::string align_mode = "center";
    std::string stamp_dir;
    double min_facing = 0.05;
};

int run_align(const AlignArgs& a) {
    ox::LayoutConfig layout = a.layout;
    if (a.align_mode == "left") layout.align = ox::LayoutConfig::Align::Left;
    else if (a.align_mode == "right") layout.align = ox::LayoutConfig::Align::Right;
    else if (a.align_mode == "center") layout.align = ox::LayoutConfig::Align::Center;
    else throw ox::InputError("--align must be left, center or right");

    const ox::ImageRGB8 source = ox::read_png_rgb(a.image);
    const ox::NormalField field = load_normals(a.normals);
    if (field.width() != source.width || field.height() != source.height)
        throw ox::DimensionMismatch("normal map dimensions do not match the image");

    ox::RoiMask roi;
    ox::RoiRect rect;
    if (!a.roi_mask.empty()) {
        roi = ox::RoiMask::from_image(ox::read_png_gray(a.roi_mask));
        if (roi.width != source.width || roi.height != source.height)
            throw ox::DimensionMismatch("ROI mask dimensions do not match the image");
        // Bounding rectangle of the mask drives the layout grid.
        int x0 = roi.width, y0 = roi.height, x1 = -1, y1 = -1;
        for (int y = 0; y < roi.height; ++y)
            for (int x = 0; x < roi.width; ++x)
                if (roi.at(x, y)) {
                    x0 = std::min(x0, x);
                    y0 = std::min(y0, y);
                    x1 = std::max(x1, x);
                    y1 = std::max(y1, y);
                }
        if (x1 < 0) throw ox::EmptyRoi("ROI mask selects no pixels");
        rect = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
    } else if (!a.roi.empty()) {
        rect = parse_roi(a.roi);
        roi = ox::RoiMask::from_rect(source.width, source.height, rect.x, rect.y, rect.w, rect.h);
    } else {
        throw ox::InputError("either --roi or --roi-mask is required");
    }

    ox::GlyphSet glyphs = ox::GlyphSet::builtin();
    if (!a.stamp_dir.empty()) glyphs.load_overrides(a.stamp_dir);

    ox::ProjectionConfig proj;
    proj.min_facing = a.min_facing;

    const auto boxes = ox::layout_text(a.text, rect, layout, glyphs);
    const ox::UnitVec3 dominant = ox::dominant_normal(field, roi);
    const auto quads = ox::align_char_boxes(boxes, field, roi, proj, a.per_char_normals);
    const ox::MaskImage mask =
        ox::rasterize_mask(quads, {source.width, source.height}, glyphs);

    std::ostringstream cfg;
    cfg << "aspect=" << layout.char_aspect << ";gap=" << layout.char_gap_frac
        << ";line_gap=" << layout.line_gap_frac << ";margin=" << layout.margin_frac
        << ";align=" << a.align_mode << ";per_char=" << a.per_char_normals
        << ";min_facing=" << proj.min_facing << ";text=" << a.text << ";roi=" << rect.x << ","
        << rect.y << "," << rect.w << "," << rect.h;
    const auto result = ox::export_conditioning(source, mask, field, roi, quads, dominant,
                                                fnv1a_hex(cfg.str()), a.out_dir);

    ox::ImageRGB8 preview = source;
    for (const auto& cq : quads)
        for (int i = 0; i < 4; ++i)
            draw_line(preview, cq.quad.corners[i], cq.quad.corners[(i + 1) % 4]);
    ox::write_png((std::filesystem::path(a.out_dir) / "preview.png").string(), preview);

    json report;
    report["manifest"] = result.manifest_path;
    report["characters"] = quads.size();
    report["dominant_normal"] = {dominant.x(), dominant.y(), dominant.z()};
    std::cout << report.dump() << "\n";
    return kExitOk;
}

struct MaeArgs {
    std::string before;
    std::string after;
    std::string roi;
    std::string roi_mask;
    bool raw = false;
};

int run_mae(const MaeArgs& a) {
    const ox::NormalField before = a.raw ? ox::read_raw(a.before) : load_normals(a.before);
    const ox::NormalField after = a.raw ? ox::read_raw(a.after) : load_normals(a.after);

    std::optional<ox::RoiMask> mask;
    if (!a.roi_mask.empty()) {
        mask = ox::RoiMask::from_image(ox::read_png_gray(a.roi_mask));
    } else if (!a.roi.empty()) {
        const ox::RoiRect r = parse_roi(a.roi);
        mask = ox::RoiMask::from_rect(before.width(), before.height(), r.x, r.y, r.w, r.h);
    }

    const ox::MetricReport rep = ox::mae_n(before, after, mask ? &*mask : nullptr);
    json j;
    j["mae_deg"] = rep.mae_degrees;
    j["max_deg"] = rep.max_error_degrees;
    j["pixels"] = rep.pixel_count;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

struct AugmentArgs {
    std::string image;
    std::string normals;
    double rotate = 0.0;
    double scale = 1.0;
    double shear = 0.0;
    double tx = 0.0;
    double ty = 0.0;
    std::string out_dir;
};

int run_augment(const AugmentArgs& a) {
    const ox::ImageRGB8 image = ox::read_png_rgb(a.image);
    const ox::NormalField field = load_normals(a.normals);

    ox::AffineParams p;
    p.rotate_deg = a.rotate;
    p.scale = a.scale;
    p.shear_x = a.shear;
    p.tx = a.tx;
    p.ty = a.ty;

    const auto [out_img, out_field] = ox::affine_warp_pair(image, field, p);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) throw ox::IoError("cannot create output directory: " + a.out_dir);
    const std::string img_path = (fs::path(a.out_dir) / "image.png").string();
    const std::string nrm_path = (fs::path(a.out_dir) / "normals.nrm").string();
    const std::string png_path = (fs::path(a.out_dir) / "normals.png").string();
    ox::write_png(img_path, out_img);
    ox::write_raw(nrm_path, out_field);
    ox::write_png(png_path, ox::encode_normal_map(out_field));

    json j;
    j["image"] = img_path;
    j["normals_raw"] = nrm_path;
    j["normals_png"] = png_path;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int run_rate_stats(const std::string& csv_path) {
    std::ifstream is(csv_path, std::ios::binary);
    if (!is) throw ox::IoError("cannot open for reading: " + csv_path);
    const auto records = ox::parse_ratings_csv(is);
    const auto summary = ox::rating_stats(records);

    json j;
    for (const auto& [method, stats] : summary) {
        json jm;
        for (int p = 0; p < 3; ++p) {
            const ox::ParameterStats& st = stats[p];
            json hist;
            for (int s = 1; s <= 5; ++s) hist[std::to_string(s)] = st.histogram[s - 1];
            jm[ox::kRatingParameters[p]] = {{"mean", st.mean},
                                            {"variance", st.variance},
                                            {"histogram", hist},
                                            {"fives", st.fives}};
        }
        j[method] = jm;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface-normal aligned text conditioning toolkit"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* cmd_synth = app.add_subcommand("synth", "Synthesize an analytic planar normal map");
    cmd_synth->add_option("--normal", synth.normal, "Plane normal as nx,ny,nz");
    cmd_synth->add_option("--dihedral", synth.dihedral,
                          "Two-plane normals as nl_x,nl_y,nl_z:nr_x,nr_y,nr_z");
    cmd_synth->add_option("--split", synth.split, "Dihedral split column (default width/2)");
    cmd_synth->add_option("--size", synth.size, "Output size as WxH")->capture_default_str();
    cmd_synth->add_option("-o,--out", synth.out, "Output PNG path")->required();
    cmd_synth->add_option("--raw", synth.raw_out, "Also write a lossless .nrm file here");

    AlignArgs al;
    auto* cmd_align =
        app.add_subcommand("align", "Lay out text and align it with the surface normals");
    cmd_align->add_option("--image", al.image, "Source image PNG")->required();
    cmd_align->add_option("--normals", al.normals, "Normal map (.png or .nrm)")->required();
    cmd_align->add_option("--roi", al.roi, "ROI rectangle as x,y,w,h");
    cmd_align->add_option("--roi-mask", al.roi_mask, "ROI mask PNG (white = selected)");
    cmd_align->add_option("--text", al.text, "Text to place; newlines separate lines")
        ->required();
    cmd_align->add_option("-o,--out", al.out_dir, "Output directory")->required();
    cmd_align->add_flag("--per-char-normals", al.per_char_normals,
                        "Aggregate a normal per character instead of one per ROI");
    cmd_align->add_option("--char-aspect", al.layout.char_aspect, "Character width/height")
        ->capture_default_str();
    cmd_align->add_option("--char-gap", al.layout.char_gap_frac,
                          "Gap between characters, fraction of width")
        ->capture_default_str();
    cmd_align->add_option("--line-gap", al.layout.line_gap_frac,
                          "Gap between lines, fraction of height")
        ->capture_default_str();
    cmd_align->add_option("--margin", al.layout.margin_frac, "ROI margin fraction per side")
        ->capture_default_str();
    cmd_align->add_option("--align", al.align_mode, "left, center or right")
        ->capture_default_str();
    cmd_align->add_option("--stamps", al.stamp_dir, "Directory of per-character stamp PNGs");
    cmd_align->add_option("--min-facing", al.min_facing, "Minimum |n_z| before refusing")
        ->capture_default_str();

    MaeArgs mae;
    auto* cmd_mae =
        app.add_subcommand("mae", "Mean angular error between two normal maps (degrees)");
    cmd_mae->add_option("--before", mae.before, "Normal map before")->required();
    cmd_mae->add_option("--after", mae.after, "Normal map after")->required();
    cmd_mae->add_option("--roi", mae.roi, "Restrict to an ROI rectangle x,y,w,h");
    cmd_mae->add_option("--roi-mask", mae.roi_mask, "Restrict to a mask PNG");
    cmd_mae->add_flag("--raw", mae.raw, "Inputs are lossless .nrm files");

    AugmentArgs aug;
    auto* cmd_aug =
        app.add_subcommand("augment", "Affine-warp an image and its normal map consistently");
    cmd_aug->add_option("--image", aug.image, "Source image PNG")->required();
    cmd_aug->add_option("--normals", aug.normals, "Normal map (.png or .nrm)")->required();
    cmd_aug->add_option("--rotate", aug.rotate, "Rotation in degrees")->capture_default_str();
    cmd_aug->add_option("--scale", aug.scale, "Uniform scale factor")->capture_default_str();
    cmd_aug->add_option("--shear", aug.shear, "Horizontal shear factor")->capture_default_str();
    cmd_aug->add_option("--tx", aug.tx, "Translation x, pixels")->capture_default_str();
    cmd_aug->add_option("--ty", aug.ty, "Translation y, pixels")->capture_default_str();
    cmd_aug->add_option("-o,--out", aug.out_dir, "Output directory")->required();

    std::string csv_path;
    auto* cmd_rate = app.add_subcommand("rate-stats", "Aggregate a human-evaluation ratings CSV");
    cmd_rate->add_option("--csv", csv_path, "Ratings CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (cmd_synth->parsed()) return run_synth(synth);
        if (cmd_align->parsed()) return run_align(al);
        if (cmd_mae->parsed()) return run_mae(mae);
        if (cmd_aug->parsed()) return run_augment(aug);
        if (cmd_rate->parsed()) return run_rate_stats(csv_path);
    } catch (const ox::GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerateGeometry;
    } catch (const ox::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const ox::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
