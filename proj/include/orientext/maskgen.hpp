#pragma once

#include <string>
#include <vector>

#include "orientext/geometry.hpp"
#include "orientext/image.hpp"
#include "orientext/normal_field.hpp"

namespace orientext {

struct CharBox {
    char ch = 0;
    BBox2D box;
};

struct CharQuad {
    char ch = 0;
    Quad2D quad;
};

struct LayoutConfig {
    double char_aspect = 0.6;     // width / height of a character cell
    double char_gap_frac = 0.1;   // gap between cells, fraction of cell width
    double line_gap_frac = 0.25;  // gap between lines, fraction of cell height
    double margin_frac = 0.05;    // margin inside the ROI, per side
    enum class Align { Left, Center, Right } align = Align::Center;

    void validate() const;
};

struct RoiRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

// Binary glyph stamp in a canonical unit square, sampled row-major.
class GlyphStamp {
  public:
    GlyphStamp() = default;
    GlyphStamp(int size, std::vector<uint8_t> bits) : size_(size), bits_(std::move(bits)) {}

    int size() const { return size_; }
    // Nearest sample at (u, v) in [0,1)^2; true where the glyph covers.
    bool covered(double u, double v) const;

  private:
    int size_ = 0;
    std::vector<uint8_t> bits_;
};

// Built-in stamps for A-Z, 0-9 and . , - ' & ! ? at 64x64. Stamps loaded
// from a directory of per-character PNGs override the built-ins.
class GlyphSet {
  public:
    GlyphSet();

    bool supports(char ch) const;
    const GlyphStamp& stamp(char ch) const;  // throws UnsupportedCharacter

    // Reads <name>.png files (e.g. "A.png", "0.png") thresholded at 128.
    void load_overrides(const std::string& dir);

    static const GlyphSet& builtin();

  private:
    std::vector<GlyphStamp> stamps_;
    std::vector<int> index_;
};

// Splits text on newlines and fits a uniform character grid inside the ROI.
// Spaces occupy a cell but emit no box. Deterministic for fixed inputs.
std::vector<CharBox> layout_text(const std::string& text, const RoiRect& roi,
                                 const LayoutConfig& cfg, const GlyphSet& glyphs);

// Aligns every box with the dominant ROI normal (default) or, when
// per_box is true, with the dominant normal of each box's footprint.
std::vector<CharQuad> align_char_boxes(const std::vector<CharBox>& boxes,
                                       const NormalField& field, const RoiMask& roi,
                                       const ProjectionConfig& cfg, bool per_box = false);

// Inverse-maps each pixel through the unit-square->quad homography and
// samples the glyph stamp; strictly binary output, out-of-image clipped.
MaskImage rasterize_mask(const std::vector<CharQuad>& quads, ImageSize size,
                         const GlyphSet& glyphs);

struct ConditioningExport {
    std::vector<std::string> files;  // paths written, in manifest order
    std::string manifest_path;
};

// Writes source.png, cmask_aligned.png, normals.png, roi.png, quads.json
// and manifest.json into out_dir. Byte-identical for identical inputs.
ConditioningExport export_conditioning(const ImageRGB8& source, const MaskImage& mask,
                                       const NormalField& field, const RoiMask& roi,
                                       const std::vector<CharQuad>& quads,
                                       const UnitVec3& dominant, const std::string& config_digest,
                                       const std::string& out_dir);

}  // namespace orientext
