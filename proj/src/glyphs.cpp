#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "orientext/errors.hpp"
#include "orientext/image.hpp"
#include "orientext/maskgen.hpp"

namespace orientext {

namespace {

constexpr int kStampSize = 64;

struct GlyphDef {
    char ch;
    const char* rows[7];  // 5 columns, '#' = covered
};

// clang-format off
constexpr GlyphDef kFont[] = {
    {'A', {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'B', {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."}},
    {'C', {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."}},
    {'D', {"####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."}},
    {'E', {"#####", "#....", "#....", "####.", "#....", "#....", "#####"}},
    {'F', {"#####", "#....", "#....", "####.", "#....", "#....", "#...."}},
    {'G', {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"}},
    {'H', {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'I', {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {'J', {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."}},
    {'K', {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"}},
    {'L', {"#....", "#....", "#....", "#....", "#....", "#....", "#####"}},
    {'M', {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"}},
    {'N', {"#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#", "#...#"}},
    {'O', {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'P', {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."}},
    {'Q', {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"}},
    {'R', {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"}},
    {'S', {".####", "#....", "#....", ".###.", "....#", "....#", "####."}},
    {'T', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
    {'U', {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'V', {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."}},
    {'W', {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "##.##", "#...#"}},
    {'X', {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"}},
    {'Y', {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."}},
    {'Z', {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"}},
    {'0', {".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."}},
    {'1', {"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {'2', {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"}},
    {'3', {"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."}},
    {'4', {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."}},
    {'5', {"#####", "#....", "####.", "....#", "....#", "#...#", ".###."}},
    {'6', {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."}},
    {'7', {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."}},
    {'8', {".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."}},
    {'9', {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."}},
    {'.', {".....", ".....", ".....", ".....", ".....", ".##..", ".##.."}},
    {',', {".....", ".....", ".....", ".....", ".##..", "..#..", ".#..."}},
    {'-', {".....", ".....", ".....", "#####", ".....", ".....", "....."}},
    {'\'', {"..#..", "..#..", ".#...", ".....", ".....", ".....", "....."}},
    {'&', {".##..", "#..#.", "#..#.", ".##..", "#.#.#", "#..#.", ".##.#"}},
    {'!', {"..#..", "..#..", "..#..", "..#..", "..#..", ".....", "..#.."}},
    {'?', {".###.", "#...#", "....#", "...#.", "..#..", ".....", "..#.."}},
};
// clang-format on

GlyphStamp upsample(const GlyphDef& def) {
    std::vector<uint8_t> bits(static_cast<size_t>(kStampSize) * kStampSize, 0);
    for (int y = 0; y < kStampSize; ++y) {
        const int row = std::min(6, y * 7 / kStampSize);
        for (int x = 0; x < kStampSize; ++x) {
            const int col = std::min(4, x * 5 / kStampSize);
            bits[static_cast<size_t>(y) * kStampSize + x] = def.rows[row][col] == '#' ? 1 : 0;
        }
    }
    return GlyphStamp(kStampSize, std::move(bits));
}

}  // namespace

bool GlyphStamp::covered(double u, double v) const {
    if (size_ == 0) return false;
    const int x = std::clamp(static_cast<int>(u * size_), 0, size_ - 1);
    const int y = std::clamp(static_cast<int>(v * size_), 0, size_ - 1);
    return bits_[static_cast<size_t>(y) * size_ + x] != 0;
}

GlyphSet::GlyphSet() : index_(256, -1) {
    for (const GlyphDef& def : kFont) {
        index_[static_cast<unsigned char>(def.ch)] = static_cast<int>(stamps_.size());
        stamps_.push_back(upsample(def));
    }
}

bool GlyphSet::supports(char ch) const { return index_[static_cast<unsigned char>(ch)] >= 0; }

const GlyphStamp& GlyphSet::stamp(char ch) const {
    const int i = index_[static_cast<unsigned char>(ch)];
    if (i < 0)
        throw UnsupportedCharacter(std::string("no glyph for character '") + ch + "'");
    return stamps_[static_cast<size_t>(i)];
}

void GlyphSet::load_overrides(const std::string& dir) {
    for (const GlyphDef& def : kFont) {
        const std::filesystem::path p =
            std::filesystem::path(dir) / (std::string(1, def.ch) + ".png");
        if (!std::filesystem::exists(p)) continue;
        const ImageGray8 img = read_png_gray(p.string());
        if (img.width != img.height || img.width < 8)
            throw InvalidImage("glyph override must be square and >= 8 px: " + p.string());
        std::vector<uint8_t> bits(img.data.size());
        for (size_t i = 0; i < bits.size(); ++i) bits[i] = img.data[i] >= 128 ? 1 : 0;
        index_[static_cast<unsigned char>(def.ch)] = static_cast<int>(stamps_.size());
        stamps_.push_back(GlyphStamp(img.width, std::move(bits)));
    }
}

const GlyphSet& GlyphSet::builtin() {
    static const GlyphSet set;
    return set;
}

}  // namespace orientext
