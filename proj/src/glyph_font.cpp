#include "ocrtune/glyph_font.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace ocrtune {
namespace {

struct GlyphSource {
    char32_t character;
    std::array<std::string_view, kGlyphHeight> rows;
};

// Accented capitals: one accent row above a six-row letter body.
#define BODY_A ".###.", "#...#", "#...#", "#####", "#...#", "#...#"
#define BODY_E "#####", "#....", "####.", "#....", "#....", "#####"
#define BODY_I ".###.", "..#..", "..#..", "..#..", "..#..", ".###."
#define BODY_O ".###.", "#...#", "#...#", "#...#", "#...#", ".###."
#define BODY_U "#...#", "#...#", "#...#", "#...#", "#...#", ".###."

constexpr GlyphSource kSources[] = {
    {U' ', {".....", ".....", ".....", ".....", ".....", ".....", "....."}},
    {U'A', {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {U'B', {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."}},
    {U'C', {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."}},
    {U'D', {"###..", "#..#.", "#...#", "#...#", "#...#", "#..#.", "###.."}},
    {U'E', {"#####", "#....", "#....", "####.", "#....", "#....", "#####"}},
    {U'F', {"#####", "#....", "#....", "####.", "#....", "#....", "#...."}},
    {U'G', {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"}},
    {U'H', {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {U'I', {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {U'J', {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."}},
    {U'K', {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"}},
    {U'L', {"#....", "#....", "#....", "#....", "#....", "#....", "#####"}},
    {U'M', {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"}},
    {U'N', {"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"}},
    {U'O', {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {U'P', {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."}},
    {U'Q', {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"}},
    {U'R', {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"}},
    {U'S', {".####", "#....", "#....", ".###.", "....#", "....#", "####."}},
    {U'T', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
    {U'U', {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {U'V', {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."}},
    {U'W', {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."}},
    {U'X', {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"}},
    {U'Y', {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."}},
    {U'Z', {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"}},
    {U'0', {".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."}},
    {U'1', {"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {U'2', {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"}},
    {U'3', {"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."}},
    {U'4', {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."}},
    {U'5', {"#####", "#....", "####.", "....#", "....#", "#...#", ".###."}},
    {U'6', {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."}},
    {U'7', {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."}},
    {U'8', {".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."}},
    {U'9', {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."}},
    {U'.', {".....", ".....", ".....", ".....", ".....", ".##..", ".##.."}},
    {U',', {".....", ".....", ".....", ".....", ".##..", "..#..", ".#..."}},
    {U':', {".....", ".##..", ".##..", ".....", ".##..", ".##..", "....."}},
    {U';', {".....", ".##..", ".##..", ".....", ".##..", "..#..", ".#..."}},
    {U'-', {".....", ".....", ".....", "#####", ".....", ".....", "....."}},
    {U'/', {".....", "....#", "...#.", "..#..", ".#...", "#....", "....."}},
    {U'(', {"...#.", "..#..", ".#...", ".#...", ".#...", "..#..", "...#."}},
    {U')', {".#...", "..#..", "...#.", "...#.", "...#.", "..#..", ".#..."}},
    {U'\'', {"..#..", "..#..", ".#...", ".....", ".....", ".....", "....."}},
    {U'?', {".###.", "#...#", "....#", "...#.", "..#..", ".....", "..#.."}},
    {U'!', {"..#..", "..#..", "..#..", "..#..", "..#..", ".....", "..#.."}},
    {U'º', {".###.", "#...#", ".###.", ".....", "#####", ".....", "....."}},
    {U'Á', {"...#.", BODY_A}},
    {U'À', {".#...", BODY_A}},
    {U'Â', {"..#..", BODY_A}},
    {U'Ã', {".##.#", BODY_A}},
    {U'É', {"...#.", BODY_E}},
    {U'Ê', {"..#..", BODY_E}},
    {U'Í', {"...#.", BODY_I}},
    {U'Ó', {"...#.", BODY_O}},
    {U'Ô', {"..#..", BODY_O}},
    {U'Õ', {".##.#", BODY_O}},
    {U'Ú', {"...#.", BODY_U}},
    {U'Ç', {".###.", "#...#", "#....", "#....", "#...#", ".###.", "..##."}},
};

#undef BODY_A
#undef BODY_E
#undef BODY_I
#undef BODY_O
#undef BODY_U

std::vector<Glyph> build_font() {
    std::vector<Glyph> font;
    for (const auto& src : kSources) {
        GlyphBits bits;
        for (int row = 0; row < kGlyphHeight; ++row) {
            for (int col = 0; col < kGlyphWidth; ++col) {
                if (src.rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] == '#') {
                    bits.set(static_cast<std::size_t>(row * kGlyphWidth + col));
                }
            }
        }
        font.push_back({src.character, bits});
    }
    return font;
}

}  // namespace

std::span<const Glyph> glyph_font() {
    static const std::vector<Glyph> font = build_font();
    return font;
}

std::optional<GlyphBits> glyph_for(char32_t c) {
    for (const auto& g : glyph_font()) {
        if (g.character == c) return g.bits;
    }
    return std::nullopt;
}

}  // namespace ocrtune
