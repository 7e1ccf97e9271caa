#pragma once

#include <bitset>
#include <optional>
#include <span>
#include <string>

namespace ocrtune {

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kGlyphPixels = kGlyphWidth * kGlyphHeight;
// Each font pixel is drawn as a kGlyphScale x kGlyphScale block.
inline constexpr int kGlyphScale = 3;
inline constexpr int kCellWidth = (kGlyphWidth + 1) * kGlyphScale;
inline constexpr int kCellHeight = (kGlyphHeight + 1) * kGlyphScale;

using GlyphBits = std::bitset<kGlyphPixels>;  // bit (row * 5 + col) set = ink

struct Glyph {
    char32_t character;
    GlyphBits bits;
};

/// The fixed character set: space, A-Z, digits, punctuation and the uppercase
/// Portuguese accented letters.
std::span<const Glyph> glyph_font();

std::optional<GlyphBits> glyph_for(char32_t c);

}  // namespace ocrtune
