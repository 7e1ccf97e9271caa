#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ocrtune/raster.hpp"

namespace ocrtune::pgm {

// Binary portable graymap (P5) with maxval 255. Header comments are accepted
// on input; output is always "P5\n<w> <h>\n255\n" followed by the raw bytes.

Raster decode(std::string_view bytes);
std::string encode(const Raster& r);

Raster read(const std::filesystem::path& path);
void write(const std::filesystem::path& path, const Raster& r);

}  // namespace ocrtune::pgm
