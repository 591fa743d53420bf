#pragma once

#include <cstdint>
#include <vector>

namespace gperiod::detail {

// Minimal PNG writer: 8-bit RGB, filter 0, one zlib stream at a fixed
// compression level, no ancillary chunks. Identical input always yields
// identical bytes.
std::vector<uint8_t> write_png_rgb8(int width, int height, const uint8_t* rgb);

}  // namespace gperiod::detail
