#pragma once

#include <span>

namespace mj {

/// The canonical blank-grey probe image: a 512x512 solid RGB(128,128,128)
/// PNG with frozen bytes (also shipped as assets/blank_grey_512.png).
std::span<const unsigned char> blank_image_png();

}  // namespace mj
