#include "blank_image.hpp"

namespace mj {

// 512x512 solid RGB(128,128,128) PNG. Runs are only comparable if this asset
// never changes, so the bytes are frozen here rather than loaded from disk.
static const unsigned char kBlankGreyPng[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x00, 0x08, 0x02, 0x00, 0x00, 0x00, 0x7b, 0x1a, 0x43,
    0xad, 0x00, 0x00, 0x05, 0x98, 0x49, 0x44, 0x41, 0x54, 0x78, 0xda, 0xed, 0xd5, 0x31, 0x01, 0x00,
    0x00, 0x08, 0xc3, 0x30, 0x40, 0xf9, 0xa4, 0xe3, 0x81, 0x97, 0x44, 0x42, 0x9f, 0x76, 0x92, 0x02,
    0xe0, 0x9f, 0x91, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0xc0, 0x00, 0x24, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00,
    0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00,
    0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00,
    0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c,
    0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0,
    0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00,
    0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00,
    0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00,
    0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03,
    0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30,
    0x00, 0x00, 0x0c, 0x00, 0x00, 0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x00,
    0x03, 0x00, 0xc0, 0x00, 0x00, 0x30, 0x00, 0x00, 0x0c, 0x00, 0x80, 0x9b, 0x05, 0x76, 0x3b, 0x05,
    0x80, 0x09, 0x16, 0xbf, 0x09, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60,
    0x82,
};

std::span<const unsigned char> blank_image_png() {
    return {kBlankGreyPng, sizeof(kBlankGreyPng)};
}

}  // namespace mj
