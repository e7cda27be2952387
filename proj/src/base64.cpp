#include "base64.hpp"

#include <array>
#include <cctype>

namespace mj {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::array<int, 256> build_reverse_table() {
    std::array<int, 256> table{};
    table.fill(-1);
    for (int i = 0; i < 64; ++i) table[static_cast<unsigned char>(kAlphabet[i])] = i;
    return table;
}

}  // namespace

std::string base64_encode(std::span<const unsigned char> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= bytes.size()) {
        unsigned value = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out += kAlphabet[(value >> 18) & 0x3f];
        out += kAlphabet[(value >> 12) & 0x3f];
        out += kAlphabet[(value >> 6) & 0x3f];
        out += kAlphabet[value & 0x3f];
        i += 3;
    }
    std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        unsigned value = bytes[i] << 16;
        out += kAlphabet[(value >> 18) & 0x3f];
        out += kAlphabet[(value >> 12) & 0x3f];
        out += "==";
    } else if (rest == 2) {
        unsigned value = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out += kAlphabet[(value >> 18) & 0x3f];
        out += kAlphabet[(value >> 12) & 0x3f];
        out += kAlphabet[(value >> 6) & 0x3f];
        out += '=';
    }
    return out;
}

std::optional<std::vector<unsigned char>> base64_decode(std::string_view text) {
    static const std::array<int, 256> kReverse = build_reverse_table();
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    unsigned buffer = 0;
    int bits = 0;
    int padding = 0;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '=') {
            ++padding;
            continue;
        }
        if (padding > 0) return std::nullopt;  // data after padding
        int value = kReverse[static_cast<unsigned char>(c)];
        if (value < 0) return std::nullopt;
        buffer = (buffer << 6) | static_cast<unsigned>(value);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<unsigned char>((buffer >> bits) & 0xff));
        }
    }
    if (padding > 2) return std::nullopt;
    if ((buffer & ((1u << bits) - 1)) != 0) return std::nullopt;  // stray trailing bits
    return out;
}

}  // namespace mj
