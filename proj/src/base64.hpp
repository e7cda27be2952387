#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mj {

std::string base64_encode(std::span<const unsigned char> bytes);

/// Standard alphabet with '=' padding; whitespace is tolerated. Returns
/// nullopt on any other irregularity.
std::optional<std::vector<unsigned char>> base64_decode(std::string_view text);

}  // namespace mj
