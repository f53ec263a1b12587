#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace verkle {

using Bytes = std::vector<uint8_t>;
using Digest32 = std::array<uint8_t, 32>;

enum class HashKind { Keccak256, Sha256 };

/// Original Keccak padding (0x01), as used by the EVM; not FIPS-202 SHA3-256.
Digest32 keccak256(std::span<const uint8_t> data);
Digest32 sha256(std::span<const uint8_t> data);
Digest32 hashBytes(HashKind kind, std::span<const uint8_t> data);

std::string toHex(std::span<const uint8_t> data);
/// Accepts an optional 0x prefix; throws ArgumentError on odd length or non-hex characters.
Bytes fromHex(std::string_view hex);

} // namespace verkle
