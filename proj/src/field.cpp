#include "verkle/field.hpp"

namespace verkle::ff {

U256 U256::fromBytesBE(std::span<const uint8_t, 32> in)
{
    U256 v;
    for (std::size_t i = 0; i < 32; ++i) {
        std::size_t limb = (31 - i) / 8;
        v.limb[limb] = (v.limb[limb] << 8) | in[i];
    }
    return v;
}

std::array<uint8_t, 32> U256::toBytesBE() const
{
    std::array<uint8_t, 32> out{};
    for (std::size_t i = 0; i < 32; ++i) {
        std::size_t byteFromLsb = 31 - i;
        out[i] = static_cast<uint8_t>(limb[byteFromLsb / 8] >> (8 * (byteFromLsb % 8)));
    }
    return out;
}

} // namespace verkle::ff
