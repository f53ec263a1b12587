#include "verkle/hash.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

#include "verkle/errors.hpp"

namespace verkle {

namespace {

constexpr std::array<uint64_t, 24> kRoundConstants{
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr std::array<int, 25> kRotations{0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                                         25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

constexpr uint64_t rotl(uint64_t v, int s) { return s == 0 ? v : (v << s) | (v >> (64 - s)); }

void keccakF1600(std::array<uint64_t, 25>& a)
{
    for (uint64_t rc : kRoundConstants) {
        std::array<uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x) {
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        }
        for (int x = 0; x < 5; ++x) {
            uint64_t d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) {
                a[y + x] ^= d;
            }
        }
        // rho + pi: B[y, 2x+3y] = rot(A[x, y])
        std::array<uint64_t, 25> b{};
        for (int x = 0; x < 5; ++x) {
            for (int y = 0; y < 5; ++y) {
                b[((2 * x + 3 * y) % 5) * 5 + y] = rotl(a[y * 5 + x], kRotations[y * 5 + x]);
            }
        }
        for (int y = 0; y < 25; y += 5) {
            for (int x = 0; x < 5; ++x) {
                a[y + x] = b[y + x] ^ (~b[y + (x + 1) % 5] & b[y + (x + 2) % 5]);
            }
        }
        a[0] ^= rc;
    }
}

} // namespace

Digest32 keccak256(std::span<const uint8_t> data)
{
    constexpr std::size_t kRate = 136;
    std::array<uint64_t, 25> state{};
    auto absorb = [&state](const uint8_t* block) {
        for (std::size_t i = 0; i < kRate / 8; ++i) {
            uint64_t lane = 0;
            for (int b = 7; b >= 0; --b) {
                lane = (lane << 8) | block[i * 8 + static_cast<std::size_t>(b)];
            }
            state[i] ^= lane;
        }
        keccakF1600(state);
    };

    std::size_t offset = 0;
    for (; offset + kRate <= data.size(); offset += kRate) {
        absorb(data.data() + offset);
    }
    std::array<uint8_t, kRate> last{};
    std::size_t rest = data.size() - offset;
    if (rest != 0) {
        std::memcpy(last.data(), data.data() + offset, rest);
    }
    last[rest] ^= 0x01;
    last[kRate - 1] ^= 0x80;
    absorb(last.data());

    Digest32 out{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<uint8_t>(state[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

Digest32 sha256(std::span<const uint8_t> data)
{
    Digest32 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
        throw std::runtime_error("EVP_Digest(sha256) failed");
    }
    return out;
}

Digest32 hashBytes(HashKind kind, std::span<const uint8_t> data)
{
    return kind == HashKind::Keccak256 ? keccak256(data) : sha256(data);
}

std::string toHex(std::span<const uint8_t> data)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes fromHex(std::string_view hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X")) {
        hex.remove_prefix(2);
    }
    if (hex.size() % 2 != 0) {
        throw ArgumentError("hex string has odd length");
    }
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') {
            return c - '0';
        }
        if (c >= 'a' && c <= 'f') {
            return c - 'a' + 10;
        }
        if (c >= 'A' && c <= 'F') {
            return c - 'A' + 10;
        }
        throw ArgumentError(std::string("invalid hex character '") + c + "'");
    };
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    }
    return out;
}

} // namespace verkle
