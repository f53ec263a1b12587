#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

namespace verkle::ff {

using u128 = unsigned __int128;

/// 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
    std::array<uint64_t, 4> limb{};

    constexpr bool bit(std::size_t i) const { return ((limb[i / 64] >> (i % 64)) & 1U) != 0; }

    constexpr std::size_t bitLength() const
    {
        for (int i = 3; i >= 0; --i) {
            if (limb[i] != 0) {
                return static_cast<std::size_t>(i) * 64 + (64 - static_cast<std::size_t>(__builtin_clzll(limb[i])));
            }
        }
        return 0;
    }

    constexpr bool isZero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }

    friend constexpr bool operator==(const U256&, const U256&) = default;
    friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b)
    {
        for (int i = 3; i >= 0; --i) {
            if (a.limb[i] != b.limb[i]) {
                return a.limb[i] <=> b.limb[i];
            }
        }
        return std::strong_ordering::equal;
    }

    static U256 fromBytesBE(std::span<const uint8_t, 32> in);
    std::array<uint8_t, 32> toBytesBE() const;
};

namespace detail {

constexpr uint64_t addCarry(uint64_t a, uint64_t b, uint64_t& carry)
{
    u128 s = static_cast<u128>(a) + b + carry;
    carry = static_cast<uint64_t>(s >> 64);
    return static_cast<uint64_t>(s);
}

constexpr uint64_t subBorrow(uint64_t a, uint64_t b, uint64_t& borrow)
{
    u128 d = static_cast<u128>(a) - b - borrow;
    borrow = static_cast<uint64_t>(d >> 64) & 1U;
    return static_cast<uint64_t>(d);
}

// returns carry out
constexpr uint64_t addInPlace(U256& a, const U256& b)
{
    uint64_t c = 0;
    for (int i = 0; i < 4; ++i) {
        a.limb[i] = addCarry(a.limb[i], b.limb[i], c);
    }
    return c;
}

// returns borrow out
constexpr uint64_t subInPlace(U256& a, const U256& b)
{
    uint64_t br = 0;
    for (int i = 0; i < 4; ++i) {
        a.limb[i] = subBorrow(a.limb[i], b.limb[i], br);
    }
    return br;
}

// -m^{-1} mod 2^64 by Newton iteration
constexpr uint64_t montInverse(uint64_t m0)
{
    uint64_t inv = 1;
    for (int i = 0; i < 7; ++i) {
        inv *= 2 - m0 * inv;
    }
    return ~inv + 1;
}

// 2^(256*k) mod m, for k = 1 or 2, by repeated doubling
constexpr U256 powerOfTwoMod(const U256& m, int doublings)
{
    U256 acc{{1, 0, 0, 0}};
    for (int i = 0; i < doublings; ++i) {
        U256 twice = acc;
        uint64_t carry = addInPlace(twice, acc);
        if (carry != 0 || twice >= m) {
            subInPlace(twice, m);
        }
        acc = twice;
    }
    return acc;
}

} // namespace detail

/// Prime field element kept in Montgomery form. `Params::kModulus` must be odd and below 2^255.
template <typename Params>
class MontField {
  public:
    static constexpr U256 kModulus = Params::kModulus;
    static constexpr uint64_t kInv = detail::montInverse(kModulus.limb[0]);
    static constexpr U256 kR = detail::powerOfTwoMod(kModulus, 256);
    static constexpr U256 kR2 = detail::powerOfTwoMod(kModulus, 512);
    static constexpr std::size_t kBytes = 32;

    constexpr MontField() = default;

    static constexpr MontField zero() { return MontField(); }
    static constexpr MontField one() { return fromRaw(kR); }

    static constexpr MontField fromU64(uint64_t v) { return fromCanonical(U256{{v, 0, 0, 0}}); }

    /// `v` must already be below the modulus.
    static constexpr MontField fromCanonical(const U256& v) { return fromRaw(montMul(v, kR2)); }

    /// Any 256-bit input, reduced modulo the field order.
    static constexpr MontField fromReduced(const U256& v)
    {
        // v*R^2/R = v*R mod p; REDC output stays below 2p for v < 2^256
        return fromRaw(montMul(v, kR2));
    }

    /// Canonical 32-byte big-endian decoding; nullopt when the value is not below the modulus.
    static std::optional<MontField> fromBytes(std::span<const uint8_t, 32> in)
    {
        U256 v = U256::fromBytesBE(in);
        if (v >= kModulus) {
            return std::nullopt;
        }
        return fromCanonical(v);
    }

    static MontField fromBytesReduced(std::span<const uint8_t, 32> in) { return fromReduced(U256::fromBytesBE(in)); }

    template <typename Rng>
    static MontField random(Rng& rng)
    {
        std::uniform_int_distribution<uint64_t> dist;
        U256 v{{dist(rng), dist(rng), dist(rng), dist(rng)}};
        return fromReduced(v);
    }

    constexpr U256 toCanonical() const { return montMul(value_, U256{{1, 0, 0, 0}}); }

    std::array<uint8_t, 32> toBytes() const { return toCanonical().toBytesBE(); }

    constexpr bool isZero() const { return value_.isZero(); }

    friend constexpr bool operator==(const MontField&, const MontField&) = default;

    constexpr MontField operator+(const MontField& o) const
    {
        MontField r = *this;
        r += o;
        return r;
    }
    constexpr MontField operator-(const MontField& o) const
    {
        MontField r = *this;
        r -= o;
        return r;
    }
    constexpr MontField operator*(const MontField& o) const { return fromRaw(montMul(value_, o.value_)); }
    constexpr MontField operator-() const
    {
        if (isZero()) {
            return *this;
        }
        U256 r = kModulus;
        detail::subInPlace(r, value_);
        return fromRaw(r);
    }

    constexpr MontField& operator+=(const MontField& o)
    {
        uint64_t carry = detail::addInPlace(value_, o.value_);
        if (carry != 0 || value_ >= kModulus) {
            detail::subInPlace(value_, kModulus);
        }
        return *this;
    }
    constexpr MontField& operator-=(const MontField& o)
    {
        if (detail::subInPlace(value_, o.value_) != 0) {
            detail::addInPlace(value_, kModulus);
        }
        return *this;
    }
    constexpr MontField& operator*=(const MontField& o)
    {
        value_ = montMul(value_, o.value_);
        return *this;
    }

    constexpr MontField square() const { return *this * *this; }
    constexpr MontField doubled() const { return *this + *this; }

    constexpr MontField pow(const U256& e) const
    {
        MontField acc = one();
        for (std::size_t i = e.bitLength(); i-- > 0;) {
            acc = acc.square();
            if (e.bit(i)) {
                acc *= *this;
            }
        }
        return acc;
    }

    /// Multiplicative inverse via Fermat; zero maps to zero.
    constexpr MontField inverse() const
    {
        U256 e = kModulus;
        detail::subInPlace(e, U256{{2, 0, 0, 0}});
        return pow(e);
    }

  private:
    static constexpr MontField fromRaw(const U256& v)
    {
        MontField f;
        f.value_ = v;
        return f;
    }

    // CIOS Montgomery multiplication: a*b*R^{-1} mod p
    static constexpr U256 montMul(const U256& a, const U256& b)
    {
        uint64_t t[6] = {0, 0, 0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            uint64_t c = 0;
            for (int j = 0; j < 4; ++j) {
                u128 s = static_cast<u128>(a.limb[j]) * b.limb[i] + t[j] + c;
                t[j] = static_cast<uint64_t>(s);
                c = static_cast<uint64_t>(s >> 64);
            }
            u128 s4 = static_cast<u128>(t[4]) + c;
            t[4] = static_cast<uint64_t>(s4);
            t[5] = static_cast<uint64_t>(s4 >> 64);

            uint64_t m = t[0] * kInv;
            u128 s0 = static_cast<u128>(m) * kModulus.limb[0] + t[0];
            c = static_cast<uint64_t>(s0 >> 64);
            for (int j = 1; j < 4; ++j) {
                u128 s = static_cast<u128>(m) * kModulus.limb[j] + t[j] + c;
                t[j - 1] = static_cast<uint64_t>(s);
                c = static_cast<uint64_t>(s >> 64);
            }
            u128 s3 = static_cast<u128>(t[4]) + c;
            t[3] = static_cast<uint64_t>(s3);
            t[4] = t[5] + static_cast<uint64_t>(s3 >> 64);
        }
        U256 r{{t[0], t[1], t[2], t[3]}};
        if (t[4] != 0 || r >= kModulus) {
            detail::subInPlace(r, kModulus);
        }
        return r;
    }

    U256 value_{};
};

struct FpParams {
    // 21888242871839275222246405745257275088696311157297823662689037894645226208583
    static constexpr U256 kModulus{{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL, 0xb85045b68181585dULL, 0x30644e72e131a029ULL}};
};

struct FrParams {
    // 21888242871839275222246405745257275088548364400416034343698204186575808495617
    static constexpr U256 kModulus{{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL, 0xb85045b68181585dULL, 0x30644e72e131a029ULL}};
};

/// Base field of the BN254 curve.
using Fp = MontField<FpParams>;
/// Scalar field (group order r) of the BN254 curve.
using Fr = MontField<FrParams>;

} // namespace verkle::ff
