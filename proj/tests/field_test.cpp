#include <gtest/gtest.h>

#include <random>

#include "verkle/field.hpp"
#include "verkle/hash.hpp"

using verkle::ff::Fp;
using verkle::ff::Fr;
using verkle::ff::U256;

TEST(Field, MontgomeryConstantsRoundTrip)
{
    EXPECT_EQ(Fp::one().toCanonical(), (U256{{1, 0, 0, 0}}));
    EXPECT_EQ(Fr::fromU64(123456789).toCanonical(), (U256{{123456789, 0, 0, 0}}));
    EXPECT_TRUE(Fp::zero().isZero());
}

TEST(Field, ModulusWrapsToZero)
{
    U256 rMinus1 = Fr::kModulus;
    rMinus1.limb[0] -= 1;
    Fr a = Fr::fromCanonical(rMinus1);
    EXPECT_TRUE((a + Fr::one()).isZero());
    EXPECT_EQ(-Fr::one(), a);
}

TEST(Field, InverseAndDistributivity)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Fp a = Fp::random(rng), b = Fp::random(rng), c = Fp::random(rng);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a - b) + b, a);
        if (!a.isZero())
            EXPECT_EQ(a * a.inverse(), Fp::one());
        Fr x = Fr::random(rng);
        if (!x.isZero())
            EXPECT_EQ(x * x.inverse(), Fr::one());
    }
}

TEST(Field, FermatPower)
{
    U256 pm1 = Fp::kModulus;
    pm1.limb[0] -= 1;
    EXPECT_EQ(Fp::fromU64(5).pow(pm1), Fp::one());
}

TEST(Field, BytesRejectNonCanonical)
{
    auto bytes = Fr::kModulus.toBytesBE();
    EXPECT_FALSE(Fr::fromBytes(bytes).has_value());
    EXPECT_TRUE(Fr::fromBytesReduced(bytes).isZero());
    bytes[31] -= 1;
    auto v = Fr::fromBytes(bytes);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->toBytes(), bytes);
}

TEST(Field, U256BigEndianLayout)
{
    std::array<uint8_t, 32> b{};
    b[31] = 0x01;
    b[0] = 0x80;
    U256 v = U256::fromBytesBE(b);
    EXPECT_EQ(v.limb[0], 1U);
    EXPECT_EQ(v.limb[3], 0x8000000000000000ULL);
    EXPECT_EQ(v.bitLength(), 256U);
    EXPECT_EQ(v.toBytesBE(), b);
}
