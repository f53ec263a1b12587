#include "verkle/msm.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace verkle::msm {

namespace {

void checkSizes(std::span<const G1Affine> bases, std::span<const Fr> scalars)
{
    if (bases.size() < scalars.size()) {
        throw std::invalid_argument("msm: more scalars than bases");
    }
}

uint64_t windowDigit(const ff::U256& k, unsigned start, unsigned width)
{
    uint64_t digit = 0;
    for (unsigned b = 0; b < width && start + b < 256; ++b) {
        if (k.bit(start + b)) {
            digit |= uint64_t{1} << b;
        }
    }
    return digit;
}

} // namespace

unsigned windowBits(std::size_t n)
{
    if (n < 4) {
        return 2;
    }
    if (n < 32) {
        return 4;
    }
    if (n < 512) {
        return 6;
    }
    if (n < 8192) {
        return 9;
    }
    return 12;
}

G1 msmSerial(std::span<const G1Affine> bases, std::span<const Fr> scalars)
{
    checkSizes(bases, scalars);
    G1 acc = G1::identity();
    for (std::size_t i = 0; i < scalars.size(); ++i) {
        acc += bn254::mulScalar(bases[i].toJacobian(), scalars[i]);
    }
    return acc;
}

G1 msmParallel(std::span<const G1Affine> bases, std::span<const Fr> scalars)
{
    checkSizes(bases, scalars);
    const std::size_t n = scalars.size();
    if (n == 0) {
        return G1::identity();
    }
    std::vector<ff::U256> ks(n);
    std::size_t maxBits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ks[i] = scalars[i].toCanonical();
        maxBits = std::max(maxBits, ks[i].bitLength());
    }
    if (maxBits == 0) {
        return G1::identity();
    }

    const unsigned c = windowBits(n);
    const int windows = static_cast<int>((maxBits + c - 1) / c);
    std::vector<G1> windowSums(static_cast<std::size_t>(windows), G1::identity());

#pragma omp parallel for schedule(dynamic)
    for (int w = 0; w < windows; ++w) {
        std::vector<G1> buckets((std::size_t{1} << c) - 1, G1::identity());
        const unsigned start = static_cast<unsigned>(w) * c;
        for (std::size_t i = 0; i < n; ++i) {
            uint64_t d = windowDigit(ks[i], start, c);
            if (d != 0 && !bases[i].isIdentity()) {
                buckets[d - 1] = buckets[d - 1].addAffine(bases[i].x, bases[i].y);
            }
        }
        // sum_d d * bucket[d] via running suffix sums
        G1 running = G1::identity();
        G1 total = G1::identity();
        for (std::size_t d = buckets.size(); d-- > 0;) {
            running += buckets[d];
            total += running;
        }
        windowSums[static_cast<std::size_t>(w)] = total;
    }

    G1 acc = G1::identity();
    for (int w = windows; w-- > 0;) {
        for (unsigned b = 0; b < c; ++b) {
            acc = acc.doubled();
        }
        acc += windowSums[static_cast<std::size_t>(w)];
    }
    return acc;
}

} // namespace verkle::msm
