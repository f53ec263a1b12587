#pragma once

#include <memory>
#include <random>
#include <string_view>

#include "verkle/harness.hpp"
#include "verkle/kzg.hpp"

namespace verkle::testing {

inline Bytes textBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline std::string hexOf(std::span<const uint8_t> b) { return toHex(b); }

/// Shared 256-wide key; built once per test binary.
inline std::shared_ptr<const kzg::CommitmentKey> sharedKey()
{
    static std::shared_ptr<const kzg::CommitmentKey> key = harness::makeCommitmentKey("verkle-oracle-setup");
    return key;
}

inline kzg::Polynomial randomPolynomial(std::mt19937_64& rng, std::size_t degree)
{
    kzg::Polynomial p;
    for (std::size_t i = 0; i <= degree; ++i)
        p.coefficients.push_back(kzg::Scalar::random(rng));
    return p;
}

} // namespace verkle::testing
