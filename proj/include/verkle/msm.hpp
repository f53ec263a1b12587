#pragma once

#include <span>

#include "verkle/bn254.hpp"

namespace verkle::msm {

using bn254::G1;
using bn254::G1Affine;
using ff::Fr;

/// sum_i scalars[i] * bases[i] by independent double-and-add per term.
/// Reference implementation; quadratic in bit length, kept for cross-checking.
G1 msmSerial(std::span<const G1Affine> bases, std::span<const Fr> scalars);

/// Bucket (Pippenger) multi-scalar multiplication with windows distributed over OpenMP threads.
/// Result equals msmSerial on the same inputs.
G1 msmParallel(std::span<const G1Affine> bases, std::span<const Fr> scalars);

/// Window width used by msmParallel for `n` terms.
unsigned windowBits(std::size_t n);

} // namespace verkle::msm
