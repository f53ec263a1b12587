#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "verkle/bn254.hpp"
#include "verkle/hash.hpp"

namespace verkle::kzg {

using Scalar = ff::Fr;
using bn254::G1Affine;
using bn254::G2Affine;

/// Largest degree generateSetup accepts.
inline constexpr std::size_t kMaxSetupDegree = 1U << 16;

/// Coefficients, lowest degree first. Trailing zeros are allowed.
struct Polynomial {
    std::vector<Scalar> coefficients;

    /// Index of the highest nonzero coefficient; 0 for the zero polynomial.
    std::size_t degree() const;
    bool isZero() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);
};

struct Commitment {
    G1Affine point = G1Affine::identity();
    friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct OpeningProof {
    G1Affine witness = G1Affine::identity();
    friend bool operator==(const OpeningProof&, const OpeningProof&) = default;
};

/// Powers of a secret tau in G1 plus [1]G2 and [tau]G2.
///
/// Test-grade ceremony: tau is keccak256(seed) mod r and is dropped once the powers exist.
class TrustedSetup {
  public:
    static TrustedSetup generate(std::span<const uint8_t> seed, std::size_t maxDegree);

    /// Setup file: "KZGS" || version 0x01 || maxDegree (u32 BE) || g1Powers || g2Generator || g2Tau.
    Bytes encode() const;
    /// Throws DecodeError on bad magic, version, length, invalid points, or a failed pairing spot check.
    static TrustedSetup decode(std::span<const uint8_t> bytes);

    std::size_t maxDegree() const { return g1Powers_.size() - 1; }
    std::span<const G1Affine> g1Powers() const { return g1Powers_; }
    const G2Affine& g2Generator() const { return g2Generator_; }
    const G2Affine& g2Tau() const { return g2Tau_; }

    /// e(g1Powers[1], g2Generator) == e(g1Powers[0], g2Tau)
    bool pairingConsistent() const;

    friend bool operator==(const TrustedSetup&, const TrustedSetup&) = default;

  private:
    TrustedSetup(std::vector<G1Affine> g1Powers, G2Affine g2Generator, G2Affine g2Tau);

    std::vector<G1Affine> g1Powers_;
    G2Affine g2Generator_;
    G2Affine g2Tau_;
};

/// keccak256(bytes) read big-endian and reduced mod r. The reduction has a small modulo bias.
Scalar hashToScalar(std::span<const uint8_t> bytes);

/// Unique polynomial of degree < values.size() with f(i) = values[i] for i = 0, 1, ...
Polynomial interpolateVector(std::span<const Scalar> values);

Scalar evaluate(const Polynomial& poly, const Scalar& z);

/// (f(X) - f(z)) / (X - z) by synthetic division; also returns f(z).
std::pair<Polynomial, Scalar> divideByLinear(const Polynomial& poly, const Scalar& z);

Commitment commit(const TrustedSetup& setup, const Polynomial& poly);
OpeningProof openAt(const TrustedSetup& setup, const Polynomial& poly, const Scalar& z);
bool verifyOpening(const TrustedSetup& setup, const Commitment& c, const Scalar& z, const Scalar& y,
                   const OpeningProof& proof);

/// hashToScalar of the 64-byte point encoding.
Scalar commitmentToScalar(const Commitment& c);

std::array<uint8_t, 32> encodeScalar(const Scalar& s);
/// Rejects values that are not below r.
Scalar decodeScalar(std::span<const uint8_t> bytes);
std::array<uint8_t, 64> encodeCommitment(const Commitment& c);
Commitment decodeCommitment(std::span<const uint8_t> bytes);
std::array<uint8_t, 64> encodeOpeningProof(const OpeningProof& p);
OpeningProof decodeOpeningProof(std::span<const uint8_t> bytes);

/// A setup together with the commitments [L_i(tau)]G1 to the Lagrange basis of the domain {0, ..., width-1}.
/// Committing to a vector of evaluations through this key gives the same point as
/// commit(setup, interpolateVector(values)) while touching only the nonzero slots.
class CommitmentKey {
  public:
    CommitmentKey(TrustedSetup setup, std::size_t width);

    const TrustedSetup& setup() const { return setup_; }
    std::size_t width() const { return basis_.size(); }
    std::span<const G1Affine> lagrangeBasis() const { return basis_; }

    /// Entries are (slot, value) with slot < width.
    Commitment commitSparse(std::span<const std::pair<std::size_t, Scalar>> entries) const;
    Commitment commitDense(std::span<const Scalar> values) const;

  private:
    TrustedSetup setup_;
    std::vector<G1Affine> basis_;
};

} // namespace verkle::kzg
