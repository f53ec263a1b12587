#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "verkle/hash.hpp"

namespace verkle::merkle {

/// Sibling digests from the leaf level upward.
struct MerkleProof {
    std::vector<Digest32> siblings;
    friend bool operator==(const MerkleProof&, const MerkleProof&) = default;
};

/// H(H(raw)). Throws ArgumentError on empty input.
Digest32 hashLeaf(std::span<const uint8_t> raw, HashKind kind = HashKind::Keccak256);
/// H(min(a, b) || max(a, b)) in lexicographic byte order, so hashPair(a, b) == hashPair(b, a).
Digest32 hashPair(const Digest32& a, const Digest32& b, HashKind kind = HashKind::Keccak256);

/// Binary tree with commutative pair hashing. An unpaired node at the end of a level moves up unchanged.
class MerkleTree {
  public:
    /// Throws ArgumentError if `leaves` is empty.
    static MerkleTree build(std::span<const Bytes> leaves, HashKind kind = HashKind::Keccak256);
    /// Tree over already-hashed leaves, e.g. a leaf-digest export.
    static MerkleTree fromLeafDigests(std::vector<Digest32> digests, HashKind kind = HashKind::Keccak256);

    const Digest32& root() const { return levels_.back().front(); }
    std::size_t leafCount() const { return levels_.front().size(); }
    /// levels()[0] are the leaf digests; the last level holds only the root.
    const std::vector<std::vector<Digest32>>& levels() const { return levels_; }
    HashKind hashKind() const { return kind_; }
    /// hashPair calls made while building.
    std::size_t pairHashCount() const { return pairHashes_; }

    /// Throws ArgumentError when leafIndex >= leafCount().
    MerkleProof getProof(std::size_t leafIndex) const;

    /// Concatenated 32-byte leaf digests.
    Bytes exportLeafDigests() const;

  private:
    MerkleTree() = default;
    void buildLevels();

    std::vector<std::vector<Digest32>> levels_;
    HashKind kind_ = HashKind::Keccak256;
    std::size_t pairHashes_ = 0;
};

/// Folds hashLeaf(leaf) through the siblings with hashPair and compares with root.
bool verifyProof(const Digest32& root, std::span<const uint8_t> leaf, const MerkleProof& proof,
                 HashKind kind = HashKind::Keccak256);

/// Siblings concatenated, 32 bytes each.
Bytes encodeProof(const MerkleProof& proof);
/// Throws DecodeError when the length is not a multiple of 32.
MerkleProof decodeProof(std::span<const uint8_t> bytes);
/// Splits a leaf-digest export; throws DecodeError on a ragged or empty length.
std::vector<Digest32> decodeLeafDigests(std::span<const uint8_t> bytes);

} // namespace verkle::merkle
