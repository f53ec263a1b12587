#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "verkle/hash.hpp"
#include "verkle/kzg.hpp"

namespace verkle::tree {

using kzg::Commitment;
using kzg::OpeningProof;
using kzg::Scalar;

/// Children per internal node and slots per leaf; one key byte per level.
inline constexpr std::size_t kBranchingFactor = 256;
/// A stem plus leaf index must fit in one 32-byte key digest.
inline constexpr std::size_t kMaxStemWidth = 31;

struct TreeConfig {
    std::size_t branchingFactor = kBranchingFactor;
    /// Bytes of key consumed by internal levels.
    std::size_t stemWidth = 1;

    /// Commitment layers including the leaf layer.
    std::size_t levels() const { return stemWidth + 1; }
    /// 256^(stemWidth + 1); throws ConfigError when that does not fit in 64 bits.
    uint64_t capacity() const;
    /// Throws ConfigError unless branchingFactor == 256 and 1 <= stemWidth <= 31.
    void validate() const;

    friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

struct VerkleKey {
    Bytes stem;
    uint8_t leafIndex = 0;

    friend bool operator==(const VerkleKey&, const VerkleKey&) = default;
    friend auto operator<=>(const VerkleKey&, const VerkleKey&) = default;
};

/// stem = keccak256(raw)[0, stemWidth), leafIndex = keccak256(raw)[stemWidth].
VerkleKey deriveKey(std::span<const uint8_t> raw, const TreeConfig& config);

/// Path proof: one opening per internal level plus the leaf opening.
struct VerkleProof {
    Bytes stem;
    uint8_t leafIndex = 0;
    std::vector<uint8_t> indices;
    std::vector<OpeningProof> internalProofs;
    std::vector<Commitment> internalChildCommitments;
    OpeningProof leafProof;

    friend bool operator==(const VerkleProof&, const VerkleProof&) = default;
};

/// Fixed-depth 256-ary Verkle tree.
///
/// Every node commits to its 256-slot vector (absent slots are zero). A leaf's vector holds the
/// stored values; an internal node's slot i holds commitmentToScalar of child i's commitment.
///
/// Mutation is single-writer. After commitTree() the tree may serve generateProof() from any
/// number of threads, since proof generation only reads the cached commitments.
class VerkleTree {
  public:
    /// Throws ConfigError if the key's domain is narrower than the branching factor.
    VerkleTree(TreeConfig config, std::shared_ptr<const kzg::CommitmentKey> key);
    ~VerkleTree();
    VerkleTree(VerkleTree&&) noexcept;
    VerkleTree& operator=(VerkleTree&&) noexcept;

    /// Overwrites an existing value. Zero is the absent marker and is rejected with ArgumentError.
    void insert(const VerkleKey& key, const Scalar& value);
    std::optional<Scalar> get(const VerkleKey& key) const;

    /// Recomputes stale node commitments bottom-up (subtrees under the root in parallel) and returns the root.
    Commitment commitTree();
    /// Root commitment by interpolating every node vector and committing in coefficient form,
    /// serially and without touching caches. Reference path for commitTree().
    Commitment commitTreeReference() const;
    bool isCommitted() const;
    /// Root of the last commitTree(); throws std::logic_error if the tree changed since.
    Commitment root() const;

    /// Throws NotFoundError for absent keys and std::logic_error if the tree is not committed.
    VerkleProof generateProof(const VerkleKey& key) const;

    std::size_t size() const { return size_; }
    const TreeConfig& config() const { return config_; }
    const kzg::CommitmentKey& commitmentKey() const { return *key_; }
    /// All (key, value) pairs in key order.
    std::vector<std::pair<VerkleKey, Scalar>> entries() const;

  private:
    struct Node;

    void checkKey(const VerkleKey& key) const;
    void commitNode(Node& node) const;
    Commitment referenceCommit(const Node& node) const;
    std::vector<Scalar> nodeVector(const Node& node) const;

    TreeConfig config_;
    std::shared_ptr<const kzg::CommitmentKey> key_;
    std::unique_ptr<Node> root_;
    std::size_t size_ = 0;
};

/// Pure check of `proof` against `root`, `key` and `value`.
/// Throws MalformedProofError if the proof's lists do not all have the stem's length.
bool verifyProofLocal(const kzg::TrustedSetup& setup, const Commitment& root, const VerkleKey& key,
                      const Scalar& value, const VerkleProof& proof);

/// 0x56 0x01 | stemLen | stem | leafIndex | per level: index, child commitment, opening | leaf opening.
Bytes encodeProofCompact(const VerkleProof& proof);
/// Inverse of encodeProofCompact. Throws DecodeError on bad magic, version, length, trailing bytes or points.
VerkleProof decodeProof(std::span<const uint8_t> bytes);

/// Calldata layout: stem (bytes32, left-aligned) | leafIndex (uint256) |
/// per level: index (uint256), child commitment (64), opening (64) | leaf opening (64).
/// Size is 128 + 160 * stemWidth.
Bytes encodeProofWordAligned(const VerkleProof& proof);
VerkleProof decodeProofWordAligned(std::span<const uint8_t> bytes);

inline constexpr std::size_t kCompactHeaderBytes = 2;
inline constexpr std::size_t kCompactLevelBytes = 1 + 64 + 64;
inline constexpr std::size_t kWordLevelBytes = 32 + 64 + 64;
inline constexpr std::size_t kWordFixedBytes = 32 + 32 + 64;

constexpr std::size_t compactProofSize(std::size_t stemWidth)
{
    return kCompactHeaderBytes + 1 + stemWidth + 1 + stemWidth * kCompactLevelBytes + 64;
}

constexpr std::size_t wordAlignedProofSize(std::size_t stemWidth) { return kWordFixedBytes + stemWidth * kWordLevelBytes; }

} // namespace verkle::tree
