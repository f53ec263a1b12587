#include "verkle/merkle.hpp"

#include <algorithm>
#include <string>

#include "verkle/errors.hpp"

namespace verkle::merkle {

Digest32 hashLeaf(std::span<const uint8_t> raw, HashKind kind)
{
    if (raw.empty()) {
        throw ArgumentError("hashLeaf: empty input");
    }
    Digest32 inner = hashBytes(kind, raw);
    return hashBytes(kind, inner);
}

Digest32 hashPair(const Digest32& a, const Digest32& b, HashKind kind)
{
    std::array<uint8_t, 64> buf{};
    const bool aFirst = a <= b;
    const Digest32& lo = aFirst ? a : b;
    const Digest32& hi = aFirst ? b : a;
    std::copy(lo.begin(), lo.end(), buf.begin());
    std::copy(hi.begin(), hi.end(), buf.begin() + 32);
    return hashBytes(kind, buf);
}

MerkleTree MerkleTree::build(std::span<const Bytes> leaves, HashKind kind)
{
    if (leaves.empty()) {
        throw ArgumentError("buildTree: no leaves");
    }
    std::vector<Digest32> digests;
    digests.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        digests.push_back(hashLeaf(leaf, kind));
    }
    return fromLeafDigests(std::move(digests), kind);
}

MerkleTree MerkleTree::fromLeafDigests(std::vector<Digest32> digests, HashKind kind)
{
    if (digests.empty()) {
        throw ArgumentError("buildTree: no leaves");
    }
    MerkleTree tree;
    tree.kind_ = kind;
    tree.levels_.push_back(std::move(digests));
    tree.buildLevels();
    return tree;
}

void MerkleTree::buildLevels()
{
    while (levels_.back().size() > 1) {
        const auto& below = levels_.back();
        std::vector<Digest32> above;
        above.reserve((below.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < below.size(); i += 2) {
            above.push_back(hashPair(below[i], below[i + 1], kind_));
            ++pairHashes_;
        }
        if (below.size() % 2 == 1) {
            above.push_back(below.back());
        }
        levels_.push_back(std::move(above));
    }
}

MerkleProof MerkleTree::getProof(std::size_t leafIndex) const
{
    if (leafIndex >= leafCount()) {
        throw ArgumentError("getProof: leaf index " + std::to_string(leafIndex) + " out of range");
    }
    MerkleProof proof;
    std::size_t idx = leafIndex;
    for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
        const auto& nodes = levels_[level];
        std::size_t sibling = idx ^ 1U;
        if (sibling < nodes.size()) {
            proof.siblings.push_back(nodes[sibling]);
        }
        idx /= 2;
    }
    return proof;
}

Bytes MerkleTree::exportLeafDigests() const
{
    Bytes out;
    out.reserve(leafCount() * 32);
    for (const auto& d : levels_.front()) {
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

bool verifyProof(const Digest32& root, std::span<const uint8_t> leaf, const MerkleProof& proof, HashKind kind)
{
    Digest32 acc = hashLeaf(leaf, kind);
    for (const auto& sibling : proof.siblings) {
        acc = hashPair(acc, sibling, kind);
    }
    return acc == root;
}

Bytes encodeProof(const MerkleProof& proof)
{
    Bytes out;
    out.reserve(proof.siblings.size() * 32);
    for (const auto& s : proof.siblings) {
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

namespace {

std::vector<Digest32> splitDigests(std::span<const uint8_t> bytes, const char* what)
{
    if (bytes.size() % 32 != 0) {
        throw DecodeError(std::string(what) + ": length " + std::to_string(bytes.size()) + " is not a multiple of 32");
    }
    std::vector<Digest32> out(bytes.size() / 32);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(32 * i), 32, out[i].begin());
    }
    return out;
}

} // namespace

MerkleProof decodeProof(std::span<const uint8_t> bytes) { return MerkleProof{splitDigests(bytes, "merkle proof")}; }

std::vector<Digest32> decodeLeafDigests(std::span<const uint8_t> bytes)
{
    auto out = splitDigests(bytes, "leaf digests");
    if (out.empty()) {
        throw DecodeError("leaf digests: empty export");
    }
    return out;
}

} // namespace verkle::merkle
