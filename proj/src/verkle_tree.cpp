#include "verkle/verkle_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "verkle/errors.hpp"

namespace verkle::tree {

struct VerkleTree::Node {
    bool leaf = false;
    std::map<uint8_t, std::unique_ptr<Node>> children;
    std::map<uint8_t, Scalar> values;
    std::optional<Commitment> commitment;
    // commitmentToScalar(*commitment), cached alongside it
    Scalar digest;
};

namespace {

constexpr uint8_t kProofMagic = 0x56;
constexpr uint8_t kProofVersion = 0x01;

void appendBytes(Bytes& out, std::span<const uint8_t> b) { out.insert(out.end(), b.begin(), b.end()); }

void appendWord(Bytes& out, uint8_t value)
{
    out.insert(out.end(), 31, 0);
    out.push_back(value);
}

class Reader {
  public:
    explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    std::span<const uint8_t> take(std::size_t n)
    {
        if (bytes_.size() - pos_ < n) {
            throw DecodeError("proof truncated at offset " + std::to_string(pos_));
        }
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    uint8_t byte() { return take(1)[0]; }
    uint8_t wordByte()
    {
        auto w = take(32);
        if (!std::all_of(w.begin(), w.end() - 1, [](uint8_t b) { return b == 0; })) {
            throw DecodeError("proof word exceeds one byte");
        }
        return w[31];
    }
    void finish() const
    {
        if (pos_ != bytes_.size()) {
            throw DecodeError("proof has " + std::to_string(bytes_.size() - pos_) + " trailing bytes");
        }
    }

  private:
    std::span<const uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

uint64_t TreeConfig::capacity() const
{
    if (levels() * 8 >= 64) {
        throw ConfigError("capacity 256^" + std::to_string(levels()) + " does not fit in 64 bits");
    }
    return uint64_t{1} << (8 * levels());
}

void TreeConfig::validate() const
{
    if (branchingFactor != kBranchingFactor) {
        throw ConfigError("branching factor must be 256, got " + std::to_string(branchingFactor));
    }
    if (stemWidth < 1 || stemWidth > kMaxStemWidth) {
        throw ConfigError("stem width must be in [1, 31], got " + std::to_string(stemWidth));
    }
}

VerkleKey deriveKey(std::span<const uint8_t> raw, const TreeConfig& config)
{
    if (raw.empty()) {
        throw ArgumentError("deriveKey: empty input");
    }
    config.validate();
    Digest32 d = keccak256(raw);
    VerkleKey key;
    key.stem.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(config.stemWidth));
    key.leafIndex = d[config.stemWidth];
    return key;
}

VerkleTree::VerkleTree(TreeConfig config, std::shared_ptr<const kzg::CommitmentKey> key)
    : config_(config), key_(std::move(key)), root_(std::make_unique<Node>())
{
    config_.validate();
    if (!key_) {
        throw ConfigError("verkle tree needs a commitment key");
    }
    if (key_->setup().maxDegree() < config_.branchingFactor - 1) {
        throw ConfigError("setup degree " + std::to_string(key_->setup().maxDegree()) + " below branching factor - 1");
    }
    if (key_->width() != config_.branchingFactor) {
        throw ConfigError("commitment key width " + std::to_string(key_->width()) + " != branching factor");
    }
    root_->leaf = false;
}

VerkleTree::~VerkleTree() = default;
VerkleTree::VerkleTree(VerkleTree&&) noexcept = default;
VerkleTree& VerkleTree::operator=(VerkleTree&&) noexcept = default;

void VerkleTree::checkKey(const VerkleKey& key) const
{
    if (key.stem.size() != config_.stemWidth) {
        throw ArgumentError("key stem has " + std::to_string(key.stem.size()) + " bytes, tree expects " +
                            std::to_string(config_.stemWidth));
    }
}

void VerkleTree::insert(const VerkleKey& key, const Scalar& value)
{
    checkKey(key);
    if (value.isZero()) {
        throw ArgumentError("zero is reserved for absent slots");
    }
    Node* node = root_.get();
    node->commitment.reset();
    for (std::size_t depth = 0; depth < config_.stemWidth; ++depth) {
        auto& child = node->children[key.stem[depth]];
        if (!child) {
            child = std::make_unique<Node>();
            child->leaf = depth + 1 == config_.stemWidth;
        }
        node = child.get();
        node->commitment.reset();
    }
    auto [it, inserted] = node->values.insert_or_assign(key.leafIndex, value);
    if (inserted) {
        ++size_;
    }
}

std::optional<Scalar> VerkleTree::get(const VerkleKey& key) const
{
    if (key.stem.size() != config_.stemWidth) {
        return std::nullopt;
    }
    const Node* node = root_.get();
    for (uint8_t index : key.stem) {
        auto it = node->children.find(index);
        if (it == node->children.end()) {
            return std::nullopt;
        }
        node = it->second.get();
    }
    auto it = node->values.find(key.leafIndex);
    if (it == node->values.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<Scalar> VerkleTree::nodeVector(const Node& node) const
{
    std::vector<Scalar> v(config_.branchingFactor, Scalar::zero());
    if (node.leaf) {
        for (const auto& [slot, value] : node.values) {
            v[slot] = value;
        }
    } else {
        for (const auto& [slot, child] : node.children) {
            if (!child->commitment) {
                throw std::logic_error("child commitment missing; commitTree() first");
            }
            v[slot] = child->digest;
        }
    }
    return v;
}

void VerkleTree::commitNode(Node& node) const
{
    if (node.commitment) {
        return;
    }
    std::vector<std::pair<std::size_t, Scalar>> entries;
    if (node.leaf) {
        entries.reserve(node.values.size());
        for (const auto& [slot, value] : node.values) {
            entries.emplace_back(slot, value);
        }
    } else {
        entries.reserve(node.children.size());
        for (auto& [slot, child] : node.children) {
            commitNode(*child);
            entries.emplace_back(slot, child->digest);
        }
    }
    Commitment c = key_->commitSparse(entries);
    node.digest = kzg::commitmentToScalar(c);
    node.commitment = c;
}

Commitment VerkleTree::commitTree()
{
    Node& root = *root_;
    if (root.commitment) {
        return *root.commitment;
    }
    std::vector<Node*> stale;
    for (auto& [slot, child] : root.children) {
        if (!child->commitment) {
            stale.push_back(child.get());
        }
    }
    const auto count = static_cast<std::ptrdiff_t>(stale.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        commitNode(*stale[static_cast<std::size_t>(i)]);
    }
    commitNode(root);
    return *root.commitment;
}

Commitment VerkleTree::referenceCommit(const Node& node) const
{
    std::vector<Scalar> v(config_.branchingFactor, Scalar::zero());
    if (node.leaf) {
        for (const auto& [slot, value] : node.values) {
            v[slot] = value;
        }
    } else {
        for (const auto& [slot, child] : node.children) {
            v[slot] = kzg::commitmentToScalar(referenceCommit(*child));
        }
    }
    return kzg::commit(key_->setup(), kzg::interpolateVector(v));
}

Commitment VerkleTree::commitTreeReference() const { return referenceCommit(*root_); }

bool VerkleTree::isCommitted() const { return root_->commitment.has_value(); }

Commitment VerkleTree::root() const
{
    if (!root_->commitment) {
        throw std::logic_error("tree modified since last commitTree()");
    }
    return *root_->commitment;
}

VerkleProof VerkleTree::generateProof(const VerkleKey& key) const
{
    checkKey(key);
    if (!isCommitted()) {
        throw std::logic_error("generateProof requires commitTree() after the last insert");
    }
    const auto& setup = key_->setup();
    VerkleProof proof;
    proof.stem = key.stem;
    proof.leafIndex = key.leafIndex;

    const Node* node = root_.get();
    for (uint8_t index : key.stem) {
        auto it = node->children.find(index);
        if (it == node->children.end()) {
            throw NotFoundError("key not present in tree");
        }
        const Node* child = it->second.get();
        kzg::Polynomial poly = kzg::interpolateVector(nodeVector(*node));
        proof.indices.push_back(index);
        proof.internalChildCommitments.push_back(*child->commitment);
        proof.internalProofs.push_back(kzg::openAt(setup, poly, Scalar::fromU64(index)));
        node = child;
    }
    if (!node->values.contains(key.leafIndex)) {
        throw NotFoundError("key not present in tree");
    }
    kzg::Polynomial leafPoly = kzg::interpolateVector(nodeVector(*node));
    proof.leafProof = kzg::openAt(setup, leafPoly, Scalar::fromU64(key.leafIndex));
    return proof;
}

std::vector<std::pair<VerkleKey, Scalar>> VerkleTree::entries() const
{
    std::vector<std::pair<VerkleKey, Scalar>> out;
    out.reserve(size_);
    Bytes stem;
    auto walk = [&](auto&& self, const Node& node) -> void {
        if (node.leaf) {
            for (const auto& [slot, value] : node.values) {
                out.push_back({VerkleKey{stem, slot}, value});
            }
            return;
        }
        for (const auto& [slot, child] : node.children) {
            stem.push_back(slot);
            self(self, *child);
            stem.pop_back();
        }
    };
    walk(walk, *root_);
    return out;
}

bool verifyProofLocal(const kzg::TrustedSetup& setup, const Commitment& root, const VerkleKey& key,
                      const Scalar& value, const VerkleProof& proof)
{
    const std::size_t width = proof.stem.size();
    if (width == 0 || proof.indices.size() != width || proof.internalProofs.size() != width ||
        proof.internalChildCommitments.size() != width) {
        throw MalformedProofError("proof lists do not match stem length " + std::to_string(width));
    }
    if (proof.stem != key.stem || proof.leafIndex != key.leafIndex) {
        return false;
    }
    Commitment parent = root;
    for (std::size_t i = 0; i < width; ++i) {
        if (proof.indices[i] != proof.stem[i]) {
            return false;
        }
        const Commitment& child = proof.internalChildCommitments[i];
        if (!kzg::verifyOpening(setup, parent, Scalar::fromU64(proof.indices[i]), kzg::commitmentToScalar(child),
                                proof.internalProofs[i])) {
            return false;
        }
        parent = child;
    }
    return kzg::verifyOpening(setup, parent, Scalar::fromU64(proof.leafIndex), value, proof.leafProof);
}

Bytes encodeProofCompact(const VerkleProof& proof)
{
    if (proof.stem.empty() || proof.stem.size() > 255) {
        throw ArgumentError("compact encoding needs a stem of 1..255 bytes");
    }
    Bytes out;
    out.reserve(compactProofSize(proof.stem.size()));
    out.push_back(kProofMagic);
    out.push_back(kProofVersion);
    out.push_back(static_cast<uint8_t>(proof.stem.size()));
    appendBytes(out, proof.stem);
    out.push_back(proof.leafIndex);
    for (std::size_t i = 0; i < proof.indices.size(); ++i) {
        out.push_back(proof.indices[i]);
        appendBytes(out, kzg::encodeCommitment(proof.internalChildCommitments.at(i)));
        appendBytes(out, kzg::encodeOpeningProof(proof.internalProofs.at(i)));
    }
    appendBytes(out, kzg::encodeOpeningProof(proof.leafProof));
    return out;
}

VerkleProof decodeProof(std::span<const uint8_t> bytes)
{
    Reader in(bytes);
    if (in.byte() != kProofMagic) {
        throw DecodeError("proof: bad magic");
    }
    if (uint8_t v = in.byte(); v != kProofVersion) {
        throw DecodeError("proof: unsupported version " + std::to_string(v));
    }
    const std::size_t width = in.byte();
    if (width == 0) {
        throw DecodeError("proof: empty stem");
    }
    if (bytes.size() != compactProofSize(width)) {
        throw DecodeError("proof: expected " + std::to_string(compactProofSize(width)) + " bytes for stem length " +
                          std::to_string(width) + ", got " + std::to_string(bytes.size()));
    }
    VerkleProof proof;
    auto stem = in.take(width);
    proof.stem.assign(stem.begin(), stem.end());
    proof.leafIndex = in.byte();
    for (std::size_t i = 0; i < width; ++i) {
        proof.indices.push_back(in.byte());
        proof.internalChildCommitments.push_back(kzg::decodeCommitment(in.take(64)));
        proof.internalProofs.push_back(kzg::decodeOpeningProof(in.take(64)));
    }
    proof.leafProof = kzg::decodeOpeningProof(in.take(64));
    in.finish();
    return proof;
}

Bytes encodeProofWordAligned(const VerkleProof& proof)
{
    if (proof.stem.empty() || proof.stem.size() > kMaxStemWidth) {
        throw ArgumentError("word-aligned encoding needs a stem of 1..31 bytes");
    }
    Bytes out;
    out.reserve(wordAlignedProofSize(proof.stem.size()));
    appendBytes(out, proof.stem);
    out.insert(out.end(), 32 - proof.stem.size(), 0);
    appendWord(out, proof.leafIndex);
    for (std::size_t i = 0; i < proof.indices.size(); ++i) {
        appendWord(out, proof.indices[i]);
        appendBytes(out, kzg::encodeCommitment(proof.internalChildCommitments.at(i)));
        appendBytes(out, kzg::encodeOpeningProof(proof.internalProofs.at(i)));
    }
    appendBytes(out, kzg::encodeOpeningProof(proof.leafProof));
    return out;
}

VerkleProof decodeProofWordAligned(std::span<const uint8_t> bytes)
{
    if (bytes.size() < kWordFixedBytes + kWordLevelBytes || (bytes.size() - kWordFixedBytes) % kWordLevelBytes != 0) {
        throw DecodeError("word-aligned proof: length " + std::to_string(bytes.size()) + " is not 128 + 160k");
    }
    const std::size_t width = (bytes.size() - kWordFixedBytes) / kWordLevelBytes;
    if (width > kMaxStemWidth) {
        throw DecodeError("word-aligned proof: stem wider than 31 bytes");
    }
    Reader in(bytes);
    VerkleProof proof;
    auto stemWord = in.take(32);
    if (!std::all_of(stemWord.begin() + static_cast<std::ptrdiff_t>(width), stemWord.end(),
                     [](uint8_t b) { return b == 0; })) {
        throw DecodeError("word-aligned proof: stem padding is not zero");
    }
    proof.stem.assign(stemWord.begin(), stemWord.begin() + static_cast<std::ptrdiff_t>(width));
    proof.leafIndex = in.wordByte();
    for (std::size_t i = 0; i < width; ++i) {
        proof.indices.push_back(in.wordByte());
        proof.internalChildCommitments.push_back(kzg::decodeCommitment(in.take(64)));
        proof.internalProofs.push_back(kzg::decodeOpeningProof(in.take(64)));
    }
    proof.leafProof = kzg::decodeOpeningProof(in.take(64));
    in.finish();
    return proof;
}

} // namespace verkle::tree
