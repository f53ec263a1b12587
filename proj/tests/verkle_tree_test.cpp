#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "test_support.hpp"
#include "verkle/errors.hpp"
#include "verkle/verkle_tree.hpp"

using namespace verkle;
using namespace verkle::tree;
using verkle::testing::sharedKey;

namespace {

VerkleTree populated(std::size_t stemWidth, std::size_t n, uint64_t seed)
{
    VerkleTree t(TreeConfig{.stemWidth = stemWidth}, sharedKey());
    for (const auto& raw : harness::generateDataset(n, seed))
        t.insert(deriveKey(raw, t.config()), harness::entryValue(raw));
    return t;
}

} // namespace

TEST(TreeConfig, CapacityAndValidation)
{
    EXPECT_EQ(TreeConfig{.stemWidth = 1}.capacity(), 65536U);
    EXPECT_EQ(TreeConfig{.stemWidth = 2}.levels(), 3U);
    EXPECT_THROW(TreeConfig{.stemWidth = 8}.capacity(), ConfigError);
    EXPECT_THROW(TreeConfig{.stemWidth = 0}.validate(), ConfigError);
    EXPECT_THROW((TreeConfig{.branchingFactor = 16, .stemWidth = 1}.validate()), ConfigError);
    EXPECT_NO_THROW(TreeConfig{.stemWidth = 31}.validate());
}

TEST(VerkleTree, DeriveKeyUsesDigestBytes)
{
    Bytes raw = fromHex("000000000000000000000000000000000000002a");
    auto d = keccak256(raw);
    VerkleKey k = deriveKey(raw, TreeConfig{.stemWidth = 2});
    EXPECT_EQ(k.stem, (Bytes{d[0], d[1]}));
    EXPECT_EQ(k.leafIndex, d[2]);
}

TEST(VerkleTree, SingleEntryRootMatchesOracle)
{
    Bytes raw = fromHex("000000000000000000000000000000000000002a");
    VerkleTree t(TreeConfig{}, sharedKey());
    VerkleKey k = deriveKey(raw, t.config());
    EXPECT_EQ(k.stem, Bytes{0xeb});
    EXPECT_EQ(k.leafIndex, 136);
    t.insert(k, kzg::hashToScalar(raw));
    Commitment root = t.commitTree();
    EXPECT_EQ(toHex(kzg::encodeCommitment(root)),
              "02083a573dad58d502f162a7c188e9daabbbed68e40e58cb6002b5becdbb451d"
              "0690870809f662c3c90d2e3fc7fd623f66badf1ed4aaa0969f882cacfb07a527");
    VerkleProof p = t.generateProof(k);
    ASSERT_EQ(p.internalChildCommitments.size(), 1U);
    EXPECT_EQ(toHex(kzg::encodeCommitment(p.internalChildCommitments[0])),
              "2cf0fc4a6d837bdafff86b10532cde88dc0bff091057e12fb341f24ee7e8140e"
              "2b841f2b2d48590b4d67208f9093837ab4c6cf1df543c254f4f7a029a77c9301");
}

TEST(VerkleTree, InsertGetAndOverwrite)
{
    VerkleTree t(TreeConfig{}, sharedKey());
    VerkleKey k{{0x01}, 5};
    EXPECT_FALSE(t.get(k).has_value());
    t.insert(k, Scalar::fromU64(3));
    t.insert(k, Scalar::fromU64(4));
    EXPECT_EQ(t.size(), 1U);
    EXPECT_EQ(t.get(k), Scalar::fromU64(4));
    EXPECT_THROW(t.insert(k, Scalar::zero()), ArgumentError);
    EXPECT_THROW(t.insert(VerkleKey{{0x01, 0x02}, 0}, Scalar::one()), ArgumentError);
}

TEST(VerkleTree, EmptyTreeRootIsIdentity)
{
    VerkleTree t(TreeConfig{}, sharedKey());
    EXPECT_TRUE(t.commitTree().point.isIdentity());
}

TEST(VerkleTree, CommitRequiredBeforeProofs)
{
    VerkleTree t(TreeConfig{}, sharedKey());
    VerkleKey k{{0x01}, 5};
    t.insert(k, Scalar::one());
    EXPECT_FALSE(t.isCommitted());
    EXPECT_THROW(t.generateProof(k), std::logic_error);
    EXPECT_THROW(t.root(), std::logic_error);
    t.commitTree();
    EXPECT_THROW(t.generateProof(VerkleKey{{0x02}, 5}), NotFoundError);
}

TEST(VerkleTree, InsertionOrderIndependent)
{
    auto data = harness::generateDataset(40, 77);
    VerkleTree a(TreeConfig{.stemWidth = 2}, sharedKey());
    VerkleTree b(TreeConfig{.stemWidth = 2}, sharedKey());
    for (const auto& raw : data)
        a.insert(deriveKey(raw, a.config()), harness::entryValue(raw));
    std::reverse(data.begin(), data.end());
    for (const auto& raw : data)
        b.insert(deriveKey(raw, b.config()), harness::entryValue(raw));
    EXPECT_EQ(a.commitTree(), b.commitTree());
}

TEST(VerkleTree, ParallelCommitMatchesReference)
{
    VerkleTree t = populated(2, 30, 3);
    EXPECT_EQ(t.commitTree(), t.commitTreeReference());
}

TEST(VerkleTree, IncrementalRecommit)
{
    VerkleTree t = populated(1, 16, 4);
    t.commitTree();
    t.insert(VerkleKey{{0x33}, 9}, Scalar::fromU64(99));
    EXPECT_FALSE(t.isCommitted());
    Commitment incremental = t.commitTree();
    EXPECT_EQ(incremental, t.commitTreeReference());
}

TEST(VerkleTree, ProofsVerifyWithConstantShape)
{
    for (std::size_t w : {1U, 2U}) {
        VerkleTree t = populated(w, 24, 5);
        Commitment root = t.commitTree();
        for (const auto& [key, value] : t.entries()) {
            VerkleProof p = t.generateProof(key);
            EXPECT_EQ(p.internalProofs.size(), w);
            EXPECT_EQ(p.internalChildCommitments.size(), w);
            EXPECT_EQ(p.indices, key.stem);
            EXPECT_TRUE(verifyProofLocal(t.commitmentKey().setup(), root, key, value, p));
            EXPECT_EQ(encodeProofWordAligned(p).size(), wordAlignedProofSize(w));
            EXPECT_EQ(encodeProofCompact(p).size(), compactProofSize(w));
        }
    }
}

TEST(VerkleTree, ConcurrentProofGeneration)
{
    VerkleTree t = populated(1, 12, 6);
    t.commitTree();
    auto entries = t.entries();
    std::vector<VerkleProof> serial;
    for (const auto& e : entries)
        serial.push_back(t.generateProof(e.first));
    std::vector<VerkleProof> threaded(entries.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < entries.size(); ++i)
        pool.emplace_back([&, i] { threaded[i] = t.generateProof(entries[i].first); });
    for (auto& th : pool)
        th.join();
    EXPECT_EQ(serial, threaded);
}

TEST(VerkleTree, TamperedInputsRejected)
{
    VerkleTree t = populated(2, 10, 8);
    Commitment root = t.commitTree();
    const auto& setup = t.commitmentKey().setup();
    auto [key, value] = t.entries().front();
    VerkleProof p = t.generateProof(key);

    EXPECT_FALSE(verifyProofLocal(setup, root, key, value + Scalar::one(), p));
    VerkleKey otherLeaf = key;
    otherLeaf.leafIndex ^= 1;
    EXPECT_FALSE(verifyProofLocal(setup, root, otherLeaf, value, p));
    VerkleKey otherStem = key;
    otherStem.stem[1] ^= 1;
    EXPECT_FALSE(verifyProofLocal(setup, root, otherStem, value, p));
    EXPECT_FALSE(verifyProofLocal(setup, Commitment{bn254::g1Generator()}, key, value, p));
    VerkleProof q = p;
    q.internalChildCommitments[1] = Commitment{bn254::g1Generator()};
    EXPECT_FALSE(verifyProofLocal(setup, root, key, value, q));
    q = p;
    q.leafProof = p.internalProofs[0];
    EXPECT_FALSE(verifyProofLocal(setup, root, key, value, q));
}

TEST(VerkleTree, MalformedProofShape)
{
    VerkleTree t = populated(2, 4, 9);
    Commitment root = t.commitTree();
    auto [key, value] = t.entries().front();
    VerkleProof p = t.generateProof(key);
    p.internalProofs.pop_back();
    EXPECT_THROW(verifyProofLocal(t.commitmentKey().setup(), root, key, value, p), MalformedProofError);
}

TEST(ProofCodec, SizesPerLevel)
{
    EXPECT_EQ(compactProofSize(1), 198U);
    EXPECT_EQ(wordAlignedProofSize(1), 288U);
    for (std::size_t w = 1; w < 6; ++w) {
        EXPECT_EQ(wordAlignedProofSize(w + 1) - wordAlignedProofSize(w), 160U);
        EXPECT_EQ(compactProofSize(w + 1) - compactProofSize(w), 130U);
    }
}

TEST(ProofCodec, RoundTripBothEncodings)
{
    VerkleTree t = populated(2, 6, 10);
    t.commitTree();
    for (const auto& [key, value] : t.entries()) {
        VerkleProof p = t.generateProof(key);
        EXPECT_EQ(decodeProof(encodeProofCompact(p)), p);
        EXPECT_EQ(decodeProofWordAligned(encodeProofWordAligned(p)), p);
    }
}

TEST(ProofCodec, RejectsTruncatedAndTrailing)
{
    VerkleTree t = populated(1, 3, 11);
    t.commitTree();
    VerkleProof p = t.generateProof(t.entries().front().first);
    Bytes compact = encodeProofCompact(p);
    for (std::size_t cut : {0U, 1U, 3U, 100U, 197U})
        EXPECT_THROW(decodeProof(std::span(compact).first(cut)), DecodeError) << cut;
    Bytes longer = compact;
    longer.push_back(0);
    EXPECT_THROW(decodeProof(longer), DecodeError);
    Bytes badMagic = compact;
    badMagic[0] = 0;
    EXPECT_THROW(decodeProof(badMagic), DecodeError);
    Bytes word = encodeProofWordAligned(p);
    EXPECT_THROW(decodeProofWordAligned(std::span(word).first(287)), DecodeError);
}
