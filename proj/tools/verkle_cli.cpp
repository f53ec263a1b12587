#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "verkle/errors.hpp"
#include "verkle/gas_model.hpp"
#include "verkle/harness.hpp"
#include "verkle/merkle.hpp"
#include "verkle/verkle_tree.hpp"

using namespace verkle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

const std::string kDefaultSetupSeed = harness::BenchConfig{}.setupSeed;
constexpr std::size_t kSetupDegree = tree::kBranchingFactor - 1;
constexpr char kTreeMagic[4] = {'V', 'K', 'T', 'R'};

struct Globals {
    std::optional<uint64_t> seed;
    std::string paramsPath;
};

gas::GasParams loadParams(const Globals& g)
{
    return g.paramsPath.empty() ? gas::GasParams{} : gas::GasParams::parse(harness::readTextFile(g.paramsPath));
}

kzg::TrustedSetup loadSetup(const std::string& path)
{
    if (path.empty())
        return kzg::TrustedSetup::generate(Bytes(kDefaultSetupSeed.begin(), kDefaultSetupSeed.end()), kSetupDegree);
    return kzg::TrustedSetup::decode(harness::readFile(path));
}

std::shared_ptr<const kzg::CommitmentKey> loadKey(const std::string& path)
{
    return harness::makeCommitmentKey(loadSetup(path));
}

bool isVerkleTreeFile(const Bytes& b) { return b.size() >= 4 && std::equal(kTreeMagic, kTreeMagic + 4, b.begin()); }

std::vector<Bytes> loadEntries(const std::string& input, const Globals& g)
{
    const std::string prefix = "generated:";
    if (input.rfind(prefix, 0) == 0) {
        const std::string count = input.substr(prefix.size());
        std::size_t used = 0;
        unsigned long long n = 0;
        try {
            n = std::stoull(count, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != count.size() || n == 0)
            throw ArgumentError("--input generated:N needs a positive integer");
        return harness::generateDataset(n, g.seed.value_or(1));
    }
    std::vector<Bytes> out;
    std::istringstream lines(harness::readTextFile(input));
    for (std::string line; std::getline(lines, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty())
            out.push_back(fromHex(line));
    }
    if (out.empty())
        throw ArgumentError("input has no entries");
    return out;
}

int runSetup(const std::string& seed, std::size_t maxDegree, const std::string& out)
{
    if (maxDegree < 1 || maxDegree > kzg::kMaxSetupDegree)
        throw ArgumentError("--max-degree must be in [1, " + std::to_string(kzg::kMaxSetupDegree) + "]");
    auto setup = kzg::TrustedSetup::generate(Bytes(seed.begin(), seed.end()), maxDegree);
    harness::writeFile(out, setup.encode());
    std::cout << "wrote setup of degree " << maxDegree << " to " << out << "\n";
    return kExitOk;
}

int runBuild(const std::string& kind, const std::string& input, std::optional<std::size_t> stemWidth,
             const std::string& out, const std::string& setupPath, const Globals& g)
{
    auto entries = loadEntries(input, g);
    if (kind == "merkle") {
        auto t = merkle::MerkleTree::build(entries);
        harness::writeFile(out, t.exportLeafDigests());
        std::cout << "root " << toHex(t.root()) << "\nleaves " << t.leafCount() << "\n";
        return kExitOk;
    }
    tree::TreeConfig config{tree::kBranchingFactor, stemWidth.value_or(harness::defaultStemWidth(entries.size()))};
    config.validate();
    tree::VerkleTree t(config, loadKey(setupPath));
    for (const auto& raw : entries)
        t.insert(tree::deriveKey(raw, config), harness::entryValue(raw));
    auto root = t.commitTree();
    harness::writeFile(out, harness::encodeVerkleTreeFile(t));
    std::cout << "root " << toHex(kzg::encodeCommitment(root)) << "\nentries " << t.size() << "\n";
    return kExitOk;
}

int runProve(const std::string& treePath, const std::string& keyHex, const std::string& encoding, const std::string& out,
             const std::string& setupPath)
{
    Bytes raw = fromHex(keyHex);
    Bytes file = harness::readFile(treePath);
    if (!isVerkleTreeFile(file)) {
        auto t = merkle::MerkleTree::fromLeafDigests(merkle::decodeLeafDigests(file));
        const auto leaf = merkle::hashLeaf(raw);
        const auto& digests = t.levels().front();
        auto it = std::find(digests.begin(), digests.end(), leaf);
        if (it == digests.end())
            throw NotFoundError("key is not a member of the tree");
        auto proof = t.getProof(static_cast<std::size_t>(it - digests.begin()));
        harness::writeFile(out, merkle::encodeProof(proof));
        std::cout << "root " << toHex(t.root()) << "\n";
        return kExitOk;
    }
    auto t = harness::decodeVerkleTreeFile(file, loadKey(setupPath));
    auto root = t.commitTree();
    auto key = tree::deriveKey(raw, t.config());
    auto proof = t.generateProof(key);
    harness::writeFile(out, encoding == "word" ? tree::encodeProofWordAligned(proof) : tree::encodeProofCompact(proof));
    std::cout << "root " << toHex(kzg::encodeCommitment(root)) << "\nvalue " << toHex(t.get(key)->toBytes()) << "\n";
    return kExitOk;
}

tree::VerkleProof decodeEitherEncoding(const Bytes& bytes)
{
    try {
        return tree::decodeProof(bytes);
    } catch (const DecodeError&) {
        return tree::decodeProofWordAligned(bytes);
    }
}

int runVerify(const std::string& rootHex, const std::string& keyHex, const std::string& valueHex,
              const std::string& proofPath, const std::string& setupPath)
{
    Bytes root = fromHex(rootHex);
    Bytes raw = fromHex(keyHex);
    Bytes proofBytes = harness::readFile(proofPath);
    bool ok = false;
    if (root.size() == 32) {
        merkle::MerkleProof proof = merkle::decodeProof(proofBytes);
        Digest32 r{};
        std::copy(root.begin(), root.end(), r.begin());
        ok = !raw.empty() && merkle::verifyProof(r, raw, proof);
    } else if (root.size() == 64) {
        if (valueHex.empty())
            throw ArgumentError("--value is required for verkle proofs");
        kzg::Commitment c = kzg::decodeCommitment(root);
        kzg::Scalar value = kzg::decodeScalar(fromHex(valueHex));
        tree::VerkleProof proof = decodeEitherEncoding(proofBytes);
        tree::TreeConfig config{tree::kBranchingFactor, proof.stem.size()};
        config.validate();
        ok = tree::verifyProofLocal(loadSetup(setupPath), c, tree::deriveKey(raw, config), value, proof);
    } else {
        throw ArgumentError("--root must be 32 bytes (merkle) or 64 bytes (verkle)");
    }
    std::cout << (ok ? "verified" : "not verified") << "\n";
    return ok ? kExitOk : kExitRejected;
}

int runBench(const std::string& configPath, const Globals& g)
{
    auto config = harness::BenchConfig::parse(harness::readTextFile(configPath));
    if (g.seed)
        config.seed = *g.seed;
    if (!g.paramsPath.empty())
        config.params = loadParams(g);
    config.validate();
    auto report = harness::runBenchmark(config);
    std::string text = harness::formatReport(report, config.outputFormat);
    if (config.outputPath.empty())
        std::cout << text;
    else
        harness::writeFile(config.outputPath, text);
    return kExitOk;
}

int runCrossover(uint64_t capMin, uint64_t capMax, uint64_t k, const std::string& out, const std::string& format,
                 const Globals& g)
{
    auto rows = gas::crossoverSeries(capMin, capMax, k, loadParams(g));
    std::string text = format == "json" ? gas::crossoverToJson(rows) : gas::crossoverToCsv(rows);
    if (out.empty() || out == "-")
        std::cout << text;
    else
        harness::writeFile(out, text);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verkle and Merkle tree proofs, benchmarks and gas estimates", "verkle-cli"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "PRNG seed for generated datasets and benchmarks");
    app.add_option("--params", g.paramsPath, "Gas parameter file (name=value lines)");

    auto* setup = app.add_subcommand("setup", "Generate a test-grade KZG setup file");
    std::string setupSeed = kDefaultSetupSeed;
    std::size_t maxDegree = kSetupDegree;
    std::string setupOut;
    setup->add_option("--seed", setupSeed, "Seed text hashed into the secret");
    setup->add_option("--max-degree", maxDegree, "Largest committable degree");
    setup->add_option("--out", setupOut, "Output file")->required();

    auto* build = app.add_subcommand("build", "Build a tree and write it to a file");
    std::string kind = "verkle";
    std::string input;
    std::optional<std::size_t> stemWidth;
    std::string buildOut;
    std::string buildSetup;
    build->add_option("--kind", kind)->check(CLI::IsMember({"verkle", "merkle"}));
    build->add_option("--input", input, "Hex entries, one per line, or generated:N")->required();
    build->add_option("--stem-width", stemWidth, "Verkle stem bytes (default from entry count)");
    build->add_option("--out", buildOut)->required();
    build->add_option("--setup", buildSetup, "Setup file (default: built-in test seed)");

    auto* prove = app.add_subcommand("prove", "Write a membership proof for one key");
    std::string treePath, proveKey, proveOut, proveSetup;
    std::string encoding = "compact";
    prove->add_option("--tree", treePath)->required();
    prove->add_option("--key", proveKey, "Raw entry in hex")->required();
    prove->add_option("--encoding", encoding)->check(CLI::IsMember({"compact", "word"}));
    prove->add_option("--out", proveOut)->required();
    prove->add_option("--setup", proveSetup);

    auto* verify = app.add_subcommand("verify", "Check a proof: exit 0 verified, 1 not verified, 2 malformed");
    std::string rootHex, verifyKey, valueHex, proofPath, verifySetup;
    verify->add_option("--root", rootHex)->required();
    verify->add_option("--key", verifyKey, "Raw entry in hex")->required();
    verify->add_option("--value", valueHex, "Stored scalar in hex (verkle)");
    verify->add_option("--proof", proofPath)->required();
    verify->add_option("--setup", verifySetup);

    auto* bench = app.add_subcommand("bench", "Run the benchmark described by a config file");
    std::string configPath;
    bench->add_option("--config", configPath)->required();

    auto* crossover = app.add_subcommand("crossover", "Export modeled total gas per power-of-two capacity");
    uint64_t capMin = 8, capMax = harness::kLargestCapacity, k = tree::kBranchingFactor;
    std::string crossOut;
    std::string format = "csv";
    crossover->add_option("--min", capMin);
    crossover->add_option("--max", capMax);
    crossover->add_option("--k", k, "Verkle branching factor");
    crossover->add_option("--out", crossOut, "Output file (default stdout)");
    crossover->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*setup)
            return runSetup(setupSeed, maxDegree, setupOut);
        if (*build)
            return runBuild(kind, input, stemWidth, buildOut, buildSetup, g);
        if (*prove)
            return runProve(treePath, proveKey, encoding, proveOut, proveSetup);
        if (*verify)
            return runVerify(rootHex, verifyKey, valueHex, proofPath, verifySetup);
        if (*bench)
            return runBench(configPath, g);
        return runCrossover(capMin, capMax, k, crossOut, format, g);
    } catch (const harness::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const harness::BenchFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
