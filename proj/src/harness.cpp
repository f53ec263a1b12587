#include "verkle/harness.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "verkle/errors.hpp"
#include "verkle/merkle.hpp"

namespace verkle::harness {

namespace {

using Clock = std::chrono::steady_clock;

double millisSince(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr std::array<uint8_t, 4> kTreeMagic{'V', 'K', 'T', 'R'};
constexpr uint8_t kTreeVersion = 0x01;
constexpr std::size_t kAddressBytes = 20;

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <typename T>
T parseNumber(std::string_view text, std::string_view what)
{
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("bench config: '" + std::string(text) + "' is not a valid " + std::string(what));
    }
    return v;
}

template <typename T>
std::vector<T> parseList(std::string_view text, std::string_view what)
{
    std::vector<T> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        out.push_back(parseNumber<T>(trim(text.substr(0, comma)), what));
        if (comma == std::string_view::npos) {
            break;
        }
        text = text.substr(comma + 1);
    }
    return out;
}

bool parseBool(std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ArgumentError("bench config: '" + std::string(text) + "' is not a boolean");
}

struct SampleTiming {
    double proveMs = 0;
    double verifyMs = 0;
    std::size_t compactBytes = 0;
    std::size_t wordBytes = 0;
    bool ok = false;
};

double mean(const std::vector<SampleTiming>& xs, double SampleTiming::*field)
{
    if (xs.empty()) {
        return 0;
    }
    double total = 0;
    for (const auto& x : xs) {
        total += x.*field;
    }
    return total / static_cast<double>(xs.size());
}

std::vector<std::size_t> sampleIndices(std::size_t population, std::size_t count, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, population - 1);
    std::vector<std::size_t> out(count);
    for (auto& i : out) {
        i = pick(rng);
    }
    return out;
}

std::string failure(std::string_view structure, uint64_t capacity, std::size_t sample, std::string_view why)
{
    std::ostringstream msg;
    msg << structure << " proof failed at capacity " << capacity << ", sample " << sample << ": " << why;
    return msg.str();
}

BenchRow runMerkleCell(uint64_t capacity, const std::vector<Bytes>& dataset, const BenchConfig& config)
{
    BenchRow row;
    row.structure = "merkle";
    row.capacity = capacity;

    auto start = Clock::now();
    merkle::MerkleTree tree = merkle::MerkleTree::build(dataset);
    row.buildMs = millisSince(start);
    row.root = toHex(tree.root());

    auto picks = sampleIndices(dataset.size(), config.samplesPerCapacity, config.seed ^ (capacity * 0x9e3779b97f4a7c15ULL));
    std::vector<SampleTiming> timings(picks.size());
    for (std::size_t s = 0; s < picks.size(); ++s) {
        auto t0 = Clock::now();
        merkle::MerkleProof proof = tree.getProof(picks[s]);
        timings[s].proveMs = millisSince(t0);
        Bytes encoded = merkle::encodeProof(proof);
        auto t1 = Clock::now();
        timings[s].ok = merkle::verifyProof(tree.root(), dataset[picks[s]], merkle::decodeProof(encoded));
        timings[s].verifyMs = millisSince(t1);
        timings[s].compactBytes = encoded.size();
        timings[s].wordBytes = encoded.size();
        if (!timings[s].ok) {
            throw BenchFailure(failure("merkle", capacity, s, "verification returned false"));
        }
        row.proofBytesCompact = std::max(row.proofBytesCompact, encoded.size());
    }
    row.proofBytesWord = row.proofBytesCompact;
    row.levels = gas::ceilLog(capacity, 2);
    row.calldataGas = gas::estimateMerkleCalldata(row.levels, config.params);
    row.totalGas = gas::merkleTotalGas(capacity, config.params);
    row.internalProofs = 0;
    row.childCommitments = row.proofBytesCompact / 32;
    row.leafProofs = 0;
    row.samples = picks.size();
    row.verified = picks.size();
    row.proveMsMean = mean(timings, &SampleTiming::proveMs);
    row.verifyMsMean = mean(timings, &SampleTiming::verifyMs);
    return row;
}

BenchRow runVerkleCell(uint64_t capacity, std::size_t stemWidth, const std::vector<Bytes>& dataset,
                       const BenchConfig& config, const std::shared_ptr<const kzg::CommitmentKey>& key)
{
    BenchRow row;
    row.structure = "verkle";
    row.capacity = capacity;

    tree::TreeConfig treeConfig{tree::kBranchingFactor, stemWidth};
    std::vector<tree::VerkleKey> keys;
    std::vector<kzg::Scalar> values;
    keys.reserve(dataset.size());
    values.reserve(dataset.size());

    auto start = Clock::now();
    tree::VerkleTree tree(treeConfig, key);
    for (const auto& raw : dataset) {
        keys.push_back(tree::deriveKey(raw, treeConfig));
        values.push_back(entryValue(raw));
        tree.insert(keys.back(), values.back());
    }
    const kzg::Commitment root = tree.commitTree();
    row.buildMs = millisSince(start);
    row.root = toHex(kzg::encodeCommitment(root));
    row.overwrittenKeys = dataset.size() - tree.size();

    // entries whose slot still holds their own value (a later colliding entry overwrites)
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (tree.get(keys[i]) == values[i]) {
            members.push_back(i);
        }
    }
    auto picks = sampleIndices(members.size(), config.samplesPerCapacity, config.seed ^ (capacity * 0xc2b2ae3d27d4eb4fULL));
    for (auto& p : picks) {
        p = members[p];
    }

    std::vector<SampleTiming> timings(picks.size());
    std::vector<std::string> errors(picks.size());
    const auto count = static_cast<std::ptrdiff_t>(picks.size());
    const auto& setup = key->setup();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t si = 0; si < count; ++si) {
        const auto s = static_cast<std::size_t>(si);
        const std::size_t entry = picks[s];
        try {
            auto t0 = Clock::now();
            tree::VerkleProof proof = tree.generateProof(keys[entry]);
            timings[s].proveMs = millisSince(t0);

            Bytes compact = tree::encodeProofCompact(proof);
            Bytes word = tree::encodeProofWordAligned(proof);
            timings[s].compactBytes = compact.size();
            timings[s].wordBytes = word.size();
            if (tree::decodeProof(compact) != proof || tree::decodeProofWordAligned(word) != proof) {
                errors[s] = "encoding roundtrip mismatch";
                continue;
            }
            auto t1 = Clock::now();
            timings[s].ok = tree::verifyProofLocal(setup, root, keys[entry], values[entry], tree::decodeProof(compact));
            timings[s].verifyMs = millisSince(t1);
            if (!timings[s].ok) {
                errors[s] = "verification returned false";
            }
        } catch (const std::exception& e) {
            errors[s] = e.what();
        }
    }
    for (std::size_t s = 0; s < picks.size(); ++s) {
        if (!errors[s].empty()) {
            throw BenchFailure(failure("verkle", capacity, s, errors[s]));
        }
        if (timings[s].compactBytes != timings[0].compactBytes || timings[s].wordBytes != timings[0].wordBytes) {
            throw BenchFailure(failure("verkle", capacity, s, "proof size differs between samples"));
        }
    }

    row.levels = treeConfig.levels();
    row.proofBytesCompact = tree::compactProofSize(stemWidth);
    row.proofBytesWord = tree::wordAlignedProofSize(stemWidth);
    if (!timings.empty() && (timings[0].compactBytes != row.proofBytesCompact || timings[0].wordBytes != row.proofBytesWord)) {
        throw BenchFailure(failure("verkle", capacity, 0, "encoded size disagrees with the format definition"));
    }
    const gas::GasEstimate estimate = gas::estimateVerkle(row.levels, config.params);
    row.calldataGas = estimate.calldataGas;
    row.totalGas = estimate.totalGas;
    row.internalProofs = stemWidth;
    row.childCommitments = stemWidth;
    row.leafProofs = 1;
    row.samples = picks.size();
    row.verified = static_cast<std::size_t>(std::count_if(timings.begin(), timings.end(), [](const auto& t) { return t.ok; }));
    row.proveMsMean = mean(timings, &SampleTiming::proveMs);
    row.verifyMsMean = mean(timings, &SampleTiming::verifyMs);
    return row;
}

std::string fixed3(double v)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v;
    return out.str();
}

} // namespace

BenchConfig BenchConfig::parse(std::string_view text)
{
    BenchConfig config;
    std::string gasLines;
    std::size_t lineNo = 0;
    while (!text.empty()) {
        ++lineNo;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ArgumentError("bench config line " + std::to_string(lineNo) + ": expected name=value");
        }
        std::string_view name = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (name == "capacities") {
            config.capacities = parseList<uint64_t>(value, "capacity");
        } else if (name == "include_2_20") {
            config.includeLargest = parseBool(value);
        } else if (name == "stem_widths") {
            config.stemWidths = parseList<std::size_t>(value, "stem width");
        } else if (name == "seed") {
            config.seed = parseNumber<uint64_t>(value, "seed");
        } else if (name == "samples") {
            config.samplesPerCapacity = parseNumber<std::size_t>(value, "sample count");
        } else if (name == "setup_seed") {
            config.setupSeed = std::string(value);
        } else if (name == "output") {
            config.outputPath = std::string(value);
        } else if (name == "format") {
            if (value == "csv") {
                config.outputFormat = OutputFormat::Csv;
            } else if (value == "json") {
                config.outputFormat = OutputFormat::Json;
            } else {
                throw ArgumentError("bench config: format must be csv or json");
            }
        } else {
            gasLines.append(line).push_back('\n');
        }
    }
    config.params = gas::GasParams::parse(gasLines);
    config.validate();
    return config;
}

std::vector<uint64_t> BenchConfig::effectiveCapacities() const
{
    std::vector<uint64_t> caps = capacities;
    if (includeLargest && (caps.empty() || caps.back() < kLargestCapacity)) {
        caps.push_back(kLargestCapacity);
    }
    return caps;
}

void BenchConfig::validate() const
{
    auto caps = effectiveCapacities();
    if (caps.empty()) {
        throw ArgumentError("bench config: no capacities");
    }
    if (caps.front() < 1 || !std::is_sorted(caps.begin(), caps.end()) ||
        std::adjacent_find(caps.begin(), caps.end()) != caps.end()) {
        throw ArgumentError("bench config: capacities must be >= 1 and strictly ascending");
    }
    if (samplesPerCapacity < 1) {
        throw ArgumentError("bench config: samples must be >= 1");
    }
    if (!stemWidths.empty() && stemWidths.size() != caps.size()) {
        throw ArgumentError("bench config: stem_widths needs one entry per capacity");
    }
    for (std::size_t w : stemWidths) {
        tree::TreeConfig{tree::kBranchingFactor, w}.validate();
    }
}

std::size_t defaultStemWidth(uint64_t capacity)
{
    return std::max<std::size_t>(1, gas::ceilLog(capacity, tree::kBranchingFactor) - 1);
}

std::vector<Bytes> generateDataset(std::size_t n, uint64_t seed)
{
    if (n < 1) {
        throw ArgumentError("generateDataset: n must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<Bytes> out;
    out.reserve(n);
    std::unordered_set<std::string> seen;
    seen.reserve(n);
    while (out.size() < n) {
        Bytes address(kAddressBytes);
        for (std::size_t i = 0; i < kAddressBytes; i += 8) {
            uint64_t word = rng();
            for (std::size_t b = 0; b < 8 && i + b < kAddressBytes; ++b) {
                address[i + b] = static_cast<uint8_t>(word >> (8 * b));
            }
        }
        if (seen.emplace(address.begin(), address.end()).second) {
            out.push_back(std::move(address));
        }
    }
    return out;
}

kzg::Scalar entryValue(std::span<const uint8_t> raw)
{
    kzg::Scalar v = kzg::hashToScalar(raw);
    if (v.isZero()) {
        throw ArgumentError("entry hashes to the reserved zero value");
    }
    return v;
}

BenchReport runBenchmark(const BenchConfig& config, std::shared_ptr<const kzg::CommitmentKey> key)
{
    config.validate();
    BenchReport report;
    const auto caps = config.effectiveCapacities();
    for (std::size_t ci = 0; ci < caps.size(); ++ci) {
        const uint64_t capacity = caps[ci];
        const std::size_t stemWidth = config.stemWidths.empty() ? defaultStemWidth(capacity) : config.stemWidths[ci];
        const std::vector<Bytes> dataset = generateDataset(capacity, config.seed);
        report.rows.push_back(runMerkleCell(capacity, dataset, config));
        report.rows.push_back(runVerkleCell(capacity, stemWidth, dataset, config, key));
    }
    return report;
}

BenchReport runBenchmark(const BenchConfig& config) { return runBenchmark(config, makeCommitmentKey(config.setupSeed)); }

std::string reportToCsv(const BenchReport& report)
{
    std::ostringstream out;
    out << "structure,capacity,levels,build_ms,prove_ms_mean,verify_ms_mean,proof_bytes_compact,proof_bytes_word,"
           "calldata_gas,total_gas\n";
    for (const auto& r : report.rows) {
        out << r.structure << ',' << r.capacity << ',' << r.levels << ',' << fixed3(r.buildMs) << ','
            << fixed3(r.proveMsMean) << ',' << fixed3(r.verifyMsMean) << ',' << r.proofBytesCompact << ','
            << r.proofBytesWord << ',' << r.calldataGas << ',' << r.totalGas << '\n';
    }
    return out.str();
}

std::string reportToJson(const BenchReport& report)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        arr.push_back({{"structure", r.structure},
                       {"capacity", r.capacity},
                       {"levels", r.levels},
                       {"build_ms", r.buildMs},
                       {"prove_ms_mean", r.proveMsMean},
                       {"verify_ms_mean", r.verifyMsMean},
                       {"proof_bytes_compact", r.proofBytesCompact},
                       {"proof_bytes_word", r.proofBytesWord},
                       {"calldata_gas", r.calldataGas},
                       {"total_gas", r.totalGas},
                       {"internal_proofs", r.internalProofs},
                       {"child_commitments", r.childCommitments},
                       {"leaf_proofs", r.leafProofs},
                       {"samples", r.samples},
                       {"verified", r.verified},
                       {"overwritten_keys", r.overwrittenKeys},
                       {"root", r.root}});
    }
    return arr.dump(2) + "\n";
}

std::string formatReport(const BenchReport& report, OutputFormat format)
{
    return format == OutputFormat::Csv ? reportToCsv(report) : reportToJson(report);
}

std::shared_ptr<const kzg::CommitmentKey> makeCommitmentKey(std::string_view seed)
{
    const auto* data = reinterpret_cast<const uint8_t*>(seed.data());
    return makeCommitmentKey(
        kzg::TrustedSetup::generate(std::span<const uint8_t>(data, seed.size()), tree::kBranchingFactor - 1));
}

std::shared_ptr<const kzg::CommitmentKey> makeCommitmentKey(kzg::TrustedSetup setup)
{
    return std::make_shared<const kzg::CommitmentKey>(std::move(setup), tree::kBranchingFactor);
}

Bytes encodeVerkleTreeFile(const tree::VerkleTree& tree)
{
    Bytes out(kTreeMagic.begin(), kTreeMagic.end());
    out.push_back(kTreeVersion);
    out.push_back(static_cast<uint8_t>(tree.config().stemWidth));
    auto entries = tree.entries();
    auto count = static_cast<uint32_t>(entries.size());
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<uint8_t>(count >> shift));
    }
    for (const auto& [key, value] : entries) {
        out.insert(out.end(), key.stem.begin(), key.stem.end());
        out.push_back(key.leafIndex);
        auto v = kzg::encodeScalar(value);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

tree::VerkleTree decodeVerkleTreeFile(std::span<const uint8_t> bytes, std::shared_ptr<const kzg::CommitmentKey> key)
{
    constexpr std::size_t kHeader = 4 + 1 + 1 + 4;
    if (bytes.size() < kHeader || !std::equal(kTreeMagic.begin(), kTreeMagic.end(), bytes.begin())) {
        throw DecodeError("tree file: bad magic");
    }
    if (bytes[4] != kTreeVersion) {
        throw DecodeError("tree file: unsupported version");
    }
    const std::size_t stemWidth = bytes[5];
    uint32_t count = 0;
    for (std::size_t i = 6; i < 10; ++i) {
        count = (count << 8) | bytes[i];
    }
    const std::size_t record = stemWidth + 1 + 32;
    if (bytes.size() != kHeader + std::size_t{count} * record) {
        throw DecodeError("tree file: length does not match entry count");
    }
    tree::TreeConfig config{tree::kBranchingFactor, stemWidth};
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw DecodeError(std::string("tree file: ") + e.what());
    }
    tree::VerkleTree tree(config, std::move(key));
    std::size_t off = kHeader;
    for (uint32_t i = 0; i < count; ++i, off += record) {
        tree::VerkleKey k;
        k.stem.assign(bytes.begin() + static_cast<std::ptrdiff_t>(off),
                      bytes.begin() + static_cast<std::ptrdiff_t>(off + stemWidth));
        k.leafIndex = bytes[off + stemWidth];
        kzg::Scalar v = kzg::decodeScalar(bytes.subspan(off + stemWidth + 1, 32));
        if (v.isZero()) {
            throw DecodeError("tree file: zero value");
        }
        tree.insert(k, v);
    }
    return tree;
}

Bytes readFile(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return out;
}

std::string readTextFile(const std::filesystem::path& path)
{
    Bytes b = readFile(path);
    return std::string(b.begin(), b.end());
}

void writeFile(const std::filesystem::path& path, std::span<const uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) {
        throw IoError("write failed: " + path.string());
    }
}

void writeFile(const std::filesystem::path& path, std::string_view text)
{
    writeFile(path, std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

} // namespace verkle::harness
