#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "verkle/gas_model.hpp"
#include "verkle/hash.hpp"
#include "verkle/kzg.hpp"
#include "verkle/verkle_tree.hpp"

namespace verkle::harness {

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A sampled proof failed to verify during a benchmark run.
class BenchFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

inline constexpr uint64_t kLargestCapacity = uint64_t{1} << 20;

struct BenchConfig {
    std::vector<uint64_t> capacities{8, 128, 1024, 32768};
    /// Appends 2^20 to the capacities.
    bool includeLargest = false;
    /// Per-capacity stem widths; empty means defaultStemWidth() for each.
    std::vector<std::size_t> stemWidths;
    uint64_t seed = 1;
    std::size_t samplesPerCapacity = 20;
    std::string setupSeed = "verkle-bench-setup";
    std::string outputPath;
    OutputFormat outputFormat = OutputFormat::Csv;
    gas::GasParams params;

    /// Flat `name=value` text: capacities (comma list), include_2_20, stem_widths, seed, samples,
    /// setup_seed, output, format (csv|json), and any GasParams field name.
    static BenchConfig parse(std::string_view text);
    /// Capacity list after the opt-in ceiling is applied.
    std::vector<uint64_t> effectiveCapacities() const;
    /// Throws ArgumentError unless capacities are ascending and >= 1, samples >= 1, and stem widths line up.
    void validate() const;
};

/// Smallest stem width w >= 1 with 256^(w + 1) >= capacity.
std::size_t defaultStemWidth(uint64_t capacity);

/// n distinct 20-byte values from std::mt19937_64 seeded with `seed`.
std::vector<Bytes> generateDataset(std::size_t n, uint64_t seed);

/// Value stored for a dataset entry: hashToScalar(raw). Never zero for realistic inputs.
kzg::Scalar entryValue(std::span<const uint8_t> raw);

/// Structural and timing data for one (structure, capacity) cell.
struct BenchRow {
    std::string structure;
    uint64_t capacity = 0;
    std::size_t levels = 0;
    double buildMs = 0;
    double proveMsMean = 0;
    double verifyMsMean = 0;
    std::size_t proofBytesCompact = 0;
    std::size_t proofBytesWord = 0;
    gas::Gas calldataGas = 0;
    gas::Gas totalGas = 0;
    std::size_t internalProofs = 0;
    std::size_t childCommitments = 0;
    std::size_t leafProofs = 0;
    std::size_t samples = 0;
    std::size_t verified = 0;
    /// Dataset entries whose derived key collided with a later entry.
    std::size_t overwrittenKeys = 0;
    std::string root;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

/// Builds both trees per capacity, proves and verifies sampled members, and attaches modeled gas.
/// Throws BenchFailure naming the structure, capacity and sample when any proof fails.
BenchReport runBenchmark(const BenchConfig& config, std::shared_ptr<const kzg::CommitmentKey> key);
/// Same, creating the commitment key from config.setupSeed.
BenchReport runBenchmark(const BenchConfig& config);

/// `structure,capacity,levels,build_ms,prove_ms_mean,verify_ms_mean,proof_bytes_compact,proof_bytes_word,calldata_gas,total_gas`
std::string reportToCsv(const BenchReport& report);
/// Array of row objects: the CSV columns plus component counts, sample counts and roots.
std::string reportToJson(const BenchReport& report);
std::string formatReport(const BenchReport& report, OutputFormat format);

/// Setup (degree 255) and its Lagrange key for the 256-slot domain.
std::shared_ptr<const kzg::CommitmentKey> makeCommitmentKey(std::string_view seed);
std::shared_ptr<const kzg::CommitmentKey> makeCommitmentKey(kzg::TrustedSetup setup);

/// "VKTR" | 0x01 | stemWidth | count (u32 BE) | count * (stem, leafIndex, value[32])
Bytes encodeVerkleTreeFile(const tree::VerkleTree& tree);
tree::VerkleTree decodeVerkleTreeFile(std::span<const uint8_t> bytes, std::shared_ptr<const kzg::CommitmentKey> key);

Bytes readFile(const std::filesystem::path& path);
std::string readTextFile(const std::filesystem::path& path);
/// Throws IoError.
void writeFile(const std::filesystem::path& path, std::span<const uint8_t> bytes);
void writeFile(const std::filesystem::path& path, std::string_view text);

} // namespace verkle::harness
