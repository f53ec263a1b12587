#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace verkle::gas {

using Gas = uint64_t;

/// Cost-model constants. Defaults reproduce the closed-form fits and the measured calldata costs.
///
/// The calldata overheads are calibration constants: the ABI framing around a proof is not
/// itemised anywhere, so they are backed out of the two-level Verkle and three-level Merkle
/// calldata measurements (25,210 - 2*2,560 and 2,816 - 3*512).
struct GasParams {
    Gas nonzero_byte_cost = 16;
    Gas zero_byte_cost = 4;
    Gas base_tx_cost = 21000;
    Gas verkle_slope = 147560;
    Gas verkle_intercept = 200900;
    Gas merkle_slope = 1342;
    Gas merkle_intercept = 24300;
    Gas verkle_calldata_overhead = 20090;
    Gas merkle_calldata_overhead = 1280;

    /// Flat `name=value` lines using the field names above; '#' starts a comment.
    /// Unknown names and non-integer values throw ArgumentError. Missing names keep defaults.
    static GasParams parse(std::string_view text);
    std::string serialize() const;

    friend bool operator==(const GasParams&, const GasParams&) = default;
};

enum class ModelSource { ClosedForm, ByteLevel };

struct GasEstimate {
    std::size_t levels = 0;
    Gas calldataGas = 0;
    Gas totalGas = 0;
    ModelSource modelSource = ModelSource::ClosedForm;
};

struct ComparisonRow {
    uint64_t capacity = 0;
    Gas merkleTotal = 0;
    Gas verkleTotal = 0;
    double ratio = 0.0;

    friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

enum class ProofKind { MerkleBinary, MerkleKary, Verkle };

/// Smallest L with base^L >= value, in exact integer arithmetic. value >= 1, base >= 2.
std::size_t ceilLog(uint64_t value, uint64_t base);

/// ceil(log_k C) * verkle_slope + verkle_intercept. The slope and intercept were fitted at k = 256 only.
Gas verkleTotalGas(uint64_t capacity, uint64_t k, const GasParams& params = {});
/// ceil(log2 C) * merkle_slope + merkle_intercept.
Gas merkleTotalGas(uint64_t capacity, const GasParams& params = {});

/// nonzero_byte_cost per nonzero byte + zero_byte_cost per zero byte (+ base_tx_cost).
Gas calldataGas(std::span<const uint8_t> payload, bool includeBase, const GasParams& params = {});
/// Same pricing with every byte treated as nonzero.
Gas calldataGasAllNonzero(std::size_t payloadBytes, const GasParams& params = {});

/// verkle_calldata_overhead + levels * 160 * nonzero_byte_cost.
Gas estimateVerkleCalldata(std::size_t levels, const GasParams& params = {});
/// merkle_calldata_overhead + levels * 32 * nonzero_byte_cost.
Gas estimateMerkleCalldata(std::size_t levels, const GasParams& params = {});

/// Calldata priced from an actual word-aligned Verkle proof. The closed-form overhead is
/// re-based onto the encoding's 128 fixed bytes, so for an all-nonzero payload the result equals
/// estimateVerkleCalldata(stemWidth + 1). With `assumeNonzero` false, zero bytes get the cheaper rate.
Gas estimateVerkleCalldataFromPayload(std::span<const uint8_t> wordAlignedProof, bool assumeNonzero,
                                      const GasParams& params = {});

GasEstimate estimateVerkle(std::size_t levels, const GasParams& params = {});
GasEstimate estimateMerkle(std::size_t levels, const GasParams& params = {});

/// Proof size in bytes: merkle-binary 32*ceil(log2 C); merkle-kary 32*(k-1)*ceil(log_k C);
/// verkle 160*(L-1) + 128 with L = ceil(log_k C). capacity >= 2, k >= 2.
uint64_t proofSizeBytes(ProofKind kind, uint64_t capacity, uint64_t k);

/// One row per power-of-two capacity in [capMin, capMax]; ratio = verkleTotal / merkleTotal.
std::vector<ComparisonRow> crossoverSeries(uint64_t capMin, uint64_t capMax, uint64_t k,
                                           const GasParams& params = {});

/// `capacity,merkle_total_gas,verkle_total_gas,ratio`, newline-terminated.
std::string crossoverToCsv(std::span<const ComparisonRow> rows);
/// JSON array of objects with the CSV column names.
std::string crossoverToJson(std::span<const ComparisonRow> rows);

/// Shortest decimal text that reads back as the same double.
std::string formatDouble(double v);

} // namespace verkle::gas
