#include "verkle/gas_model.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "verkle/errors.hpp"
#include "verkle/verkle_tree.hpp"

namespace verkle::gas {

namespace {

constexpr Gas kMerkleSiblingBytes = 32;

struct Field {
    const char* name;
    Gas GasParams::*member;
};

constexpr std::array<Field, 9> kFields{{
    {"nonzero_byte_cost", &GasParams::nonzero_byte_cost},
    {"zero_byte_cost", &GasParams::zero_byte_cost},
    {"base_tx_cost", &GasParams::base_tx_cost},
    {"verkle_slope", &GasParams::verkle_slope},
    {"verkle_intercept", &GasParams::verkle_intercept},
    {"merkle_slope", &GasParams::merkle_slope},
    {"merkle_intercept", &GasParams::merkle_intercept},
    {"verkle_calldata_overhead", &GasParams::verkle_calldata_overhead},
    {"merkle_calldata_overhead", &GasParams::merkle_calldata_overhead},
}};

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace

GasParams GasParams::parse(std::string_view text)
{
    GasParams params;
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
            throw ArgumentError("gas params line " + std::to_string(lineNo) + ": expected name=value");
        }
        std::string_view name = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        auto field = std::find_if(kFields.begin(), kFields.end(), [&](const Field& f) { return name == f.name; });
        if (field == kFields.end()) {
            throw ArgumentError("gas params line " + std::to_string(lineNo) + ": unknown name '" + std::string(name) + "'");
        }
        Gas v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
            throw ArgumentError("gas params line " + std::to_string(lineNo) + ": '" + std::string(value) +
                                "' is not a nonnegative integer");
        }
        params.*(field->member) = v;
    }
    return params;
}

std::string GasParams::serialize() const
{
    std::string out;
    for (const auto& f : kFields) {
        out += f.name;
        out += '=';
        out += std::to_string(this->*(f.member));
        out += '\n';
    }
    return out;
}

std::size_t ceilLog(uint64_t value, uint64_t base)
{
    if (value < 1 || base < 2) {
        throw ArgumentError("ceilLog needs value >= 1 and base >= 2");
    }
    std::size_t levels = 0;
    uint64_t reach = 1;
    while (reach < value) {
        if (reach > std::numeric_limits<uint64_t>::max() / base) {
            return levels + 1;
        }
        reach *= base;
        ++levels;
    }
    return levels;
}

Gas verkleTotalGas(uint64_t capacity, uint64_t k, const GasParams& params)
{
    return ceilLog(capacity, k) * params.verkle_slope + params.verkle_intercept;
}

Gas merkleTotalGas(uint64_t capacity, const GasParams& params)
{
    return ceilLog(capacity, 2) * params.merkle_slope + params.merkle_intercept;
}

Gas calldataGas(std::span<const uint8_t> payload, bool includeBase, const GasParams& params)
{
    auto zeros = static_cast<Gas>(std::count(payload.begin(), payload.end(), uint8_t{0}));
    Gas nonzero = payload.size() - zeros;
    return nonzero * params.nonzero_byte_cost + zeros * params.zero_byte_cost + (includeBase ? params.base_tx_cost : 0);
}

Gas calldataGasAllNonzero(std::size_t payloadBytes, const GasParams& params)
{
    return payloadBytes * params.nonzero_byte_cost;
}

Gas estimateVerkleCalldata(std::size_t levels, const GasParams& params)
{
    return params.verkle_calldata_overhead + levels * tree::kWordLevelBytes * params.nonzero_byte_cost;
}

Gas estimateMerkleCalldata(std::size_t levels, const GasParams& params)
{
    return params.merkle_calldata_overhead + levels * kMerkleSiblingBytes * params.nonzero_byte_cost;
}

Gas estimateVerkleCalldataFromPayload(std::span<const uint8_t> wordAlignedProof, bool assumeNonzero,
                                      const GasParams& params)
{
    // the closed form charges one 160-byte level more than the proof carries in place of its 128 fixed bytes
    const Gas rebase = (tree::kWordLevelBytes - tree::kWordFixedBytes) * params.nonzero_byte_cost;
    const Gas priced = assumeNonzero ? calldataGasAllNonzero(wordAlignedProof.size(), params)
                                     : calldataGas(wordAlignedProof, false, params);
    return params.verkle_calldata_overhead + rebase + priced;
}

GasEstimate estimateVerkle(std::size_t levels, const GasParams& params)
{
    return {levels, estimateVerkleCalldata(levels, params), levels * params.verkle_slope + params.verkle_intercept,
            ModelSource::ClosedForm};
}

GasEstimate estimateMerkle(std::size_t levels, const GasParams& params)
{
    return {levels, estimateMerkleCalldata(levels, params), levels * params.merkle_slope + params.merkle_intercept,
            ModelSource::ClosedForm};
}

uint64_t proofSizeBytes(ProofKind kind, uint64_t capacity, uint64_t k)
{
    if (capacity < 2 || k < 2) {
        throw ArgumentError("proofSizeBytes needs capacity >= 2 and k >= 2");
    }
    switch (kind) {
    case ProofKind::MerkleBinary:
        return kMerkleSiblingBytes * ceilLog(capacity, 2);
    case ProofKind::MerkleKary:
        return kMerkleSiblingBytes * (k - 1) * ceilLog(capacity, k);
    case ProofKind::Verkle:
        return tree::kWordLevelBytes * (ceilLog(capacity, k) - 1) + tree::kWordFixedBytes;
    }
    throw ArgumentError("unknown proof kind");
}

std::vector<ComparisonRow> crossoverSeries(uint64_t capMin, uint64_t capMax, uint64_t k, const GasParams& params)
{
    if (capMin < 2 || capMin > capMax) {
        throw ArgumentError("crossoverSeries needs 2 <= capMin <= capMax");
    }
    std::vector<ComparisonRow> rows;
    for (int shift = 1; shift < 64; ++shift) {
        uint64_t cap = uint64_t{1} << shift;
        if (cap > capMax) {
            break;
        }
        if (cap < capMin) {
            continue;
        }
        ComparisonRow row;
        row.capacity = cap;
        row.merkleTotal = merkleTotalGas(cap, params);
        row.verkleTotal = verkleTotalGas(cap, k, params);
        row.ratio = static_cast<double>(row.verkleTotal) / static_cast<double>(row.merkleTotal);
        rows.push_back(row);
    }
    return rows;
}

std::string formatDouble(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string crossoverToCsv(std::span<const ComparisonRow> rows)
{
    std::ostringstream out;
    out << "capacity,merkle_total_gas,verkle_total_gas,ratio\n";
    for (const auto& r : rows) {
        out << r.capacity << ',' << r.merkleTotal << ',' << r.verkleTotal << ',' << formatDouble(r.ratio) << '\n';
    }
    return out.str();
}

std::string crossoverToJson(std::span<const ComparisonRow> rows)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"capacity", r.capacity},
                       {"merkle_total_gas", r.merkleTotal},
                       {"verkle_total_gas", r.verkleTotal},
                       {"ratio", r.ratio}});
    }
    return arr.dump(2) + "\n";
}

} // namespace verkle::gas
