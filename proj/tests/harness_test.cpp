#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <set>

#include "test_support.hpp"
#include "verkle/errors.hpp"
#include "verkle/harness.hpp"

using namespace verkle;
using namespace verkle::harness;
using verkle::testing::sharedKey;

namespace {

BenchConfig smallConfig()
{
    BenchConfig c;
    c.capacities = {8, 128};
    c.samplesPerCapacity = 5;
    c.seed = 42;
    return c;
}

} // namespace

TEST(Dataset, DeterministicAndDistinct)
{
    auto a = generateDataset(1000, 3);
    EXPECT_EQ(a, generateDataset(1000, 3));
    EXPECT_NE(generateDataset(8, 3), generateDataset(8, 4));
    std::set<Bytes> uniq(a.begin(), a.end());
    EXPECT_EQ(uniq.size(), a.size());
    for (const auto& v : a)
        EXPECT_EQ(v.size(), 20U);
    EXPECT_THROW(generateDataset(0, 1), ArgumentError);
}

TEST(Dataset, DefaultStemWidth)
{
    EXPECT_EQ(defaultStemWidth(8), 1U);
    EXPECT_EQ(defaultStemWidth(65536), 1U);
    EXPECT_EQ(defaultStemWidth(65537), 2U);
    EXPECT_EQ(defaultStemWidth(uint64_t{1} << 20), 2U);
}

TEST(BenchConfig, ParseAndValidate)
{
    auto c = BenchConfig::parse("capacities=8,64\nseed=9\nsamples=3\nformat=json\nverkle_slope=5\ninclude_2_20=true\n");
    EXPECT_EQ(c.capacities, (std::vector<uint64_t>{8, 64}));
    EXPECT_EQ(c.seed, 9U);
    EXPECT_EQ(c.samplesPerCapacity, 3U);
    EXPECT_EQ(c.outputFormat, OutputFormat::Json);
    EXPECT_EQ(c.params.verkle_slope, 5U);
    EXPECT_EQ(c.effectiveCapacities().back(), kLargestCapacity);
    EXPECT_THROW(BenchConfig::parse("capacities=64,8"), ArgumentError);
    EXPECT_THROW(BenchConfig::parse("samples=0"), ArgumentError);
    EXPECT_THROW(BenchConfig::parse("nonsense=1"), ArgumentError);
    EXPECT_THROW(BenchConfig::parse("capacities=8,16\nstem_widths=1"), ArgumentError);
    EXPECT_EQ(BenchConfig{}.effectiveCapacities(), (std::vector<uint64_t>{8, 128, 1024, 32768}));
}

TEST(Bench, SmallRunVerifiesAndMatchesModel)
{
    auto report = runBenchmark(smallConfig(), sharedKey());
    ASSERT_EQ(report.rows.size(), 4U);
    for (const auto& r : report.rows) {
        EXPECT_EQ(r.samples, 5U);
        EXPECT_EQ(r.verified, r.samples);
        EXPECT_GE(r.buildMs, 0.0);
        if (r.structure == "verkle") {
            EXPECT_EQ(r.levels, 2U);
            EXPECT_EQ(r.proofBytesWord, 288U);
            EXPECT_EQ(r.proofBytesCompact, 198U);
            EXPECT_EQ(r.totalGas, gas::estimateVerkle(2).totalGas);
            EXPECT_EQ(r.calldataGas, gas::estimateVerkleCalldata(2));
        } else {
            EXPECT_EQ(r.totalGas, gas::merkleTotalGas(r.capacity));
            EXPECT_EQ(r.calldataGas, gas::estimateMerkleCalldata(gas::ceilLog(r.capacity, 2)));
        }
    }
    EXPECT_EQ(report.rows[0].proofBytesCompact, 3U * 32);
}

TEST(Bench, MerkleProofLengthAt1024)
{
    BenchConfig c = smallConfig();
    c.capacities = {1024};
    c.samplesPerCapacity = 2;
    auto report = runBenchmark(c, sharedKey());
    EXPECT_EQ(report.rows[0].proofBytesCompact / 32, 10U);
}

TEST(Bench, ReportsAgreeAcrossFormats)
{
    auto report = runBenchmark(smallConfig(), sharedKey());
    std::string csv = reportToCsv(report);
    auto json = nlohmann::json::parse(reportToJson(report));
    ASSERT_EQ(json.size(), report.rows.size());
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "structure,capacity,levels,build_ms,prove_ms_mean,verify_ms_mean,proof_bytes_compact,"
                    "proof_bytes_word,calldata_gas,total_gas");
    for (const auto& row : json) {
        std::getline(lines, line);
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            cells.push_back(cell);
        ASSERT_EQ(cells.size(), 10U);
        EXPECT_EQ(cells[0], row["structure"].get<std::string>());
        EXPECT_EQ(std::stoull(cells[1]), row["capacity"].get<uint64_t>());
        EXPECT_NEAR(std::stod(cells[3]), row["build_ms"].get<double>(), 5e-4);
        EXPECT_EQ(std::stoull(cells[8]), row["calldata_gas"].get<uint64_t>());
        EXPECT_EQ(std::stoull(cells[9]), row["total_gas"].get<uint64_t>());
    }
    EXPECT_EQ(reportToCsv(BenchReport{}).find('\n'), reportToCsv(BenchReport{}).size() - 1);
}

TEST(Bench, DeterministicApartFromTimings)
{
    auto a = runBenchmark(smallConfig(), sharedKey());
    auto b = runBenchmark(smallConfig(), sharedKey());
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].root, b.rows[i].root);
        EXPECT_EQ(a.rows[i].totalGas, b.rows[i].totalGas);
        EXPECT_EQ(a.rows[i].proofBytesWord, b.rows[i].proofBytesWord);
    }
}

TEST(TreeFile, RoundTrip)
{
    tree::VerkleTree t(tree::TreeConfig{.stemWidth = 2}, sharedKey());
    for (const auto& raw : generateDataset(20, 8))
        t.insert(tree::deriveKey(raw, t.config()), entryValue(raw));
    Bytes enc = encodeVerkleTreeFile(t);
    auto back = decodeVerkleTreeFile(enc, sharedKey());
    EXPECT_EQ(back.config(), t.config());
    EXPECT_EQ(back.entries(), t.entries());
    enc.pop_back();
    EXPECT_THROW(decodeVerkleTreeFile(enc, sharedKey()), DecodeError);
}

TEST(Files, IoErrors)
{
    auto dir = std::filesystem::temp_directory_path() / "verkle_harness_test";
    std::filesystem::create_directories(dir);
    writeFile(dir / "x.txt", std::string_view("hello\n"));
    EXPECT_EQ(readTextFile(dir / "x.txt"), "hello\n");
    EXPECT_THROW(readFile(dir / "missing.bin"), IoError);
    EXPECT_THROW(writeFile(dir / "no" / "such" / "dir.txt", std::string_view("x")), IoError);
    std::filesystem::remove_all(dir);
}
