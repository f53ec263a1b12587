#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "verkle/harness.hpp"
#include "verkle/msm.hpp"
#include "verkle/verkle_tree.hpp"

using namespace verkle;

namespace {

struct MsmInput {
    std::vector<bn254::G1Affine> bases;
    std::vector<ff::Fr> scalars;
};

const MsmInput& msmInput(std::size_t n)
{
    static std::map<std::size_t, MsmInput> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::mt19937_64 rng(n);
    MsmInput in;
    std::vector<bn254::G1> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(bn254::mulScalar(bn254::g1Generator().toJacobian(), ff::Fr::random(rng)));
        in.scalars.push_back(ff::Fr::random(rng));
    }
    in.bases = bn254::batchToAffine(pts);
    return cache.emplace(n, std::move(in)).first->second;
}

std::shared_ptr<const kzg::CommitmentKey> key()
{
    static auto k = harness::makeCommitmentKey("bench-kernels");
    return k;
}

tree::VerkleTree dataTree(std::size_t n)
{
    tree::VerkleTree t(tree::TreeConfig{}, key());
    for (const auto& raw : harness::generateDataset(n, 1))
        t.insert(tree::deriveKey(raw, t.config()), harness::entryValue(raw));
    return t;
}

void BM_MsmSerial(benchmark::State& state)
{
    const auto& in = msmInput(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(msm::msmSerial(in.bases, in.scalars));
}

void BM_MsmParallel(benchmark::State& state)
{
    const auto& in = msmInput(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(msm::msmParallel(in.bases, in.scalars));
}

void BM_CommitTree(benchmark::State& state)
{
    for (auto _ : state) {
        state.PauseTiming();
        auto t = dataTree(static_cast<std::size_t>(state.range(0)));
        state.ResumeTiming();
        benchmark::DoNotOptimize(t.commitTree());
    }
}

void BM_CommitTreeReference(benchmark::State& state)
{
    auto t = dataTree(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(t.commitTreeReference());
}

void BM_Pairing(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(bn254::pairing(bn254::g1Generator(), bn254::g2Generator()));
}

} // namespace

BENCHMARK(BM_MsmSerial)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MsmParallel)->Arg(16)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommitTree)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_CommitTreeReference)->Arg(64)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_Pairing)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
