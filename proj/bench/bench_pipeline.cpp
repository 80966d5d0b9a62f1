// Serial reference vs OpenMP pipeline over a synthetic corpus.
//
// The latency variants sleep per backend query to stand in for resolver
// round trips, which is where concurrency pays off in a real scan.

#include "mxaudit/fixture_backend.hpp"
#include "mxaudit/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <chrono>
#include <string>
#include <thread>

namespace
{

using namespace mxaudit;

class LatencyBackend final : public QueryBackend
{
public:
  LatencyBackend(QueryBackend& inner, std::chrono::microseconds delay) : inner_(inner), delay_(delay) {}

  QueryResult query(const DomainName& name, RrType type) override
  {
    if (delay_.count() > 0)
      std::this_thread::sleep_for(delay_);
    return inner_.query(name, type);
  }

private:
  QueryBackend& inner_;
  std::chrono::microseconds delay_;
};

struct Corpus
{
  FixtureBackend fixtures;
  std::vector<CorpusEntry> entries;
};

/// n domains, each with 1..4 MX records and 1..3 addresses per exchanger.
Corpus make_corpus(std::size_t n)
{
  Corpus c;
  for (std::size_t i = 0; i < n; ++i)
  {
    const auto domain = DomainName::parse("d" + std::to_string(i) + ".bench.test");
    const std::size_t n_mx = 1 + i % 4;
    FixtureEntry mx;
    mx.result.status = QueryStatus::Ok;
    for (std::size_t m = 0; m < n_mx; ++m)
    {
      const auto ex = "mx" + std::to_string(m) + "." + domain.text();
      mx.result.records.push_back({std::to_string(10 * (m + 1)) + " " + ex + ".", 3600});
      FixtureEntry a;
      a.result.status = QueryStatus::Ok;
      for (std::size_t k = 0; k < 1 + (i + m) % 3; ++k)
      {
        const std::string addr = "10." + std::to_string(i % 250) + "." + std::to_string(m) + "." + std::to_string(k + 1);
        a.result.records.push_back({addr, 300});
        FixtureEntry ptr;
        ptr.result.status = QueryStatus::Ok;
        ptr.result.records.push_back({ex + ".", 300});
        c.fixtures.add(DomainName::parse(IpAddress::parse(addr)->reverse_name()), RrType::PTR, ptr);
      }
      c.fixtures.add(DomainName::parse(ex), RrType::A, a);
    }
    c.fixtures.add(domain, RrType::MX, mx);
    c.entries.push_back({domain, static_cast<double>(i + 1)});
  }
  return c;
}

const Corpus& corpus()
{
  static const Corpus c = make_corpus(2000);
  return c;
}

void BM_Serial(benchmark::State& state)
{
  const auto& c = corpus();
  auto fixtures = c.fixtures;
  LatencyBackend backend(fixtures, std::chrono::microseconds(state.range(0)));
  const auto rules = default_hosting_rules();
  const std::span<const CorpusEntry> entries(c.entries.data(), state.range(0) > 0 ? 200 : c.entries.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(run_pipeline_serial(entries, backend, rules));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * entries.size()));
}

void BM_Parallel(benchmark::State& state)
{
  const auto& c = corpus();
  auto fixtures = c.fixtures;
  LatencyBackend backend(fixtures, std::chrono::microseconds(state.range(0)));
  const auto rules = default_hosting_rules();
  ResolverPolicy policy;
  policy.max_concurrency = static_cast<int>(state.range(1));
  const std::span<const CorpusEntry> entries(c.entries.data(), state.range(0) > 0 ? 200 : c.entries.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(run_pipeline_parallel(entries, backend, rules, policy));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * entries.size()));
}

} // namespace

BENCHMARK(BM_Serial)->Arg(0)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)
  ->Args({0, 1})
  ->Args({0, 4})
  ->Args({200, 8})
  ->Args({200, 64})
  ->Unit(benchmark::kMillisecond)
  ->UseRealTime();

BENCHMARK_MAIN();
