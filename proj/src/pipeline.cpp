#include "mxaudit/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

namespace mxaudit
{

namespace
{

DomainProfile process(const CorpusEntry& entry, QueryBackend& backend, std::span<const HostingRule> rules)
{
  auto profile = resolve_domain(entry.domain, backend);
  profile.median_rank = entry.median_rank;
  return audit(std::move(profile), rules);
}

void sort_by_domain(std::vector<DomainProfile>& profiles)
{
  std::sort(profiles.begin(), profiles.end(),
            [](const DomainProfile& a, const DomainProfile& b) { return a.domain < b.domain; });
}

} // namespace

std::vector<DomainProfile> run_pipeline_serial(std::span<const CorpusEntry> corpus, QueryBackend& backend,
                                               std::span<const HostingRule> rules, const ResolverPolicy& policy)
{
  MemoBackend memo(backend, policy.retries);
  std::vector<DomainProfile> out;
  out.reserve(corpus.size());
  for (const auto& entry : corpus)
    out.push_back(process(entry, memo, rules));
  sort_by_domain(out);
  return out;
}

std::vector<DomainProfile> run_pipeline_parallel(std::span<const CorpusEntry> corpus, QueryBackend& backend,
                                                 std::span<const HostingRule> rules, const ResolverPolicy& policy)
{
  MemoBackend memo(backend, policy.retries);
  std::vector<DomainProfile> out(corpus.size());
  const auto n = static_cast<std::int64_t>(corpus.size());
  const int threads = std::max(1, policy.max_concurrency);

  std::exception_ptr failure;
  std::mutex failure_mu;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i)
  {
    try
    {
      out[static_cast<std::size_t>(i)] = process(corpus[static_cast<std::size_t>(i)], memo, rules);
    }
    catch (...)
    {
      std::lock_guard lock(failure_mu);
      if (!failure)
        failure = std::current_exception();
    }
  }

  if (failure)
    std::rethrow_exception(failure);
  sort_by_domain(out);
  return out;
}

} // namespace mxaudit
