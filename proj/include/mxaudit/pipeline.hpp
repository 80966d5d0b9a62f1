#pragma once

#include "mxaudit/classifier.hpp"
#include "mxaudit/model.hpp"
#include "mxaudit/resolver.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mxaudit
{

/// \brief One input domain with its (optional) median popularity rank.
struct CorpusEntry
{
  DomainName domain;
  std::optional<double> median_rank;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

/// \brief Resolve and audit every entry, one at a time.
///
/// Reference implementation for the parallel kernel. Queries go through a
/// run-scoped MemoBackend; output is sorted by domain name.
std::vector<DomainProfile> run_pipeline_serial(std::span<const CorpusEntry> corpus, QueryBackend& backend,
                                               std::span<const HostingRule> rules, const ResolverPolicy& policy = {});

/// \brief Same contract as run_pipeline_serial, with up to
/// policy.max_concurrency domains in flight (OpenMP worker team).
std::vector<DomainProfile> run_pipeline_parallel(std::span<const CorpusEntry> corpus, QueryBackend& backend,
                                                 std::span<const HostingRule> rules,
                                                 const ResolverPolicy& policy = {});

} // namespace mxaudit
