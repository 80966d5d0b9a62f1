#pragma once

#include "mxaudit/model.hpp"

#include <cstdint>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mxaudit
{

enum class RrType : std::uint8_t
{
  MX,
  A,
  AAAA,
  TXT,
  PTR
};

std::string_view to_string(RrType t) noexcept;
std::optional<RrType> rr_type_from_string(std::string_view s) noexcept;

struct ResourceData
{
  std::string rdata;   ///< presentation form, e.g. "10 mx.domain.tld." for MX
  std::uint32_t ttl{0};

  friend bool operator==(const ResourceData&, const ResourceData&) = default;
};

/// \brief Answer to one (name, type) question. records is non-empty iff status is Ok.
struct QueryResult
{
  QueryStatus status{QueryStatus::NxDomain};
  std::vector<ResourceData> records;
  bool is_cname{false};   ///< answer was reached through a CNAME chain

  static QueryResult failure(QueryStatus s) { return QueryResult{s, {}, false}; }

  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

/// \brief Source of DNS answers. Implementations must tolerate concurrent calls.
class QueryBackend
{
public:
  virtual ~QueryBackend() = default;

  /// \brief Answer one question. Per-record failures come back as statuses;
  /// only a dead transport throws (BackendUnavailable).
  virtual QueryResult query(const DomainName& name, RrType type) = 0;
};

struct ResolverPolicy
{
  int timeout_ms{5000};
  int retries{0};           ///< 0 is single-pass
  int max_concurrency{64};
};

/// \brief Run-scoped memo: each (name, type) reaches the inner backend at most once.
///
/// Concurrent askers of the same key block on the first asker's answer.
/// Timeout/SERVFAIL answers are retried up to \p retries times before being
/// cached.
class MemoBackend final : public QueryBackend
{
public:
  explicit MemoBackend(QueryBackend& inner, int retries = 0) : inner_(inner), retries_(retries) {}

  QueryResult query(const DomainName& name, RrType type) override;

  std::size_t size() const;

private:
  QueryBackend& inner_;
  int retries_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_future<QueryResult>> table_;
};

/// \brief Pass-through that records every question it forwards.
class CountingBackend final : public QueryBackend
{
public:
  explicit CountingBackend(QueryBackend& inner) : inner_(inner) {}

  QueryResult query(const DomainName& name, RrType type) override;

  std::vector<std::pair<std::string, RrType>> log() const;
  std::size_t count() const;

private:
  QueryBackend& inner_;
  mutable std::mutex mu_;
  std::vector<std::pair<std::string, RrType>> log_;
};

/// \brief Parse MX rdata "preference exchanger". Unusable rdata yields a
/// malformed record pointing at the root.
MxRecord parse_mx_rdata(std::string_view rdata, std::uint32_t ttl);

/// \brief Reverse lookup of \p address, confirmed against \p owner.
PtrOutcome ptr_lookup(const IpAddress& address, const DomainName& owner, QueryBackend& backend);

/// \brief The three-step pipeline for one domain: MX+TXT, then A+AAAA per
/// exchanger, then PTR per address. Classification and flags are left at
/// their defaults; see audit(). Wrap \p backend in a MemoBackend to get
/// run-wide query deduplication and retries.
DomainProfile resolve_domain(const DomainName& domain, QueryBackend& backend);

} // namespace mxaudit
