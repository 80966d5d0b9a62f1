#pragma once

#include "mxaudit/domain_name.hpp"
#include "mxaudit/ip_address.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mxaudit
{

/// \brief Outcome of one (name, type) lookup.
enum class QueryStatus : std::uint8_t
{
  Ok,
  NxDomain,
  NoRecords,
  Timeout,
  ServFail
};

std::string_view to_string(QueryStatus s) noexcept;
std::optional<QueryStatus> query_status_from_string(std::string_view s) noexcept;

/// \brief True for statuses that say nothing about the record (transport trouble).
inline bool is_transient(QueryStatus s) noexcept
{
  return s == QueryStatus::Timeout || s == QueryStatus::ServFail;
}

/// \brief One MX resource record.
struct MxRecord
{
  std::uint16_t preference{0};
  DomainName exchanger;            ///< root "." for Null MX or malformed rdata
  std::uint32_t ttl{0};
  bool malformed{false};           ///< rdata did not yield a usable exchanger

  friend bool operator==(const MxRecord&, const MxRecord&) = default;
};

/// \brief A domain's MX RRset in the order it was returned.
struct MxRecordSet
{
  std::vector<MxRecord> records;

  std::size_t n_m() const noexcept { return records.size(); }

  /// \brief Distinct exchanger names in first-seen order, root excluded.
  std::vector<DomainName> distinct_exchangers() const;

  std::vector<std::uint16_t> preferences() const;

  /// \brief Effective cache lifetime of the set: the minimum record TTL.
  std::optional<std::uint32_t> set_ttl() const;

  friend bool operator==(const MxRecordSet&, const MxRecordSet&) = default;
};

enum class PtrStatus : std::uint8_t
{
  Found,
  NotFound,
  Error
};

std::string_view to_string(PtrStatus s) noexcept;
std::optional<PtrStatus> ptr_status_from_string(std::string_view s) noexcept;

struct PtrOutcome
{
  PtrStatus status{PtrStatus::NotFound};
  std::vector<DomainName> names;
  bool forward_confirmed{false};

  friend bool operator==(const PtrOutcome&, const PtrOutcome&) = default;
};

/// \brief One exchanger name with everything steps 2 and 3 learned about it.
struct ResolvedExchanger
{
  DomainName exchanger;
  std::vector<IpAddress> ipv4;
  std::vector<IpAddress> ipv6;
  std::map<IpAddress, PtrOutcome> ptr;
  QueryStatus a_status{QueryStatus::NoRecords};
  QueryStatus aaaa_status{QueryStatus::NoRecords};
  bool is_cname_target{false};

  friend bool operator==(const ResolvedExchanger&, const ResolvedExchanger&) = default;
};

/// \brief Nine-way configuration label.
enum class Classification : std::uint8_t
{
  NoMx,
  NullMx,
  PlainV4Only,
  PlainV6Only,
  PlainDualStack,
  RoundRobin,
  MxBalancing,
  Hybrid,
  NonIdentified
};

inline constexpr Classification kAllClassifications[] = {
  Classification::NoMx,           Classification::NullMx,      Classification::PlainV4Only,
  Classification::PlainV6Only,    Classification::PlainDualStack, Classification::RoundRobin,
  Classification::MxBalancing,    Classification::Hybrid,      Classification::NonIdentified,
};

/// The seven labels an analyzed (MX-enabled, non-Null-MX) domain can carry.
inline constexpr Classification kAnalyzedClassifications[] = {
  Classification::PlainV4Only, Classification::PlainV6Only, Classification::PlainDualStack,
  Classification::RoundRobin,  Classification::MxBalancing, Classification::Hybrid,
  Classification::NonIdentified,
};

std::string_view to_string(Classification c) noexcept;
std::optional<Classification> classification_from_string(std::string_view s) noexcept;

bool is_plain(Classification c) noexcept;
bool is_blbfo(Classification c) noexcept;

struct AuditFlags
{
  bool has_spf{false};                 ///< case-insensitive "v=spf" substring
  bool has_spf_literal{false};         ///< case-sensitive "v=spf" substring
  bool spf_deny_all{false};
  std::set<std::string> hosting;       ///< provider labels
  bool has_nxdomain_exchanger{false};
  bool has_private_or_local_address{false};
  bool has_missing_ptr_v4{false};
  bool has_missing_ptr_v6{false};
  bool has_duplicate_addresses{false};
  bool has_cname_exchanger{false};
  bool has_nonstrict_exchanger_name{false};

  friend bool operator==(const AuditFlags&, const AuditFlags&) = default;
};

/// \brief Everything measured about one domain.
struct DomainProfile
{
  DomainName domain;
  std::optional<double> median_rank;   ///< may be a half-integer
  QueryStatus mx_status{QueryStatus::NoRecords};
  QueryStatus txt_status{QueryStatus::NoRecords};
  MxRecordSet mx;
  std::vector<ResolvedExchanger> exchangers;
  std::vector<std::string> txt;
  std::uint64_t n_a{0};
  std::uint64_t n_abar{0};
  Classification classification{Classification::NoMx};
  AuditFlags flags;

  /// \brief Step 1 failed (NXDOMAIN, timeout or SERVFAIL on the MX query).
  bool errored() const noexcept
  {
    return mx_status != QueryStatus::Ok && mx_status != QueryStatus::NoRecords;
  }

  friend bool operator==(const DomainProfile&, const DomainProfile&) = default;
};

struct RecordCounts
{
  std::uint64_t n_m{0};
  std::uint64_t n_a{0};
  std::uint64_t n_abar{0};

  friend bool operator==(const RecordCounts&, const RecordCounts&) = default;
};

/// \brief (n_m, n_a, n_abar). Addresses shared by several exchangers count once per exchanger.
RecordCounts derive_counts(const DomainProfile& profile) noexcept;

/// \brief Recompute n_a / n_abar from the exchanger list and store them.
void refresh_counts(DomainProfile& profile) noexcept;

} // namespace mxaudit
