#pragma once

#include "mxaudit/model.hpp"

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mxaudit
{

/// \brief Hosting provider identified by exchanger-name suffixes.
struct HostingRule
{
  std::string provider;
  std::vector<DomainName> suffixes;
};

/// Microsoft = outlook.com; Google = google.com, googlemail.com.
std::vector<HostingRule> default_hosting_rules();

/// \brief Load [{"provider": "...", "suffixes": ["..."]}, ...]. Throws std::runtime_error.
std::vector<HostingRule> load_hosting_rules(const std::filesystem::path& path);

/// \brief RFC 7505: exactly one record, preference 0, exchanger ".".
bool is_null_mx(const MxRecordSet& mx) noexcept;

/// \brief Taxonomy over record counts. Total: every input gets exactly one label.
///
/// Rules are tried in this order, first match wins:
///   n_m = 0                                 NoMx
///   !resolution_ok                          NonIdentified
///   n_m = 1, n_a = 1, n_abar = 0            PlainV4Only
///   n_m = 1, n_a = 0, n_abar = 1            PlainV6Only
///   n_m = 1, n_a = 1, n_abar = 1            PlainDualStack
///   n_m = 1, n_a > 1 or n_abar > 1          RoundRobin
///   n_m > 1, n_a = n_m or n_abar = n_m      MxBalancing
///   n_m > 1, n_a + n_abar > 0               Hybrid
///   otherwise (no usable address)           NonIdentified
///
/// \p resolution_ok is false when some address lookup failed transiently, so
/// the counts cannot be trusted.
Classification classify(std::uint64_t n_m, std::uint64_t n_a, std::uint64_t n_abar,
                        bool resolution_ok = true) noexcept;

struct SpfResult
{
  bool has_spf{false};          ///< "v=spf" anywhere, any case
  bool deny_all{false};         ///< a record is exactly "v=spf1 -all" modulo case and whitespace
  bool has_spf_literal{false};  ///< "v=spf" anywhere, exact case

  friend bool operator==(const SpfResult&, const SpfResult&) = default;
};

SpfResult detect_spf(std::span<const std::string> txt);

/// \brief Providers with at least one exchanger on one of their suffixes (label boundary).
std::set<std::string> detect_hosting(const MxRecordSet& mx, std::span<const HostingRule> rules);

bool detect_private_or_local(std::span<const IpAddress> addresses) noexcept;

/// \brief Some address is served under two different exchanger names.
bool detect_duplicates(std::span<const ResolvedExchanger> exchangers);

/// \brief Set classification and every audit flag on a resolved profile.
DomainProfile audit(DomainProfile profile, std::span<const HostingRule> rules);

} // namespace mxaudit
