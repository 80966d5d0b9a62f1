#pragma once

#include "mxaudit/model.hpp"
#include "mxaudit/serialize.hpp"
#include "mxaudit/stats.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>

namespace mxaudit
{

/// Counts of domains that were excluded before any profile was built.
struct ExcludedCounts
{
  std::uint64_t errored{0};
  std::uint64_t no_mx{0};
  std::uint64_t null_mx{0};
};

/// \brief Groups used by the hosting cross-tabulation.
enum class ConfigGroup : std::uint8_t
{
  Simple,        ///< the three plain labels pooled
  RoundRobin,
  MxBalancing,
  Hybrid
};

std::string_view to_string(ConfigGroup g) noexcept;
std::optional<ConfigGroup> config_group_of(Classification c) noexcept;

struct HostingColumn
{
  std::uint64_t domains{0};
  std::uint64_t hosted{0};
  std::optional<double> hosting_share;   ///< nullopt for an empty group
  std::optional<double> others_share;
};

struct CorpusSummary
{
  // sample arithmetic: k = k_q - (k_w + k_nullmx), k_w = k_nomx + k_errored
  std::uint64_t k_q{0};
  std::uint64_t k_w{0};
  std::uint64_t k_nomx{0};
  std::uint64_t k_errored{0};
  std::uint64_t k_nullmx{0};
  std::uint64_t k{0};

  std::map<Classification, std::uint64_t> class_counts;   ///< the seven analyzed labels
  std::map<Classification, double> class_shares;
  double simple_share{0.0};
  double blbfo_share{0.0};

  std::optional<double> corr_mx_a;
  std::optional<double> corr_mx_aaaa;
  Histogram mx_count_hist;
  Histogram a_count_hist;
  Histogram aaaa_count_hist;
  double ipv6_share{0.0};              ///< some exchanger has an IPv6 address

  std::uint64_t multi_mx_domains{0};
  Histogram pref_stddev_hist;
  std::optional<double> equal_pref_share;   ///< over n_m > 1

  Histogram ttl_hist;                  ///< set-level (minimum) MX TTL per domain
  std::optional<double> ttl_below_2000_share;

  double hosting_share{0.0};
  std::map<ConfigGroup, HostingColumn> hosting_crosstab;

  std::map<Classification, double> rank_medians;       ///< classes with ranked domains
  std::optional<KruskalWallisResult> kruskal_wallis;   ///< over the six configuration classes

  double spf_share{0.0};
  double spf_literal_share{0.0};
  double spf_deny_all_share{0.0};
  std::optional<double> spf_share_simple;
  std::optional<double> spf_share_blbfo;

  std::uint64_t private_v4_domains{0};
  std::uint64_t private_v6_domains{0};
  double missing_ptr_v4_share{0.0};
  double missing_ptr_v6_share{0.0};
  double nxdomain_exchanger_share{0.0};
  double duplicate_address_share{0.0};
  double cname_exchanger_share{0.0};
};

/// \brief Aggregate a corpus.
///
/// \p profiles may include NoMx, NullMx and errored profiles; those are
/// counted into the exclusions. \p extra adds exclusions for domains that have
/// no profile at all. Throws EmptyCorpus when nothing was queried.
CorpusSummary summarize(std::span<const DomainProfile> profiles, ExcludedCounts extra = {});

Json to_json(const CorpusSummary& s);

Json to_json(const Histogram& h);

} // namespace mxaudit
