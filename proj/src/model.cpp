#include "mxaudit/model.hpp"

#include <algorithm>

namespace mxaudit
{

namespace
{

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view s, const std::pair<Enum, std::string_view> (&table)[N]) noexcept
{
  for (const auto& [value, name] : table)
    if (name == s)
      return value;
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(Enum e, const std::pair<Enum, std::string_view> (&table)[N]) noexcept
{
  for (const auto& [value, name] : table)
    if (value == e)
      return name;
  return "?";
}

constexpr std::pair<QueryStatus, std::string_view> kQueryStatusNames[] = {
  {QueryStatus::Ok, "Ok"},
  {QueryStatus::NxDomain, "NxDomain"},
  {QueryStatus::NoRecords, "NoRecords"},
  {QueryStatus::Timeout, "Timeout"},
  {QueryStatus::ServFail, "ServFail"},
};

constexpr std::pair<PtrStatus, std::string_view> kPtrStatusNames[] = {
  {PtrStatus::Found, "Found"},
  {PtrStatus::NotFound, "NotFound"},
  {PtrStatus::Error, "Error"},
};

constexpr std::pair<Classification, std::string_view> kClassificationNames[] = {
  {Classification::NoMx, "NoMx"},
  {Classification::NullMx, "NullMx"},
  {Classification::PlainV4Only, "PlainV4Only"},
  {Classification::PlainV6Only, "PlainV6Only"},
  {Classification::PlainDualStack, "PlainDualStack"},
  {Classification::RoundRobin, "RoundRobin"},
  {Classification::MxBalancing, "MxBalancing"},
  {Classification::Hybrid, "Hybrid"},
  {Classification::NonIdentified, "NonIdentified"},
};

} // namespace

std::string_view to_string(QueryStatus s) noexcept { return name_of(s, kQueryStatusNames); }

std::optional<QueryStatus> query_status_from_string(std::string_view s) noexcept
{
  return lookup(s, kQueryStatusNames);
}

std::string_view to_string(PtrStatus s) noexcept { return name_of(s, kPtrStatusNames); }

std::optional<PtrStatus> ptr_status_from_string(std::string_view s) noexcept
{
  return lookup(s, kPtrStatusNames);
}

std::string_view to_string(Classification c) noexcept { return name_of(c, kClassificationNames); }

std::optional<Classification> classification_from_string(std::string_view s) noexcept
{
  return lookup(s, kClassificationNames);
}

bool is_plain(Classification c) noexcept
{
  return c == Classification::PlainV4Only || c == Classification::PlainV6Only
      || c == Classification::PlainDualStack;
}

bool is_blbfo(Classification c) noexcept
{
  return c == Classification::RoundRobin || c == Classification::MxBalancing
      || c == Classification::Hybrid;
}

std::vector<DomainName> MxRecordSet::distinct_exchangers() const
{
  std::vector<DomainName> out;
  for (const auto& r : records)
  {
    if (r.exchanger.is_root())
      continue;
    if (std::find(out.begin(), out.end(), r.exchanger) == out.end())
      out.push_back(r.exchanger);
  }
  return out;
}

std::vector<std::uint16_t> MxRecordSet::preferences() const
{
  std::vector<std::uint16_t> out;
  out.reserve(records.size());
  for (const auto& r : records)
    out.push_back(r.preference);
  return out;
}

std::optional<std::uint32_t> MxRecordSet::set_ttl() const
{
  if (records.empty())
    return std::nullopt;
  std::uint32_t ttl = records.front().ttl;
  for (const auto& r : records)
    ttl = std::min(ttl, r.ttl);
  return ttl;
}

RecordCounts derive_counts(const DomainProfile& profile) noexcept
{
  RecordCounts c;
  c.n_m = profile.mx.n_m();
  for (const auto& ex : profile.exchangers)
  {
    c.n_a += ex.ipv4.size();
    c.n_abar += ex.ipv6.size();
  }
  return c;
}

void refresh_counts(DomainProfile& profile) noexcept
{
  const auto c = derive_counts(profile);
  profile.n_a = c.n_a;
  profile.n_abar = c.n_abar;
}

} // namespace mxaudit
