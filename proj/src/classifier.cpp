#include "mxaudit/classifier.hpp"

#include "mxaudit/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <stdexcept>

namespace mxaudit
{

namespace
{

std::string ascii_lower(std::string_view s)
{
  std::string out(s);
  for (auto& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Collapse whitespace runs to one space and trim.
std::string squeeze(std::string_view s)
{
  std::string out;
  bool pending = false;
  for (char c : s)
  {
    if (std::isspace(static_cast<unsigned char>(c)))
    {
      pending = !out.empty();
      continue;
    }
    if (pending)
      out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

} // namespace

std::vector<HostingRule> default_hosting_rules()
{
  return {
    {"Microsoft", {DomainName::parse("outlook.com")}},
    {"Google", {DomainName::parse("google.com"), DomainName::parse("googlemail.com")}},
  };
}

std::vector<HostingRule> load_hosting_rules(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open hosting rules: " + path.string());
  std::vector<HostingRule> rules;
  try
  {
    const auto doc = Json::parse(in);
    for (const auto& r : doc)
    {
      HostingRule rule;
      rule.provider = r.at("provider").get<std::string>();
      for (const auto& s : r.at("suffixes"))
        rule.suffixes.push_back(DomainName::parse(s.get<std::string>()));
      rules.push_back(std::move(rule));
    }
  }
  catch (const std::exception& e)
  {
    throw std::runtime_error("hosting rules " + path.string() + ": " + e.what());
  }
  if (rules.empty())
    throw std::runtime_error("hosting rules " + path.string() + ": no rules");
  return rules;
}

bool is_null_mx(const MxRecordSet& mx) noexcept
{
  return mx.n_m() == 1 && mx.records[0].preference == 0 && mx.records[0].exchanger.is_root();
}

Classification classify(std::uint64_t n_m, std::uint64_t n_a, std::uint64_t n_abar, bool resolution_ok) noexcept
{
  using C = Classification;
  if (n_m == 0)
    return C::NoMx;
  if (!resolution_ok)
    return C::NonIdentified;
  if (n_m == 1)
  {
    if (n_a == 1 && n_abar == 0)
      return C::PlainV4Only;
    if (n_a == 0 && n_abar == 1)
      return C::PlainV6Only;
    if (n_a == 1 && n_abar == 1)
      return C::PlainDualStack;
    if (n_a > 1 || n_abar > 1)
      return C::RoundRobin;
    return C::NonIdentified;
  }
  if (n_a == n_m || n_abar == n_m)
    return C::MxBalancing;
  if (n_a + n_abar > 0)
    return C::Hybrid;
  return C::NonIdentified;
}

SpfResult detect_spf(std::span<const std::string> txt)
{
  SpfResult r;
  for (const auto& rec : txt)
  {
    const auto low = ascii_lower(rec);
    if (low.find("v=spf") != std::string::npos)
      r.has_spf = true;
    if (rec.find("v=spf") != std::string::npos)
      r.has_spf_literal = true;
    if (squeeze(low) == "v=spf1 -all")
      r.deny_all = true;
  }
  return r;
}

std::set<std::string> detect_hosting(const MxRecordSet& mx, std::span<const HostingRule> rules)
{
  std::set<std::string> out;
  for (const auto& rec : mx.records)
  {
    if (rec.exchanger.is_root())
      continue;
    for (const auto& rule : rules)
      for (const auto& suffix : rule.suffixes)
        if (rec.exchanger.is_subdomain_of(suffix))
          out.insert(rule.provider);
  }
  return out;
}

bool detect_private_or_local(std::span<const IpAddress> addresses) noexcept
{
  return std::any_of(addresses.begin(), addresses.end(), [](const auto& a) { return is_private_or_local(a); });
}

bool detect_duplicates(std::span<const ResolvedExchanger> exchangers)
{
  std::map<IpAddress, const DomainName*> seen;
  for (const auto& ex : exchangers)
  {
    for (const auto* list : {&ex.ipv4, &ex.ipv6})
    {
      for (const auto& a : *list)
      {
        const auto [it, inserted] = seen.emplace(a, &ex.exchanger);
        if (!inserted && *it->second != ex.exchanger)
          return true;
      }
    }
  }
  return false;
}

DomainProfile audit(DomainProfile p, std::span<const HostingRule> rules)
{
  refresh_counts(p);
  auto& f = p.flags;
  f = AuditFlags{};

  const auto spf = detect_spf(p.txt);
  f.has_spf = spf.has_spf;
  f.has_spf_literal = spf.has_spf_literal;
  f.spf_deny_all = spf.deny_all;

  if (p.mx.n_m() == 0)
  {
    p.classification = Classification::NoMx;
    return p;
  }
  f.hosting = detect_hosting(p.mx, rules);
  if (is_null_mx(p.mx))
  {
    p.classification = Classification::NullMx;
    return p;
  }

  bool resolution_ok = true;
  std::vector<IpAddress> all;
  for (const auto& ex : p.exchangers)
  {
    if (ex.a_status != QueryStatus::Ok && ex.aaaa_status != QueryStatus::Ok)
      f.has_nxdomain_exchanger = true;
    if (is_transient(ex.a_status) || is_transient(ex.aaaa_status))
      resolution_ok = false;
    if (ex.is_cname_target)
      f.has_cname_exchanger = true;
    if (!ex.exchanger.strict_hostname())
      f.has_nonstrict_exchanger_name = true;
    for (const auto& a : ex.ipv4)
    {
      const auto it = ex.ptr.find(a);
      if (it == ex.ptr.end() || it->second.status != PtrStatus::Found)
        f.has_missing_ptr_v4 = true;
    }
    for (const auto& a : ex.ipv6)
    {
      const auto it = ex.ptr.find(a);
      if (it == ex.ptr.end() || it->second.status != PtrStatus::Found)
        f.has_missing_ptr_v6 = true;
    }
    all.insert(all.end(), ex.ipv4.begin(), ex.ipv4.end());
    all.insert(all.end(), ex.ipv6.begin(), ex.ipv6.end());
  }
  f.has_private_or_local_address = detect_private_or_local(all);
  f.has_duplicate_addresses = detect_duplicates(p.exchangers);

  p.classification = classify(p.mx.n_m(), p.n_a, p.n_abar, resolution_ok);
  return p;
}

} // namespace mxaudit
