#include "mxaudit/resolver.hpp"

#include "mxaudit/classifier.hpp"
#include "mxaudit/errors.hpp"

#include <charconv>

namespace mxaudit
{

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

std::optional<DomainName> try_name(std::string_view s)
{
  try
  {
    return DomainName::parse(s);
  }
  catch (const MalformedName&)
  {
    return std::nullopt;
  }
}

void collect_addresses(const QueryResult& r, IpFamily family, std::vector<IpAddress>& out)
{
  if (r.status != QueryStatus::Ok)
    return;
  for (const auto& rec : r.records)
  {
    auto addr = IpAddress::parse(trim(rec.rdata));
    if (addr && addr->family() == family)
      out.push_back(*addr);
  }
}

} // namespace

MxRecord parse_mx_rdata(std::string_view rdata, std::uint32_t ttl)
{
  MxRecord rec;
  rec.ttl = ttl;
  rdata = trim(rdata);
  const auto sp = rdata.find_first_of(" \t");
  const std::string_view pref_text = rdata.substr(0, sp);
  const std::string_view target = sp == std::string_view::npos ? std::string_view{} : trim(rdata.substr(sp));

  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(pref_text.data(), pref_text.data() + pref_text.size(), value);
  if (ec != std::errc{} || ptr != pref_text.data() + pref_text.size() || value > 0xffff)
    rec.malformed = true;
  else
    rec.preference = static_cast<std::uint16_t>(value);

  if (target == ".")
  {
    rec.exchanger = DomainName::root();
    if (rec.preference != 0)
      rec.malformed = true;
  }
  else if (auto name = try_name(target))
  {
    rec.exchanger = *name;
  }
  else
  {
    rec.exchanger = DomainName::root();
    rec.malformed = true;
  }
  return rec;
}

PtrOutcome ptr_lookup(const IpAddress& address, const DomainName& owner, QueryBackend& backend)
{
  PtrOutcome out;
  const auto r = backend.query(DomainName::parse(address.reverse_name()), RrType::PTR);
  switch (r.status)
  {
  case QueryStatus::Ok:
    out.status = PtrStatus::Found;
    for (const auto& rec : r.records)
      if (auto name = try_name(trim(rec.rdata)))
        out.names.push_back(*name);
    break;
  case QueryStatus::NxDomain:
  case QueryStatus::NoRecords:
    out.status = PtrStatus::NotFound;
    break;
  case QueryStatus::Timeout:
  case QueryStatus::ServFail:
    out.status = PtrStatus::Error;
    break;
  }
  for (const auto& n : out.names)
    if (n == owner)
      out.forward_confirmed = true;
  return out;
}

DomainProfile resolve_domain(const DomainName& domain, QueryBackend& backend)
{
  DomainProfile profile;
  profile.domain = domain;

  // Step 1: MX and TXT for the domain itself.
  const auto mx = backend.query(domain, RrType::MX);
  const auto txt = backend.query(domain, RrType::TXT);
  profile.mx_status = mx.status;
  profile.txt_status = txt.status;
  if (txt.status == QueryStatus::Ok)
    for (const auto& rec : txt.records)
      profile.txt.push_back(rec.rdata);

  if (mx.status != QueryStatus::Ok)
    return profile;
  for (const auto& rec : mx.records)
    profile.mx.records.push_back(parse_mx_rdata(rec.rdata, rec.ttl));

  if (is_null_mx(profile.mx))
    return profile;

  // Step 2: A and AAAA per distinct exchanger.
  for (const auto& name : profile.mx.distinct_exchangers())
  {
    ResolvedExchanger ex;
    ex.exchanger = name;
    const auto a = backend.query(name, RrType::A);
    const auto aaaa = backend.query(name, RrType::AAAA);
    ex.a_status = a.status;
    ex.aaaa_status = aaaa.status;
    ex.is_cname_target = a.is_cname || aaaa.is_cname;
    collect_addresses(a, IpFamily::V4, ex.ipv4);
    collect_addresses(aaaa, IpFamily::V6, ex.ipv6);
    profile.exchangers.push_back(std::move(ex));
  }

  // Step 3: PTR for every address received.
  for (auto& ex : profile.exchangers)
  {
    for (const auto* list : {&ex.ipv4, &ex.ipv6})
      for (const auto& addr : *list)
        if (!ex.ptr.contains(addr))
          ex.ptr.emplace(addr, ptr_lookup(addr, ex.exchanger, backend));
  }

  refresh_counts(profile);
  return profile;
}

} // namespace mxaudit
