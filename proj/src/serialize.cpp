#include "mxaudit/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace mxaudit
{

namespace
{

std::string addr_text(const IpAddress& a) { return a.to_string(); }

IpAddress addr_from(const Json& j)
{
  auto a = IpAddress::parse(j.get<std::string>());
  if (!a)
    throw std::invalid_argument("bad address: " + j.get<std::string>());
  return *a;
}

DomainName name_from(const Json& j)
{
  const auto s = j.get<std::string>();
  return s == "." ? DomainName::root() : DomainName::parse(s);
}

QueryStatus status_from(const Json& j)
{
  auto s = query_status_from_string(j.get<std::string>());
  if (!s)
    throw std::invalid_argument("bad query status: " + j.get<std::string>());
  return *s;
}

Json to_json(const ResolvedExchanger& ex)
{
  Json j;
  j["exchanger"] = ex.exchanger.text();
  Json v4 = Json::array();
  for (const auto& a : ex.ipv4)
    v4.push_back(addr_text(a));
  j["ipv4"] = std::move(v4);
  Json v6 = Json::array();
  for (const auto& a : ex.ipv6)
    v6.push_back(addr_text(a));
  j["ipv6"] = std::move(v6);
  Json ptr = Json::object();
  for (const auto& [addr, outcome] : ex.ptr)
  {
    Json names = Json::array();
    for (const auto& n : outcome.names)
      names.push_back(n.text());
    Json o;
    o["status"] = std::string(to_string(outcome.status));
    o["names"] = std::move(names);
    o["forward_confirmed"] = outcome.forward_confirmed;
    ptr[addr_text(addr)] = std::move(o);
  }
  j["ptr"] = std::move(ptr);
  j["a_status"] = std::string(to_string(ex.a_status));
  j["aaaa_status"] = std::string(to_string(ex.aaaa_status));
  j["is_cname_target"] = ex.is_cname_target;
  return j;
}

ResolvedExchanger exchanger_from(const Json& j)
{
  ResolvedExchanger ex;
  ex.exchanger = name_from(j.at("exchanger"));
  for (const auto& a : j.at("ipv4"))
    ex.ipv4.push_back(addr_from(a));
  for (const auto& a : j.at("ipv6"))
    ex.ipv6.push_back(addr_from(a));
  for (const auto& [key, o] : j.at("ptr").items())
  {
    PtrOutcome p;
    auto st = ptr_status_from_string(o.at("status").get<std::string>());
    if (!st)
      throw std::invalid_argument("bad ptr status");
    p.status = *st;
    for (const auto& n : o.at("names"))
      p.names.push_back(name_from(n));
    p.forward_confirmed = o.at("forward_confirmed").get<bool>();
    ex.ptr.emplace(addr_from(Json(key)), std::move(p));
  }
  ex.a_status = status_from(j.at("a_status"));
  ex.aaaa_status = status_from(j.at("aaaa_status"));
  ex.is_cname_target = j.at("is_cname_target").get<bool>();
  return ex;
}

} // namespace

Json number_json(double v)
{
  if (std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 9.0e15)
    return Json(static_cast<std::int64_t>(v));
  return Json(v);
}

Json to_json(const DomainProfile& p)
{
  Json j;
  j["domain"] = p.domain.text();
  j["median_rank"] = p.median_rank ? number_json(*p.median_rank) : Json(nullptr);
  j["mx_status"] = std::string(to_string(p.mx_status));
  j["txt_status"] = std::string(to_string(p.txt_status));

  Json records = Json::array();
  for (const auto& r : p.mx.records)
  {
    Json rj;
    rj["preference"] = r.preference;
    rj["exchanger"] = r.exchanger.text();
    rj["ttl"] = r.ttl;
    rj["malformed"] = r.malformed;
    records.push_back(std::move(rj));
  }
  Json mx;
  mx["records"] = std::move(records);
  mx["n_m"] = p.mx.n_m();
  j["mx"] = std::move(mx);

  Json exs = Json::array();
  for (const auto& ex : p.exchangers)
    exs.push_back(to_json(ex));
  j["exchangers"] = std::move(exs);
  j["txt"] = p.txt;
  j["n_a"] = p.n_a;
  j["n_abar"] = p.n_abar;
  j["classification"] = std::string(to_string(p.classification));

  const auto& f = p.flags;
  Json fj;
  fj["has_spf"] = f.has_spf;
  fj["has_spf_literal"] = f.has_spf_literal;
  fj["spf_deny_all"] = f.spf_deny_all;
  fj["hosting"] = Json(f.hosting);
  fj["has_nxdomain_exchanger"] = f.has_nxdomain_exchanger;
  fj["has_private_or_local_address"] = f.has_private_or_local_address;
  fj["has_missing_ptr_v4"] = f.has_missing_ptr_v4;
  fj["has_missing_ptr_v6"] = f.has_missing_ptr_v6;
  fj["has_duplicate_addresses"] = f.has_duplicate_addresses;
  fj["has_cname_exchanger"] = f.has_cname_exchanger;
  fj["has_nonstrict_exchanger_name"] = f.has_nonstrict_exchanger_name;
  j["flags"] = std::move(fj);
  return j;
}

DomainProfile profile_from_json(const Json& j)
{
  DomainProfile p;
  try
  {
    p.domain = DomainName::parse(j.at("domain").get<std::string>());
    if (!j.at("median_rank").is_null())
      p.median_rank = j.at("median_rank").get<double>();
    p.mx_status = status_from(j.at("mx_status"));
    p.txt_status = status_from(j.at("txt_status"));

    const auto& mx = j.at("mx");
    for (const auto& rj : mx.at("records"))
    {
      MxRecord r;
      r.preference = rj.at("preference").get<std::uint16_t>();
      r.exchanger = name_from(rj.at("exchanger"));
      r.ttl = rj.at("ttl").get<std::uint32_t>();
      r.malformed = rj.at("malformed").get<bool>();
      p.mx.records.push_back(std::move(r));
    }
    if (mx.at("n_m").get<std::size_t>() != p.mx.n_m())
      throw std::invalid_argument("n_m disagrees with record count");

    for (const auto& ej : j.at("exchangers"))
      p.exchangers.push_back(exchanger_from(ej));
    p.txt = j.at("txt").get<std::vector<std::string>>();
    p.n_a = j.at("n_a").get<std::uint64_t>();
    p.n_abar = j.at("n_abar").get<std::uint64_t>();
    auto cls = classification_from_string(j.at("classification").get<std::string>());
    if (!cls)
      throw std::invalid_argument("bad classification");
    p.classification = *cls;

    const auto& fj = j.at("flags");
    auto& f = p.flags;
    f.has_spf = fj.at("has_spf").get<bool>();
    f.has_spf_literal = fj.at("has_spf_literal").get<bool>();
    f.spf_deny_all = fj.at("spf_deny_all").get<bool>();
    f.hosting = fj.at("hosting").get<std::set<std::string>>();
    f.has_nxdomain_exchanger = fj.at("has_nxdomain_exchanger").get<bool>();
    f.has_private_or_local_address = fj.at("has_private_or_local_address").get<bool>();
    f.has_missing_ptr_v4 = fj.at("has_missing_ptr_v4").get<bool>();
    f.has_missing_ptr_v6 = fj.at("has_missing_ptr_v6").get<bool>();
    f.has_duplicate_addresses = fj.at("has_duplicate_addresses").get<bool>();
    f.has_cname_exchanger = fj.at("has_cname_exchanger").get<bool>();
    f.has_nonstrict_exchanger_name = fj.at("has_nonstrict_exchanger_name").get<bool>();
  }
  catch (const nlohmann::json::exception& e)
  {
    throw std::invalid_argument(std::string("profile schema: ") + e.what());
  }
  return p;
}

std::string to_jsonl_line(const DomainProfile& profile)
{
  return to_json(profile).dump();
}

DomainProfile parse_jsonl_line(std::string_view line)
{
  return profile_from_json(Json::parse(line));
}

} // namespace mxaudit
