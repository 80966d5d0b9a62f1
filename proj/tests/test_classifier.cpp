#include "doctest.h"

#include "oracles.hpp"
#include "test_support.hpp"

#include "mxaudit/classifier.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace mxaudit;
using testing::dn;
using testing::ip;

namespace
{

MxRecordSet mx_of(std::vector<std::pair<std::uint16_t, const char*>> recs)
{
  MxRecordSet s;
  for (auto [p, n] : recs)
    s.records.push_back({p, dn(n), 300, false});
  return s;
}

ResolvedExchanger resolved(const char* name, std::vector<const char*> addrs)
{
  ResolvedExchanger e;
  e.exchanger = dn(name);
  for (auto* a : addrs)
  {
    const auto addr = ip(a);
    (addr.is_v4() ? e.ipv4 : e.ipv6).push_back(addr);
    e.ptr[addr] = PtrOutcome{PtrStatus::Found, {dn(name)}, true};
  }
  e.a_status = e.ipv4.empty() ? QueryStatus::NoRecords : QueryStatus::Ok;
  e.aaaa_status = e.ipv6.empty() ? QueryStatus::NoRecords : QueryStatus::Ok;
  return e;
}

struct Knobs
{
  bool spf{false};
  bool hosted{false};
  bool priv{false};
  bool missing_ptr{false};
  bool cname{false};
  bool nxd{false};
  bool dup{false};
  bool nonstrict{false};
};
constexpr int kKnobs = 8;

Knobs knob(int i)
{
  Knobs k;
  bool* fields[] = {&k.spf, &k.hosted, &k.priv, &k.missing_ptr, &k.cname, &k.nxd, &k.dup, &k.nonstrict};
  *fields[i] = true;
  return k;
}

Knobs merge(Knobs a, const Knobs& b)
{
  a.spf |= b.spf;
  a.hosted |= b.hosted;
  a.priv |= b.priv;
  a.missing_ptr |= b.missing_ptr;
  a.cname |= b.cname;
  a.nxd |= b.nxd;
  a.dup |= b.dup;
  a.nonstrict |= b.nonstrict;
  return a;
}

/// A clean round-robin profile with the requested triggers applied.
DomainProfile build(const Knobs& k)
{
  const std::string main = std::string(k.nonstrict ? "mail_gw." : "mx.") +
                           (k.hosted ? "mail.protection.outlook.com" : "d.tld");
  DomainProfile p;
  p.domain = dn("d.tld");
  p.mx_status = QueryStatus::Ok;
  p.mx.records.push_back({10, dn(main), 300, false});
  if (k.spf)
    p.txt.push_back("v=spf1 mx ~all");
  auto e = resolved(main.c_str(), {"198.51.100.1", k.priv ? "10.0.0.1" : "198.51.100.2"});
  if (k.missing_ptr)
    e.ptr[ip("198.51.100.1")] = PtrOutcome{PtrStatus::NotFound, {}, false};
  e.is_cname_target = k.cname;
  p.exchangers.push_back(e);
  if (k.nxd)
  {
    p.mx.records.push_back({20, dn("gone.d.tld"), 300, false});
    ResolvedExchanger g;
    g.exchanger = dn("gone.d.tld");
    g.a_status = QueryStatus::NxDomain;
    g.aaaa_status = QueryStatus::NxDomain;
    p.exchangers.push_back(g);
  }
  if (k.dup)
  {
    p.mx.records.push_back({30, dn("mx2.d.tld"), 300, false});
    p.exchangers.push_back(resolved("mx2.d.tld", {"198.51.100.1"}));
  }
  return p;
}

void check_flags(const AuditFlags& f, const Knobs& k)
{
  CHECK(f.has_spf == k.spf);
  CHECK(f.has_spf_literal == k.spf);
  CHECK_FALSE(f.spf_deny_all);
  CHECK(f.hosting.empty() == !k.hosted);
  CHECK(f.has_private_or_local_address == k.priv);
  CHECK(f.has_missing_ptr_v4 == k.missing_ptr);
  CHECK_FALSE(f.has_missing_ptr_v6);
  CHECK(f.has_cname_exchanger == k.cname);
  CHECK(f.has_nxdomain_exchanger == k.nxd);
  CHECK(f.has_duplicate_addresses == k.dup);
  CHECK(f.has_nonstrict_exchanger_name == k.nonstrict);
}

} // namespace

TEST_SUITE("classifier")
{
  TEST_CASE("is_null_mx examples")
  {
    CHECK(is_null_mx(mx_of({{0, "."}})));
    CHECK_FALSE(is_null_mx(mx_of({{0, "."}, {10, "mx.x.tld"}})));
    CHECK_FALSE(is_null_mx(mx_of({{10, "."}})));
    CHECK_FALSE(is_null_mx(mx_of({{0, "mx.x.tld"}})));
    CHECK_FALSE(is_null_mx(MxRecordSet{}));
  }

  TEST_CASE("classify examples")
  {
    CHECK(classify(1, 2, 0) == Classification::RoundRobin);
    CHECK(classify(2, 3, 0) == Classification::Hybrid);
    CHECK(classify(2, 2, 0) == Classification::MxBalancing);
    CHECK(classify(1, 1, 1) == Classification::PlainDualStack);
    CHECK(classify(1, 0, 0) == Classification::NonIdentified);
    CHECK(classify(17, 173, 0) == Classification::Hybrid);
    CHECK(classify(1, 1, 0) == Classification::PlainV4Only);
    CHECK(classify(1, 0, 1) == Classification::PlainV6Only);
    CHECK(classify(0, 0, 0) == Classification::NoMx);
    CHECK(classify(2, 0, 0) == Classification::NonIdentified);
    CHECK(classify(1, 2, 0, false) == Classification::NonIdentified);
    CHECK(classify(0, 0, 0, false) == Classification::NoMx);
  }

  TEST_CASE("classify is total and matches the rule table over [0,100]^3")
  {
    std::size_t mismatches = 0;
    for (std::uint64_t m = 0; m <= 100; ++m)
      for (std::uint64_t a = 0; a <= 100; ++a)
        for (std::uint64_t b = 0; b <= 100; ++b)
        {
          const auto c = classify(m, a, b);
          if (to_string(c) != oracle::label(m, a, b))
            ++mismatches;
          if ((m == 0) != (c == Classification::NoMx))
            ++mismatches;
          if (c == Classification::NullMx)
            ++mismatches;
        }
    CHECK(mismatches == 0);
  }

  TEST_CASE("one address family and many of the other is round robin")
  {
    for (std::uint64_t k = 2; k < 50; ++k)
    {
      CHECK(classify(1, 1, k) == Classification::RoundRobin);
      CHECK(classify(1, k, 1) == Classification::RoundRobin);
    }
  }

  TEST_CASE("simple and BLBFO partition the analyzed labels")
  {
    for (auto c : kAnalyzedClassifications)
      CHECK(int(is_plain(c)) + int(is_blbfo(c)) + int(c == Classification::NonIdentified) == 1);
    CHECK_FALSE(is_plain(Classification::NoMx));
    CHECK_FALSE(is_blbfo(Classification::NullMx));
  }

  TEST_CASE("detect_spf examples")
  {
    auto run = [](std::vector<std::string> t) { return detect_spf(t); };
    auto r = run({"v=spf1 include:x.tld ~all"});
    CHECK(r.has_spf);
    CHECK_FALSE(r.deny_all);
    r = run({"v=spf1 -all"});
    CHECK(r.has_spf);
    CHECK(r.deny_all);
    r = run({"verification=abc123"});
    CHECK_FALSE(r.has_spf);
    CHECK_FALSE(r.deny_all);
    r = run({"V=SPF1 -ALL"});
    CHECK(r.has_spf);
    CHECK_FALSE(r.has_spf_literal);
    CHECK(r.deny_all);
    r = run({"v=spf1 a -all"});
    CHECK_FALSE(r.deny_all);
    CHECK_FALSE(run({}).has_spf);
  }

  TEST_CASE("detect_hosting examples")
  {
    const auto rules = default_hosting_rules();
    CHECK(detect_hosting(mx_of({{1, "aspmx.l.google.com"}}), rules) == std::set<std::string>{"Google"});
    CHECK(detect_hosting(mx_of({{0, "domain-tld.mail.protection.outlook.com"}}), rules) ==
          std::set<std::string>{"Microsoft"});
    CHECK(detect_hosting(mx_of({{10, "notgoogle.com"}}), rules).empty());
    CHECK(detect_hosting(mx_of({{10, "google.com.evil.tld"}}), rules).empty());
  }

  TEST_CASE("hosting never matches a partial label")
  {
    const auto rules = default_hosting_rules();
    std::mt19937_64 g(2024);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-";
    const char* suffixes[] = {"google.com", "outlook.com", "googlemail.com"};
    for (int i = 0; i < 1000; ++i)
    {
      std::string prefix;
      const auto len = 1 + g() % 12;
      for (std::size_t k = 0; k < len; ++k)
        prefix += alphabet[g() % 26];
      if (g() % 2)
        prefix = "mx" + std::to_string(i) + "." + prefix;
      const std::string name = prefix + suffixes[g() % 3];
      CHECK(detect_hosting(mx_of({{10, name.c_str()}}), rules).empty());
    }
  }

  TEST_CASE("detect_private_or_local examples and boundaries")
  {
    auto one = [](const char* a) {
      const std::vector<IpAddress> v{ip(a)};
      return detect_private_or_local(v);
    };
    CHECK(one("192.168.1.10"));
    CHECK(one("fd12::1"));
    CHECK_FALSE(one("8.8.8.8"));
    CHECK(one("10.0.0.0"));
    CHECK(one("10.255.255.255"));
    CHECK_FALSE(one("9.255.255.255"));
    CHECK_FALSE(one("11.0.0.0"));
    CHECK(one("172.16.0.0"));
    CHECK(one("172.31.255.255"));
    CHECK_FALSE(one("172.15.255.255"));
    CHECK_FALSE(one("172.32.0.0"));
    CHECK(one("192.168.0.0"));
    CHECK_FALSE(one("192.169.0.0"));
    CHECK(one("127.0.0.1"));
    CHECK(one("fc00::"));
    CHECK(one("fdff:ffff:ffff:ffff:ffff:ffff:ffff:ffff"));
    CHECK_FALSE(one("fe00::"));
    CHECK_FALSE(one("fbff:ffff:ffff:ffff:ffff:ffff:ffff:ffff"));
    CHECK(one("::1"));
    CHECK_FALSE(one("::2"));
    CHECK_FALSE(detect_private_or_local(std::vector<IpAddress>{}));
  }

  TEST_CASE("detect_duplicates examples")
  {
    std::vector<ResolvedExchanger> same{resolved("mx1.d.tld", {"1.2.3.4"}), resolved("mx2.d.tld", {"1.2.3.4"})};
    CHECK(detect_duplicates(same));
    std::vector<ResolvedExchanger> disjoint{resolved("mx1.d.tld", {"1.2.3.4"}), resolved("mx2.d.tld", {"1.2.3.5"})};
    CHECK_FALSE(detect_duplicates(disjoint));
    std::vector<ResolvedExchanger> single{resolved("mx1.d.tld", {"1.2.3.4", "1.2.3.5"})};
    CHECK_FALSE(detect_duplicates(single));
  }

  TEST_CASE("audit of a clean round-robin profile")
  {
    const auto p = audit(build({}), default_hosting_rules());
    CHECK(p.classification == Classification::RoundRobin);
    check_flags(p.flags, {});
  }

  TEST_CASE("audit with one unresolvable exchanger of three")
  {
    DomainProfile p;
    p.domain = dn("d.tld");
    p.mx_status = QueryStatus::Ok;
    p.mx = mx_of({{10, "mx1.d.tld"}, {20, "mx2.d.tld"}, {30, "mx3.d.tld"}});
    p.exchangers = {resolved("mx1.d.tld", {"198.51.100.1"}), resolved("mx2.d.tld", {"198.51.100.2"})};
    ResolvedExchanger gone;
    gone.exchanger = dn("mx3.d.tld");
    gone.a_status = QueryStatus::NxDomain;
    gone.aaaa_status = QueryStatus::NxDomain;
    p.exchangers.push_back(gone);
    const auto out = audit(p, default_hosting_rules());
    CHECK(out.flags.has_nxdomain_exchanger);
    // manual rule application: n_m = 3, n_a = 2, n_abar = 0, so not balanced, but addresses exist
    CHECK(out.classification == Classification::Hybrid);
    CHECK(out.n_a == 2);
  }

  TEST_CASE("audit of Null MX profile")
  {
    DomainProfile p;
    p.domain = dn("null.tld");
    p.mx_status = QueryStatus::Ok;
    p.mx = mx_of({{0, "."}});
    p.txt = {"v=spf1 -all"};
    const auto out = audit(p, default_hosting_rules());
    CHECK(out.classification == Classification::NullMx);
    CHECK(out.flags.spf_deny_all);
    const auto& f = out.flags;
    CHECK(f.hosting.empty());
    CHECK_FALSE(f.has_nxdomain_exchanger);
    CHECK_FALSE(f.has_private_or_local_address);
    CHECK_FALSE(f.has_missing_ptr_v4);
    CHECK_FALSE(f.has_missing_ptr_v6);
    CHECK_FALSE(f.has_duplicate_addresses);
    CHECK_FALSE(f.has_cname_exchanger);
    CHECK_FALSE(f.has_nonstrict_exchanger_name);
  }

  TEST_CASE("transient address failure forces NonIdentified")
  {
    auto p = build({});
    p.exchangers[0].aaaa_status = QueryStatus::Timeout;
    CHECK(audit(p, default_hosting_rules()).classification == Classification::NonIdentified);
  }

  TEST_CASE("flag detectors are independent under pairwise perturbation")
  {
    const auto rules = default_hosting_rules();
    for (int i = 0; i < kKnobs; ++i)
    {
      check_flags(audit(build(knob(i)), rules).flags, knob(i));
      for (int j = i + 1; j < kKnobs; ++j)
      {
        const auto k = merge(knob(i), knob(j));
        CAPTURE(i);
        CAPTURE(j);
        check_flags(audit(build(k), rules).flags, k);
      }
    }
  }

  TEST_CASE("hosting rules load from JSON")
  {
    const auto path = std::filesystem::temp_directory_path() / "mxaudit_rules.json";
    std::ofstream(path) << R"([{"provider": "Example", "suffixes": ["mail.example.net"]}])";
    const auto rules = load_hosting_rules(path);
    REQUIRE(rules.size() == 1);
    CHECK(detect_hosting(mx_of({{1, "in1.mail.example.net"}}), rules) == std::set<std::string>{"Example"});
    CHECK(detect_hosting(mx_of({{1, "aspmx.l.google.com"}}), rules).empty());
    std::filesystem::remove(path);
  }
}
