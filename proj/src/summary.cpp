#include "mxaudit/summary.hpp"

#include "mxaudit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mxaudit
{

namespace
{

double share(std::uint64_t num, std::uint64_t den)
{
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> opt_share(std::uint64_t num, std::uint64_t den)
{
  if (den == 0)
    return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

Json opt_json(const std::optional<double>& v)
{
  return v ? Json(*v) : Json(nullptr);
}

bool is_configuration(Classification c)
{
  return is_plain(c) || is_blbfo(c);
}

} // namespace

std::string_view to_string(ConfigGroup g) noexcept
{
  switch (g)
  {
  case ConfigGroup::Simple:
    return "Simple";
  case ConfigGroup::RoundRobin:
    return "RoundRobin";
  case ConfigGroup::MxBalancing:
    return "MxBalancing";
  case ConfigGroup::Hybrid:
    return "Hybrid";
  }
  return "?";
}

std::optional<ConfigGroup> config_group_of(Classification c) noexcept
{
  if (is_plain(c))
    return ConfigGroup::Simple;
  switch (c)
  {
  case Classification::RoundRobin:
    return ConfigGroup::RoundRobin;
  case Classification::MxBalancing:
    return ConfigGroup::MxBalancing;
  case Classification::Hybrid:
    return ConfigGroup::Hybrid;
  default:
    return std::nullopt;
  }
}

CorpusSummary summarize(std::span<const DomainProfile> profiles, ExcludedCounts extra)
{
  CorpusSummary s;
  s.k_errored = extra.errored;
  s.k_nomx = extra.no_mx;
  s.k_nullmx = extra.null_mx;

  for (auto c : kAnalyzedClassifications)
    s.class_counts[c] = 0;
  for (auto g : {ConfigGroup::Simple, ConfigGroup::RoundRobin, ConfigGroup::MxBalancing, ConfigGroup::Hybrid})
    s.hosting_crosstab[g] = HostingColumn{};

  std::vector<double> nm, na, nabar, stddevs, ttls;
  std::map<Classification, std::vector<double>> ranks;
  std::uint64_t v6 = 0, equal_pref = 0, ttl_low = 0, hosted = 0;
  std::uint64_t spf = 0, spf_literal = 0, deny_all = 0;
  std::uint64_t plain = 0, blbfo = 0, spf_plain = 0, spf_blbfo = 0;
  std::uint64_t ptr4 = 0, ptr6 = 0, nxd = 0, dup = 0, cname = 0;

  for (const auto& p : profiles)
  {
    if (p.errored())
    {
      ++s.k_errored;
      continue;
    }
    if (p.classification == Classification::NoMx)
    {
      ++s.k_nomx;
      continue;
    }
    if (p.classification == Classification::NullMx)
    {
      ++s.k_nullmx;
      continue;
    }

    ++s.k;
    ++s.class_counts[p.classification];
    nm.push_back(static_cast<double>(p.mx.n_m()));
    na.push_back(static_cast<double>(p.n_a));
    nabar.push_back(static_cast<double>(p.n_abar));
    if (p.n_abar > 0)
      ++v6;

    if (p.mx.n_m() > 1)
    {
      std::vector<double> prefs;
      for (auto pref : p.mx.preferences())
        prefs.push_back(pref);
      const double sd = pref_stddev(prefs);
      stddevs.push_back(sd);
      if (sd == 0.0)
        ++equal_pref;
    }
    if (const auto ttl = p.mx.set_ttl())
    {
      ttls.push_back(*ttl);
      if (*ttl < 2000)
        ++ttl_low;
    }

    const bool is_hosted = !p.flags.hosting.empty();
    if (is_hosted)
      ++hosted;
    if (const auto g = config_group_of(p.classification))
    {
      auto& col = s.hosting_crosstab[*g];
      ++col.domains;
      if (is_hosted)
        ++col.hosted;
    }

    if (p.median_rank)
      ranks[p.classification].push_back(*p.median_rank);

    const auto& f = p.flags;
    spf += f.has_spf;
    spf_literal += f.has_spf_literal;
    deny_all += f.spf_deny_all;
    if (is_plain(p.classification))
    {
      ++plain;
      spf_plain += f.has_spf;
    }
    else if (is_blbfo(p.classification))
    {
      ++blbfo;
      spf_blbfo += f.has_spf;
    }

    bool priv4 = false, priv6 = false;
    for (const auto& ex : p.exchangers)
    {
      for (const auto& a : ex.ipv4)
        priv4 = priv4 || is_private_or_local(a);
      for (const auto& a : ex.ipv6)
        priv6 = priv6 || is_private_or_local(a);
    }
    s.private_v4_domains += priv4;
    s.private_v6_domains += priv6;
    ptr4 += f.has_missing_ptr_v4;
    ptr6 += f.has_missing_ptr_v6;
    nxd += f.has_nxdomain_exchanger;
    dup += f.has_duplicate_addresses;
    cname += f.has_cname_exchanger;
  }

  s.k_w = s.k_nomx + s.k_errored;
  s.k_q = s.k + s.k_w + s.k_nullmx;
  if (s.k_q == 0)
    throw EmptyCorpus("no domains to summarize");

  for (const auto& [c, n] : s.class_counts)
    s.class_shares[c] = share(n, s.k);
  s.simple_share = share(plain, s.k);
  s.blbfo_share = share(blbfo, s.k);

  if (nm.size() >= 2)
  {
    try
    {
      s.corr_mx_a = pearson(nm, na);
    }
    catch (const DegenerateInput&)
    {
    }
    try
    {
      s.corr_mx_aaaa = pearson(nm, nabar);
    }
    catch (const DegenerateInput&)
    {
    }
  }
  s.mx_count_hist = make_histogram(nm, integer_edges(1, 20));
  s.a_count_hist = make_histogram(na, integer_edges(0, 20));
  s.aaaa_count_hist = make_histogram(nabar, integer_edges(0, 20));
  s.ipv6_share = share(v6, s.k);

  s.multi_mx_domains = stddevs.size();
  const double max_sd = stddevs.empty() ? 0.0 : *std::max_element(stddevs.begin(), stddevs.end());
  s.pref_stddev_hist = make_histogram(stddevs, uniform_edges(5.0, max_sd));
  s.equal_pref_share = opt_share(equal_pref, stddevs.size());

  s.ttl_hist = make_histogram(ttls, default_ttl_edges());
  s.ttl_below_2000_share = opt_share(ttl_low, ttls.size());

  s.hosting_share = share(hosted, s.k);
  for (auto& [g, col] : s.hosting_crosstab)
  {
    col.hosting_share = opt_share(col.hosted, col.domains);
    col.others_share = opt_share(col.domains - col.hosted, col.domains);
  }

  std::vector<std::vector<double>> kw_groups;
  for (const auto& [c, r] : ranks)
  {
    s.rank_medians[c] = median(r);
    if (is_configuration(c))
      kw_groups.push_back(r);
  }
  std::size_t kw_n = 0;
  for (const auto& g : kw_groups)
    kw_n += g.size();
  if (kw_groups.size() >= 2 && kw_n >= 3)
  {
    try
    {
      s.kruskal_wallis = kruskal_wallis(kw_groups);
    }
    catch (const DegenerateInput&)
    {
    }
  }

  s.spf_share = share(spf, s.k);
  s.spf_literal_share = share(spf_literal, s.k);
  s.spf_deny_all_share = share(deny_all, s.k);
  s.spf_share_simple = opt_share(spf_plain, plain);
  s.spf_share_blbfo = opt_share(spf_blbfo, blbfo);

  s.missing_ptr_v4_share = share(ptr4, s.k);
  s.missing_ptr_v6_share = share(ptr6, s.k);
  s.nxdomain_exchanger_share = share(nxd, s.k);
  s.duplicate_address_share = share(dup, s.k);
  s.cname_exchanger_share = share(cname, s.k);
  return s;
}

Json to_json(const Histogram& h)
{
  Json edges = Json::array();
  for (double e : h.bin_edges)
    edges.push_back(std::isinf(e) ? Json(nullptr) : number_json(e));
  Json j;
  j["bin_edges"] = std::move(edges);
  j["counts"] = h.counts;
  return j;
}

Json to_json(const CorpusSummary& s)
{
  Json j;
  j["k_q"] = s.k_q;
  j["k_w"] = s.k_w;
  j["k_nomx"] = s.k_nomx;
  j["k_errored"] = s.k_errored;
  j["k_nullmx"] = s.k_nullmx;
  j["k"] = s.k;

  Json counts = Json::object();
  Json shares = Json::object();
  for (auto c : kAnalyzedClassifications)
  {
    const std::string name(to_string(c));
    counts[name] = s.class_counts.at(c);
    shares[name] = s.class_shares.at(c);
  }
  j["class_counts"] = std::move(counts);
  j["class_shares"] = std::move(shares);
  j["simple_share"] = s.simple_share;
  j["blbfo_share"] = s.blbfo_share;
  j["non_identified_rule"] = "inferred: n_m >= 1 with no usable address, or transient address-lookup failure";

  j["corr_mx_a"] = opt_json(s.corr_mx_a);
  j["corr_mx_aaaa"] = opt_json(s.corr_mx_aaaa);
  j["mx_count_hist"] = to_json(s.mx_count_hist);
  j["a_count_hist"] = to_json(s.a_count_hist);
  j["aaaa_count_hist"] = to_json(s.aaaa_count_hist);
  j["ipv6_share"] = s.ipv6_share;

  j["multi_mx_domains"] = s.multi_mx_domains;
  j["pref_stddev_hist"] = to_json(s.pref_stddev_hist);
  j["equal_pref_share"] = opt_json(s.equal_pref_share);
  j["ttl_hist"] = to_json(s.ttl_hist);
  j["ttl_below_2000_share"] = opt_json(s.ttl_below_2000_share);

  j["hosting_share"] = s.hosting_share;
  Json cross = Json::object();
  for (const auto& [g, col] : s.hosting_crosstab)
  {
    Json cj;
    cj["domains"] = col.domains;
    cj["hosted"] = col.hosted;
    cj["hosting"] = opt_json(col.hosting_share);
    cj["others"] = opt_json(col.others_share);
    cross[std::string(to_string(g))] = std::move(cj);
  }
  j["hosting_crosstab"] = std::move(cross);

  Json medians = Json::object();
  for (const auto& [c, m] : s.rank_medians)
    medians[std::string(to_string(c))] = number_json(m);
  j["rank_medians"] = std::move(medians);
  if (s.kruskal_wallis)
  {
    Json kw;
    kw["h"] = s.kruskal_wallis->h;
    kw["p_value"] = s.kruskal_wallis->p_value;
    kw["df"] = s.kruskal_wallis->df;
    j["kruskal_wallis"] = std::move(kw);
  }
  else
  {
    j["kruskal_wallis"] = nullptr;
  }

  j["spf_share"] = s.spf_share;
  j["spf_literal_share"] = s.spf_literal_share;
  j["spf_deny_all_share"] = s.spf_deny_all_share;
  j["spf_share_simple"] = opt_json(s.spf_share_simple);
  j["spf_share_blbfo"] = opt_json(s.spf_share_blbfo);

  j["private_v4_domains"] = s.private_v4_domains;
  j["private_v6_domains"] = s.private_v6_domains;
  j["missing_ptr_v4_share"] = s.missing_ptr_v4_share;
  j["missing_ptr_v6_share"] = s.missing_ptr_v6_share;
  j["nxdomain_exchanger_share"] = s.nxdomain_exchanger_share;
  j["duplicate_address_share"] = s.duplicate_address_share;
  j["cname_exchanger_share"] = s.cname_exchanger_share;
  return j;
}

} // namespace mxaudit
