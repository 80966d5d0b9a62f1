#include "mxaudit/mta_sim.hpp"

#include "mxaudit/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mxaudit::sim
{

namespace
{

/// Entry indices by ascending preference, ties shuffled.
std::vector<std::size_t> exchanger_order(const ServerPool& pool, Rng& rng)
{
  std::vector<std::size_t> idx(pool.entries.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pool.entries[a].preference < pool.entries[b].preference;
  });
  for (std::size_t i = 0; i < idx.size();)
  {
    std::size_t j = i;
    while (j < idx.size() && pool.entries[idx[j]].preference == pool.entries[idx[i]].preference)
      ++j;
    shuffle(idx.begin() + static_cast<std::ptrdiff_t>(i), idx.begin() + static_cast<std::ptrdiff_t>(j), rng);
    i = j;
  }
  return idx;
}

} // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
  if (bound == 0)
    throw std::invalid_argument("uniform_below: bound must be positive");
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x;
  do
    x = rng();
  while (x > limit);
  return x % bound;
}

void ServerPool::validate() const
{
  if (entries.empty())
    throw std::invalid_argument("server pool has no exchangers");
  for (const auto& e : entries)
  {
    if (e.addresses.empty())
      throw std::invalid_argument("exchanger without addresses: " + e.exchanger.text());
    if (e.available.size() != e.addresses.size())
      throw std::invalid_argument("availability vector mismatch for " + e.exchanger.text());
  }
}

bool ServerPool::is_available(const DomainName& exchanger, const IpAddress& addr) const
{
  for (const auto& e : entries)
  {
    if (e.exchanger != exchanger)
      continue;
    for (std::size_t i = 0; i < e.addresses.size(); ++i)
      if (e.addresses[i] == addr)
        return e.available[i];
  }
  return false;
}

std::vector<Candidate> mta_select(const ServerPool& pool, Rng& rng)
{
  std::vector<Candidate> out;
  for (auto i : exchanger_order(pool, rng))
    for (const auto& a : pool.entries[i].addresses)
      out.push_back({pool.entries[i].exchanger, a});
  return out;
}

std::vector<Candidate> mta_select(const ServerPool& pool, std::uint64_t rng_seed)
{
  Rng rng(rng_seed);
  return mta_select(pool, rng);
}

std::vector<IpAddress> RoundRobinState::answer(ServerPolicy policy, Rng* rng)
{
  std::vector<IpAddress> out = order_;
  if (order_.size() > 1)
  {
    if (policy == ServerPolicy::RandomPermutation && rng != nullptr)
      shuffle(order_.begin(), order_.end(), *rng);
    else
      std::rotate(order_.begin(), order_.begin() + 1, order_.end());
  }
  ++rotation_;
  return out;
}

std::pair<std::vector<IpAddress>, RoundRobinState> round_robin_answer(RoundRobinState state)
{
  auto answer = state.answer(ServerPolicy::Rotate);
  return {std::move(answer), std::move(state)};
}

TrialReport run_trials(const ServerPool& pool, ClientPolicy client, std::uint64_t n_trials, std::uint64_t seed,
                       ServerPolicy server)
{
  pool.validate();
  if (n_trials == 0)
    throw std::invalid_argument("run_trials: n_trials must be positive");

  Rng rng(seed);
  std::vector<RoundRobinState> states;
  states.reserve(pool.entries.size());
  for (const auto& e : pool.entries)
    states.emplace_back(e.addresses);

  TrialReport report;
  report.trials = n_trials;
  for (const auto& e : pool.entries)
  {
    report.exchanger_counts[e.exchanger.text()];
    for (const auto& a : e.addresses)
      report.selection_counts[a.to_string()];
  }

  for (std::uint64_t t = 0; t < n_trials; ++t)
  {
    bool delivered = false;
    for (auto i : exchanger_order(pool, rng))
    {
      const auto& entry = pool.entries[i];
      const auto answer = states[i].answer(server, &rng);
      const std::size_t start = client == ClientPolicy::RandomAddress ? uniform_below(rng, answer.size()) : 0;
      for (std::size_t k = 0; k < answer.size(); ++k)
      {
        const auto& addr = answer[(start + k) % answer.size()];
        if (!pool.is_available(entry.exchanger, addr))
          continue;
        ++report.selection_counts[addr.to_string()];
        ++report.exchanger_counts[entry.exchanger.text()];
        delivered = true;
        break;
      }
      if (delivered)
        break;
    }
    if (!delivered)
      ++report.failed_deliveries;
  }
  return report;
}

Json to_json(const TrialReport& r)
{
  Json j;
  j["trials"] = r.trials;
  j["selection_counts"] = Json(r.selection_counts);
  j["exchanger_counts"] = Json(r.exchanger_counts);
  j["failed_deliveries"] = r.failed_deliveries;
  return j;
}

ServerPool load_pool(const FixtureBackend& fixtures, std::optional<DomainName> domain)
{
  if (!domain)
  {
    for (const auto& key : fixtures.keys())
    {
      if (key.size() < 3 || key.compare(key.size() - 3, 3, " MX") != 0)
        continue;
      if (domain)
        throw std::invalid_argument("pool file has several MX entries; name the domain");
      domain = DomainName::parse(key.substr(0, key.size() - 3));
    }
    if (!domain)
      throw std::invalid_argument("pool file has no MX entry");
  }

  const auto* mx_entry = fixtures.find(*domain, RrType::MX);
  if (mx_entry == nullptr || mx_entry->result.status != QueryStatus::Ok)
    throw std::invalid_argument("no MX records for " + domain->text());

  MxRecordSet mx;
  for (const auto& rec : mx_entry->result.records)
    mx.records.push_back(parse_mx_rdata(rec.rdata, rec.ttl));
  if (is_null_mx(mx))
    throw std::invalid_argument(domain->text() + " publishes a Null MX");

  ServerPool pool;
  for (const auto& rec : mx.records)
  {
    if (rec.exchanger.is_root())
      continue;
    auto it = std::find_if(pool.entries.begin(), pool.entries.end(),
                           [&](const PoolEntry& e) { return e.exchanger == rec.exchanger; });
    if (it != pool.entries.end())
    {
      it->preference = std::min(it->preference, rec.preference);
      continue;
    }
    PoolEntry entry;
    entry.exchanger = rec.exchanger;
    entry.preference = rec.preference;
    for (auto type : {RrType::A, RrType::AAAA})
    {
      const auto* e = fixtures.find(rec.exchanger, type);
      if (e == nullptr || e->result.status != QueryStatus::Ok)
        continue;
      for (const auto& r : e->result.records)
      {
        const auto addr = IpAddress::parse(r.rdata);
        if (!addr)
          continue;
        entry.addresses.push_back(*addr);
        const bool down = std::any_of(e->unavailable.begin(), e->unavailable.end(), [&](const std::string& u) {
          const auto parsed = IpAddress::parse(u);
          return parsed && *parsed == *addr;
        });
        entry.available.push_back(!down);
      }
    }
    if (!entry.addresses.empty())
      pool.entries.push_back(std::move(entry));
  }
  pool.validate();
  return pool;
}

} // namespace mxaudit::sim
