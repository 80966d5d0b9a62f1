#pragma once

#include "mxaudit/fixture_backend.hpp"
#include "mxaudit/model.hpp"
#include "mxaudit/serialize.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mxaudit::sim
{

/// \brief Seeded generator. mt19937_64 output is fully specified by the
/// standard, so every draw below is reproducible across platforms.
using Rng = std::mt19937_64;

/// \brief Unbiased draw from [0, bound) by rejection; bound > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// \brief Fisher-Yates over [first, last).
template <typename It>
void shuffle(It first, It last, Rng& rng)
{
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i)
  {
    const auto j = uniform_below(rng, i);
    std::iter_swap(first + static_cast<std::ptrdiff_t>(i - 1), first + static_cast<std::ptrdiff_t>(j));
  }
}

struct PoolEntry
{
  DomainName exchanger;
  std::uint16_t preference{0};
  std::vector<IpAddress> addresses;
  std::vector<bool> available;   ///< parallel to addresses
};

/// \brief Exchangers of one domain. Invariant: non-empty; every entry has addresses.
struct ServerPool
{
  std::vector<PoolEntry> entries;

  /// \brief Throws std::invalid_argument if the invariant does not hold.
  void validate() const;

  bool is_available(const DomainName& exchanger, const IpAddress& addr) const;
};

struct Candidate
{
  DomainName exchanger;
  IpAddress address;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// \brief Client-side ordering: ascending preference, equal-preference
/// exchangers in uniformly random order, addresses of one exchanger kept in
/// served order.
std::vector<Candidate> mta_select(const ServerPool& pool, Rng& rng);
std::vector<Candidate> mta_select(const ServerPool& pool, std::uint64_t rng_seed);

/// \brief How the authoritative side orders a multi-address answer.
enum class ServerPolicy : std::uint8_t
{
  Rotate,              ///< classic round-robin: rotate left by one per query
  RandomPermutation
};

class RoundRobinState
{
public:
  explicit RoundRobinState(std::vector<IpAddress> addresses) : order_(std::move(addresses)) {}

  const std::vector<IpAddress>& order() const noexcept { return order_; }
  std::uint64_t rotation_index() const noexcept { return rotation_; }

  /// \brief Current order; the state then advances (rotate, or reshuffle with \p rng).
  std::vector<IpAddress> answer(ServerPolicy policy = ServerPolicy::Rotate, Rng* rng = nullptr);

private:
  std::vector<IpAddress> order_;
  std::uint64_t rotation_{0};
};

/// \brief Functional form: (answer, next state) under the rotate policy.
std::pair<std::vector<IpAddress>, RoundRobinState> round_robin_answer(RoundRobinState state);

enum class ClientPolicy : std::uint8_t
{
  FirstAddress,
  RandomAddress
};

struct TrialReport
{
  std::uint64_t trials{0};
  std::map<std::string, std::uint64_t> selection_counts;   ///< by address text
  std::map<std::string, std::uint64_t> exchanger_counts;   ///< by exchanger name
  std::uint64_t failed_deliveries{0};
};

Json to_json(const TrialReport& r);

/// \brief Deliver \p n_trials messages and count where they land.
///
/// Each trial asks every exchanger it tries for addresses, which advances that
/// exchanger's round-robin state. FirstAddress tries the served order;
/// RandomAddress starts at a random position and wraps. Unavailable addresses
/// are skipped; a trial with no available candidate is a failed delivery.
TrialReport run_trials(const ServerPool& pool, ClientPolicy client, std::uint64_t n_trials, std::uint64_t seed,
                       ServerPolicy server = ServerPolicy::Rotate);

/// \brief Build a pool for \p domain from fixture entries (MX plus A/AAAA
/// per exchanger; "unavailable" marks addresses down). If \p domain is
/// empty, the fixture must contain exactly one MX entry.
ServerPool load_pool(const FixtureBackend& fixtures, std::optional<DomainName> domain = std::nullopt);

} // namespace mxaudit::sim
