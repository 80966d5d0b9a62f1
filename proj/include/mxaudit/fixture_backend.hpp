#pragma once

#include "mxaudit/resolver.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mxaudit
{

/// \brief One fixture entry: the canned answer plus simulator-only metadata.
struct FixtureEntry
{
  QueryResult result;
  std::vector<std::string> unavailable;   ///< addresses marked down (pool files only)
};

/// \brief Deterministic backend answering from a table keyed "name TYPE".
///
/// File format (one or many JSON files):
/// \code
/// { "mx.domain.tld A": {"status": "OK", "ttl": 300, "records": ["1.2.3.4"]},
///   "domain.tld MX":   {"status": "OK", "ttl": 3600, "records": ["10 mx.domain.tld."]},
///   "4.3.2.1.in-addr.arpa PTR": {"status": "NXDOMAIN", "ttl": 0, "records": []} }
/// \endcode
/// status is one of OK, NXDOMAIN, NOERROR_EMPTY, TIMEOUT, SERVFAIL. Optional
/// keys: "cname" (bool, answer came through an alias) and "unavailable"
/// (addresses the simulator treats as down). Unlisted questions answer NXDOMAIN.
class FixtureBackend final : public QueryBackend
{
public:
  FixtureBackend() = default;

  QueryResult query(const DomainName& name, RrType type) override;

  const FixtureEntry* find(const DomainName& name, RrType type) const;

  /// \brief Merge the entries of one JSON document. \p origin names the file in errors.
  void add_document(const std::string& text, const std::string& origin);

  void add(const DomainName& name, RrType type, FixtureEntry entry);

  std::size_t size() const noexcept { return table_.size(); }

  /// \brief Keys in sorted order.
  std::vector<std::string> keys() const;

private:
  std::map<std::string, FixtureEntry> table_;
};

/// \brief Load a fixture file, or every *.json file in a directory (sorted by
/// file name). Throws FixtureParseError with file and line.
FixtureBackend load_fixture_backend(const std::filesystem::path& path);

std::string fixture_key(const DomainName& name, RrType type);

} // namespace mxaudit
