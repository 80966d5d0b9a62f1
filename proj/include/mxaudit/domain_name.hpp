#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mxaudit
{

/// \brief Canonical, lowercase DNS name without the trailing dot.
///
/// The root name "." is representable only through DomainName::root(); it is
/// what a Null-MX record points at. Every other value satisfies: non-empty,
/// labels of 1..63 octets, total length at most 253 octets, characters drawn
/// from [a-z0-9-_].
class DomainName
{
public:
  /// Root marker ".".
  DomainName() = default;

  static DomainName root() { return DomainName{}; }

  /// \brief Parse and canonicalize \p raw; "." yields the root. Throws MalformedName.
  static DomainName parse(std::string_view raw);

  bool is_root() const noexcept { return name_.empty(); }

  /// \brief Presentation text; "." for the root.
  std::string text() const { return is_root() ? std::string(".") : name_; }

  const std::string& str() const noexcept { return name_; }

  /// \brief True if the name also passes strict RFC 952/1123 hostname rules
  /// (no underscores, no leading or trailing hyphen in any label).
  bool strict_hostname() const noexcept;

  /// \brief Label-boundary suffix match: equal to \p suffix or ends with "." + suffix.
  bool is_subdomain_of(const DomainName& suffix) const noexcept;

  friend bool operator==(const DomainName&, const DomainName&) = default;
  friend auto operator<=>(const DomainName&, const DomainName&) = default;

private:
  explicit DomainName(std::string canonical) : name_(std::move(canonical)) {}

  std::string name_;
};

/// \brief Free-function spelling of DomainName::parse.
inline DomainName canonicalize(std::string_view raw)
{
  return DomainName::parse(raw);
}

} // namespace mxaudit
