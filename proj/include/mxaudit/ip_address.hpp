#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mxaudit
{

enum class IpFamily : std::uint8_t
{
  V4,
  V6
};

/// \brief IPv4 or IPv6 address stored in network byte order.
///
/// Text form is canonical: dotted quad, or RFC 5952 lowercase compressed IPv6.
class IpAddress
{
public:
  IpAddress() = default;

  /// \brief Parse presentation text; nullopt if neither family accepts it.
  static std::optional<IpAddress> parse(std::string_view text);

  static IpAddress v4(std::array<std::uint8_t, 4> octets);
  static IpAddress v6(const std::array<std::uint8_t, 16>& octets);

  IpFamily family() const noexcept { return family_; }
  bool is_v4() const noexcept { return family_ == IpFamily::V4; }
  bool is_v6() const noexcept { return family_ == IpFamily::V6; }

  /// \brief Raw bytes; only the first 4 are meaningful for IPv4.
  const std::array<std::uint8_t, 16>& bytes() const noexcept { return bytes_; }

  std::string to_string() const;

  /// \brief Reverse-lookup owner name (x.x.x.x.in-addr.arpa / nibble ip6.arpa).
  std::string reverse_name() const;

  friend bool operator==(const IpAddress&, const IpAddress&) = default;
  friend auto operator<=>(const IpAddress&, const IpAddress&) = default;

private:
  IpFamily family_{IpFamily::V4};
  std::array<std::uint8_t, 16> bytes_{};
};

/// \brief RFC 1918 private, 127/8 loopback, fc00::/7 unique-local, or ::1.
bool is_private_or_local(const IpAddress& addr) noexcept;

} // namespace mxaudit
