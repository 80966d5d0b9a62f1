#include "mxaudit/ip_address.hpp"

#include <arpa/inet.h>

#include <cstring>

namespace mxaudit
{

std::optional<IpAddress> IpAddress::parse(std::string_view text)
{
  // inet_pton wants a NUL-terminated buffer
  const std::string buf(text);
  IpAddress out;
  if (inet_pton(AF_INET, buf.c_str(), out.bytes_.data()) == 1)
  {
    out.family_ = IpFamily::V4;
    return out;
  }
  if (inet_pton(AF_INET6, buf.c_str(), out.bytes_.data()) == 1)
  {
    out.family_ = IpFamily::V6;
    return out;
  }
  return std::nullopt;
}

IpAddress IpAddress::v4(std::array<std::uint8_t, 4> octets)
{
  IpAddress out;
  out.family_ = IpFamily::V4;
  std::memcpy(out.bytes_.data(), octets.data(), 4);
  return out;
}

IpAddress IpAddress::v6(const std::array<std::uint8_t, 16>& octets)
{
  IpAddress out;
  out.family_ = IpFamily::V6;
  out.bytes_ = octets;
  return out;
}

std::string IpAddress::to_string() const
{
  char buf[INET6_ADDRSTRLEN] = {};
  const int af = is_v4() ? AF_INET : AF_INET6;
  inet_ntop(af, bytes_.data(), buf, sizeof buf);
  return buf;
}

std::string IpAddress::reverse_name() const
{
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  if (is_v4())
  {
    for (int i = 3; i >= 0; --i)
    {
      out += std::to_string(bytes_[static_cast<std::size_t>(i)]);
      out += '.';
    }
    out += "in-addr.arpa";
    return out;
  }
  out.reserve(72);
  for (int i = 15; i >= 0; --i)
  {
    const std::uint8_t b = bytes_[static_cast<std::size_t>(i)];
    out += kHex[b & 0x0f];
    out += '.';
    out += kHex[b >> 4];
    out += '.';
  }
  out += "ip6.arpa";
  return out;
}

bool is_private_or_local(const IpAddress& addr) noexcept
{
  const auto& b = addr.bytes();
  if (addr.is_v4())
  {
    return b[0] == 10                              // 10.0.0.0/8
        || (b[0] == 172 && (b[1] & 0xf0) == 16)    // 172.16.0.0/12
        || (b[0] == 192 && b[1] == 168)            // 192.168.0.0/16
        || b[0] == 127;                            // loopback
  }
  if ((b[0] & 0xfe) == 0xfc)                       // fc00::/7
    return true;
  for (std::size_t i = 0; i < 15; ++i)
    if (b[i] != 0)
      return false;
  return b[15] == 1;                               // ::1
}

} // namespace mxaudit
