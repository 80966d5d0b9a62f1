#include "mxaudit/domain_name.hpp"

#include "mxaudit/errors.hpp"

namespace mxaudit
{

namespace
{

constexpr std::size_t kMaxLabel = 63;
constexpr std::size_t kMaxName = 253;

bool name_char(char c)
{
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
}

char lower(char c)
{
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

} // namespace

DomainName DomainName::parse(std::string_view raw)
{
  if (raw == ".")
    return root();
  if (!raw.empty() && raw.back() == '.')
    raw.remove_suffix(1);
  if (raw.empty())
    throw MalformedName("empty name");
  if (raw.size() > kMaxName)
    throw MalformedName("name exceeds 253 octets: " + std::string(raw));

  std::string out;
  out.reserve(raw.size());
  std::size_t label = 0;
  for (char c : raw)
  {
    if (c == '.')
    {
      if (label == 0)
        throw MalformedName("empty label in '" + std::string(raw) + "'");
      label = 0;
      out.push_back('.');
      continue;
    }
    c = lower(c);
    if (!name_char(c))
      throw MalformedName("invalid character in '" + std::string(raw) + "'");
    if (++label > kMaxLabel)
      throw MalformedName("label exceeds 63 octets in '" + std::string(raw) + "'");
    out.push_back(c);
  }
  if (label == 0)
    throw MalformedName("empty label in '" + std::string(raw) + "'");
  return DomainName(std::move(out));
}

bool DomainName::strict_hostname() const noexcept
{
  if (is_root())
    return false;
  char prev = '.';
  for (std::size_t i = 0; i < name_.size(); ++i)
  {
    const char c = name_[i];
    if (c == '_')
      return false;
    if (c == '-' && prev == '.')
      return false;
    if (c == '.' && prev == '-')
      return false;
    prev = c;
  }
  return prev != '-';
}

bool DomainName::is_subdomain_of(const DomainName& suffix) const noexcept
{
  if (suffix.is_root())
    return true;
  if (is_root() || name_.size() < suffix.name_.size())
    return false;
  if (name_.size() == suffix.name_.size())
    return name_ == suffix.name_;
  const std::size_t off = name_.size() - suffix.name_.size();
  return name_[off - 1] == '.' && name_.compare(off, std::string::npos, suffix.name_) == 0;
}

} // namespace mxaudit
