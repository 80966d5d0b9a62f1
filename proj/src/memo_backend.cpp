#include "mxaudit/resolver.hpp"

#include <exception>

namespace mxaudit
{

namespace
{

constexpr std::pair<RrType, std::string_view> kRrTypeNames[] = {
  {RrType::MX, "MX"}, {RrType::A, "A"}, {RrType::AAAA, "AAAA"}, {RrType::TXT, "TXT"}, {RrType::PTR, "PTR"},
};

} // namespace

std::string_view to_string(RrType t) noexcept
{
  for (const auto& [v, n] : kRrTypeNames)
    if (v == t)
      return n;
  return "?";
}

std::optional<RrType> rr_type_from_string(std::string_view s) noexcept
{
  for (const auto& [v, n] : kRrTypeNames)
    if (n == s)
      return v;
  return std::nullopt;
}

QueryResult MemoBackend::query(const DomainName& name, RrType type)
{
  std::string key = name.text();
  key += ' ';
  key += to_string(type);

  std::promise<QueryResult> promise;
  std::shared_future<QueryResult> future;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto [it, inserted] = table_.try_emplace(key);
    if (inserted)
    {
      it->second = promise.get_future().share();
      owner = true;
    }
    future = it->second;
  }
  if (!owner)
    return future.get();

  try
  {
    QueryResult r = inner_.query(name, type);
    for (int attempt = 0; attempt < retries_ && is_transient(r.status); ++attempt)
      r = inner_.query(name, type);
    promise.set_value(r);
    return r;
  }
  catch (...)
  {
    promise.set_exception(std::current_exception());
    throw;
  }
}

std::size_t MemoBackend::size() const
{
  std::lock_guard lock(mu_);
  return table_.size();
}

QueryResult CountingBackend::query(const DomainName& name, RrType type)
{
  {
    std::lock_guard lock(mu_);
    log_.emplace_back(name.text(), type);
  }
  return inner_.query(name, type);
}

std::vector<std::pair<std::string, RrType>> CountingBackend::log() const
{
  std::lock_guard lock(mu_);
  return log_;
}

std::size_t CountingBackend::count() const
{
  std::lock_guard lock(mu_);
  return log_.size();
}

} // namespace mxaudit
