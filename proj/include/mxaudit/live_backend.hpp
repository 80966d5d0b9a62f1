#pragma once

#include "mxaudit/resolver.hpp"

#include <string>

namespace mxaudit
{

/// \brief Queries one recursive resolver over UDP/TCP via the system stub
/// (libresolv). Each calling thread keeps its own resolver state.
class LiveBackend final : public QueryBackend
{
public:
  /// \param resolver IPv4 address of the recursive resolver, e.g. "8.8.8.8".
  /// \param timeout_ms per-query timeout; rounded up to whole seconds by the stub.
  LiveBackend(const std::string& resolver, int timeout_ms);

  QueryResult query(const DomainName& name, RrType type) override;

private:
  IpAddress resolver_;
  int timeout_s_;
};

} // namespace mxaudit
