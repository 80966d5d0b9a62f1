#include "mxaudit/live_backend.hpp"

#include "mxaudit/errors.hpp"

#include <arpa/inet.h>
#include <arpa/nameser.h>
#include <netinet/in.h>
#include <resolv.h>

#include <cerrno>
#include <cstring>
#include <vector>

namespace mxaudit
{

namespace
{

int wire_type(RrType t)
{
  switch (t)
  {
  case RrType::MX:
    return ns_t_mx;
  case RrType::A:
    return ns_t_a;
  case RrType::AAAA:
    return ns_t_aaaa;
  case RrType::TXT:
    return ns_t_txt;
  case RrType::PTR:
    return ns_t_ptr;
  }
  return ns_t_a;
}

struct ThreadResolver
{
  struct __res_state state{};
  bool ready{false};

  ~ThreadResolver()
  {
    if (ready)
      res_nclose(&state);
  }
};

std::string expand(const ns_msg& msg, const unsigned char* ptr)
{
  char buf[NS_MAXDNAME];
  if (ns_name_uncompress(ns_msg_base(msg), ns_msg_end(msg), ptr, buf, sizeof buf) < 0)
    return {};
  std::string out(buf);
  if (out.empty() || out.back() != '.')
    out += '.';
  return out;
}

std::string rdata_text(const ns_msg& msg, const ns_rr& rr)
{
  const unsigned char* rd = ns_rr_rdata(rr);
  const std::size_t len = ns_rr_rdlen(rr);
  char buf[INET6_ADDRSTRLEN] = {};
  switch (ns_rr_type(rr))
  {
  case ns_t_a:
    if (len == 4 && inet_ntop(AF_INET, rd, buf, sizeof buf))
      return buf;
    return {};
  case ns_t_aaaa:
    if (len == 16 && inet_ntop(AF_INET6, rd, buf, sizeof buf))
      return buf;
    return {};
  case ns_t_mx:
    if (len < 3)
      return {};
    return std::to_string(ns_get16(rd)) + " " + expand(msg, rd + 2);
  case ns_t_ptr:
    return expand(msg, rd);
  case ns_t_txt:
  {
    // concatenation of the character-strings
    std::string out;
    for (std::size_t i = 0; i < len;)
    {
      const std::size_t n = rd[i++];
      out.append(reinterpret_cast<const char*>(rd + i), std::min<std::size_t>(n, len - i));
      i += n;
    }
    return out;
  }
  default:
    return {};
  }
}

} // namespace

LiveBackend::LiveBackend(const std::string& resolver, int timeout_ms)
  : timeout_s_(std::max(1, (timeout_ms + 999) / 1000))
{
  auto addr = IpAddress::parse(resolver);
  if (!addr || !addr->is_v4())
    throw BackendUnavailable("resolver must be an IPv4 address: " + resolver);
  resolver_ = *addr;
}

QueryResult LiveBackend::query(const DomainName& name, RrType type)
{
  thread_local ThreadResolver tr;
  if (!tr.ready)
  {
    if (res_ninit(&tr.state) != 0)
      throw BackendUnavailable("res_ninit failed");
    tr.ready = true;
  }
  auto& st = tr.state;
  sockaddr_in sin{};
  sin.sin_family = AF_INET;
  sin.sin_port = htons(NS_DEFAULTPORT);
  std::memcpy(&sin.sin_addr, resolver_.bytes().data(), 4);
  st.nsaddr_list[0] = sin;
  st.nscount = 1;
  st.retrans = timeout_s_;
  st.retry = 1;
  st.options |= RES_RECURSE;

  unsigned char question[NS_PACKETSZ];
  const int qlen = res_nmkquery(&st, ns_o_query, name.text().c_str(), ns_c_in, wire_type(type), nullptr, 0,
                                nullptr, question, sizeof question);
  if (qlen < 0)
    return QueryResult::failure(QueryStatus::ServFail);

  std::vector<unsigned char> answer(65535);
  errno = 0;
  const int alen = res_nsend(&st, question, qlen, answer.data(), static_cast<int>(answer.size()));
  if (alen < 0)
  {
    if (errno == ECONNREFUSED || errno == ENETUNREACH || errno == EHOSTUNREACH)
      throw BackendUnavailable(std::string("resolver unreachable: ") + std::strerror(errno));
    return QueryResult::failure(QueryStatus::Timeout);
  }

  ns_msg msg;
  if (ns_initparse(answer.data(), alen, &msg) < 0)
    return QueryResult::failure(QueryStatus::ServFail);
  switch (ns_msg_getflag(msg, ns_f_rcode))
  {
  case ns_r_noerror:
    break;
  case ns_r_nxdomain:
    return QueryResult::failure(QueryStatus::NxDomain);
  default:
    return QueryResult::failure(QueryStatus::ServFail);
  }

  QueryResult result;
  result.status = QueryStatus::NoRecords;
  const int want = wire_type(type);
  for (int i = 0; i < ns_msg_count(msg, ns_s_an); ++i)
  {
    ns_rr rr;
    if (ns_parserr(&msg, ns_s_an, i, &rr) < 0)
      continue;
    if (ns_rr_type(rr) == ns_t_cname)
    {
      result.is_cname = true;
      continue;
    }
    if (ns_rr_type(rr) != want)
      continue;
    auto text = rdata_text(msg, rr);
    if (!text.empty())
      result.records.push_back({std::move(text), ns_rr_ttl(rr)});
  }
  if (!result.records.empty())
    result.status = QueryStatus::Ok;
  return result;
}

} // namespace mxaudit
