#include "mxaudit/fixture_backend.hpp"

#include "mxaudit/errors.hpp"
#include "mxaudit/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mxaudit
{

namespace
{

std::size_t line_of_offset(const std::string& text, std::size_t offset)
{
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::size_t line_of_key(const std::string& text, const std::string& key)
{
  const auto pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

[[noreturn]] void fail_entry(const std::string& text, const std::string& origin, const std::string& key,
                             const std::string& why)
{
  throw FixtureParseError(origin, line_of_key(text, key), "'" + key + "': " + why);
}

std::optional<QueryStatus> fixture_status(std::string_view s)
{
  if (s == "OK")
    return QueryStatus::Ok;
  if (s == "NXDOMAIN")
    return QueryStatus::NxDomain;
  if (s == "NOERROR_EMPTY")
    return QueryStatus::NoRecords;
  if (s == "TIMEOUT")
    return QueryStatus::Timeout;
  if (s == "SERVFAIL")
    return QueryStatus::ServFail;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw FixtureParseError(p.string(), 0, "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

std::string fixture_key(const DomainName& name, RrType type)
{
  return name.text() + " " + std::string(to_string(type));
}

QueryResult FixtureBackend::query(const DomainName& name, RrType type)
{
  if (const auto* e = find(name, type))
    return e->result;
  return QueryResult::failure(QueryStatus::NxDomain);
}

const FixtureEntry* FixtureBackend::find(const DomainName& name, RrType type) const
{
  const auto it = table_.find(fixture_key(name, type));
  return it == table_.end() ? nullptr : &it->second;
}

void FixtureBackend::add(const DomainName& name, RrType type, FixtureEntry entry)
{
  table_[fixture_key(name, type)] = std::move(entry);
}

std::vector<std::string> FixtureBackend::keys() const
{
  std::vector<std::string> out;
  out.reserve(table_.size());
  for (const auto& [k, _] : table_)
    out.push_back(k);
  return out;
}

void FixtureBackend::add_document(const std::string& text, const std::string& origin)
{
  Json doc;
  try
  {
    doc = Json::parse(text);
  }
  catch (const nlohmann::json::parse_error& e)
  {
    throw FixtureParseError(origin, line_of_offset(text, e.byte), e.what());
  }
  if (!doc.is_object())
    throw FixtureParseError(origin, 1, "top level must be an object");

  for (const auto& [key, value] : doc.items())
  {
    const auto fail = [&](const std::string& why) { fail_entry(text, origin, key, why); };

    const auto sp = key.rfind(' ');
    if (sp == std::string::npos)
      fail("key must be \"name TYPE\"");
    const auto type = rr_type_from_string(std::string_view(key).substr(sp + 1));
    if (!type)
      fail("unknown record type");
    DomainName name;
    try
    {
      name = DomainName::parse(std::string_view(key).substr(0, sp));
    }
    catch (const MalformedName& e)
    {
      fail(e.what());
    }
    if (!value.is_object())
      fail("entry must be an object");

    FixtureEntry entry;
    try
    {
      const auto status = fixture_status(value.at("status").get<std::string>());
      if (!status)
        fail("unknown status");
      entry.result.status = *status;
      const auto ttl = value.value("ttl", std::int64_t{0});
      if (ttl < 0 || ttl > 0x7fffffff)
        fail("ttl out of range");
      for (const auto& r : value.value("records", Json::array()))
        entry.result.records.push_back({r.get<std::string>(), static_cast<std::uint32_t>(ttl)});
      entry.result.is_cname = value.value("cname", false);
      if (value.contains("unavailable"))
        entry.unavailable = value.at("unavailable").get<std::vector<std::string>>();
    }
    catch (const nlohmann::json::exception& e)
    {
      fail(e.what());
    }
    if ((entry.result.status == QueryStatus::Ok) == entry.result.records.empty())
      fail("records must be non-empty exactly when status is OK");

    const auto k = fixture_key(name, *type);
    if (table_.contains(k))
      fail("duplicate entry");
    table_.emplace(k, std::move(entry));
  }
}

FixtureBackend load_fixture_backend(const std::filesystem::path& path)
{
  FixtureBackend backend;
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec))
  {
    std::vector<std::filesystem::path> files;
    for (const auto& de : std::filesystem::directory_iterator(path))
      if (de.is_regular_file() && de.path().extension() == ".json")
        files.push_back(de.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw FixtureParseError(path.string(), 0, "no .json fixture files");
    for (const auto& f : files)
      backend.add_document(read_file(f), f.string());
  }
  else
  {
    backend.add_document(read_file(path), path.string());
  }
  return backend;
}

} // namespace mxaudit
