#include "mxaudit/scan.hpp"

#include "mxaudit/errors.hpp"
#include "mxaudit/fixture_backend.hpp"
#include "mxaudit/live_backend.hpp"

#include <charconv>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>

namespace mxaudit
{

namespace
{

std::string_view strip(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string utc_timestamp()
{
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::filesystem::path& p, const std::string& text)
{
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out)
    throw std::runtime_error("write failed: " + p.string());
}

Json config_json(const RunConfig& c)
{
  Json j;
  Json inputs = Json::array();
  for (const auto& p : c.input_paths)
    inputs.push_back(p.string());
  j["input_paths"] = std::move(inputs);
  j["input_format"] = c.input_format == InputFormat::Plain ? "plain" : "ranked_csv";
  j["resolver_address"] = c.resolver_address ? Json(*c.resolver_address) : Json(nullptr);
  j["fixture_dir"] = c.fixture_dir ? Json(c.fixture_dir->string()) : Json(nullptr);
  j["concurrency"] = c.concurrency;
  j["timeout_ms"] = c.timeout_ms;
  j["retries"] = c.retries;
  j["output_dir"] = c.output_dir.string();
  j["hosting_rules_path"] = c.hosting_rules_path ? Json(c.hosting_rules_path->string()) : Json(nullptr);
  return j;
}

} // namespace

std::vector<CorpusEntry> ingest(const std::vector<std::filesystem::path>& paths, InputFormat format)
{
  std::map<DomainName, std::vector<std::uint64_t>> ranks;
  for (const auto& path : paths)
  {
    std::ifstream in(path);
    if (!in)
      throw ParseError(path.string(), 0, "cannot open");

    std::map<DomainName, std::uint64_t> seen_here;
    std::string raw;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, raw))
    {
      ++lineno;
      const auto line = strip(raw);
      if (line.empty() || line.front() == '#')
        continue;
      const bool header_candidate = first;
      first = false;

      std::string_view name_text = line;
      std::optional<std::uint64_t> rank;
      if (format == InputFormat::RankedCsv)
      {
        const auto comma = line.find(',');
        if (comma == std::string_view::npos)
          throw ParseError(path.string(), lineno, "expected \"rank,domain\"");
        const auto rank_text = strip(line.substr(0, comma));
        name_text = strip(line.substr(comma + 1));
        std::uint64_t value = 0;
        const auto [p, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), value);
        if (ec != std::errc{} || p != rank_text.data() + rank_text.size() || value == 0)
        {
          if (header_candidate)
            continue;
          throw ParseError(path.string(), lineno, "rank must be a positive integer");
        }
        rank = value;
      }

      DomainName name;
      try
      {
        name = DomainName::parse(name_text);
        if (name.is_root())
          throw MalformedName("root is not a domain");
      }
      catch (const MalformedName& e)
      {
        throw ParseError(path.string(), lineno, e.what());
      }
      if (seen_here.contains(name))
        continue;
      seen_here.emplace(name, rank.value_or(0));
      auto& list = ranks[name];
      if (rank)
        list.push_back(*rank);
    }
  }

  std::vector<CorpusEntry> out;
  out.reserve(ranks.size());
  for (const auto& [name, r] : ranks)
  {
    CorpusEntry e{name, std::nullopt};
    if (!r.empty())
      e.median_rank = median_rank(r);
    out.push_back(std::move(e));
  }
  return out;
}

void write_outputs(const std::filesystem::path& dir, const std::vector<DomainProfile>& profiles,
                   const CorpusSummary& summary, const Json& meta)
{
  std::filesystem::create_directories(dir);
  std::string jsonl;
  for (const auto& p : profiles)
  {
    jsonl += to_jsonl_line(p);
    jsonl += '\n';
  }
  write_text(dir / "profiles.jsonl", jsonl);
  write_text(dir / "summary.json", to_json(summary).dump(2) + "\n");
  write_text(dir / "hist_mx.csv", summary.mx_count_hist.to_csv());
  write_text(dir / "hist_a.csv", summary.a_count_hist.to_csv());
  write_text(dir / "hist_aaaa.csv", summary.aaaa_count_hist.to_csv());
  write_text(dir / "hist_pref_stddev.csv", summary.pref_stddev_hist.to_csv());
  write_text(dir / "hist_ttl.csv", summary.ttl_hist.to_csv());
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
}

int run(const RunConfig& config, std::ostream& diag)
{
  try
  {
    if (config.input_paths.empty())
    {
      diag << "error: no input files\n";
      return exit_code::kFatal;
    }
    if (config.fixture_dir.has_value() == config.resolver_address.has_value())
    {
      diag << "error: exactly one of a resolver address or a fixture directory must be set\n";
      return exit_code::kFatal;
    }
    if (config.concurrency < 1 || config.timeout_ms < 1 || config.retries < 0)
    {
      diag << "error: concurrency and timeout must be positive, retries non-negative\n";
      return exit_code::kFatal;
    }

    const auto corpus = ingest(config.input_paths, config.input_format);
    if (corpus.empty())
    {
      diag << "error: input contains no domains\n";
      return exit_code::kFatal;
    }

    const auto rules = config.hosting_rules_path ? load_hosting_rules(*config.hosting_rules_path)
                                                 : default_hosting_rules();

    std::unique_ptr<QueryBackend> backend;
    if (config.fixture_dir)
      backend = std::make_unique<FixtureBackend>(load_fixture_backend(*config.fixture_dir));
    else
      backend = std::make_unique<LiveBackend>(*config.resolver_address, config.timeout_ms);

    ResolverPolicy policy;
    policy.timeout_ms = config.timeout_ms;
    policy.retries = config.retries;
    policy.max_concurrency = config.concurrency;

    const auto profiles = run_pipeline_parallel(corpus, *backend, rules, policy);
    const auto summary = summarize(profiles);

    Json meta;
    meta["timestamp"] = utc_timestamp();
    meta["mode"] = config.fixture_dir ? "fixtures" : "live";
    meta["config"] = config_json(config);
    meta["ingested"] = corpus.size();
    meta["k_q"] = summary.k_q;
    meta["k_w"] = summary.k_w;
    meta["k_nomx"] = summary.k_nomx;
    meta["k_nullmx"] = summary.k_nullmx;
    meta["k"] = summary.k;
    meta["errored"] = summary.k_errored;
    write_outputs(config.output_dir, profiles, summary, meta);

    if (summary.k_errored * 2 > summary.k_q)
    {
      diag << "warning: " << summary.k_errored << " of " << summary.k_q << " domains errored\n";
      return exit_code::kMostlyErrored;
    }
    return exit_code::kOk;
  }
  catch (const std::exception& e)
  {
    diag << "error: " << e.what() << '\n';
    return exit_code::kFatal;
  }
}

} // namespace mxaudit
