// mx-audit: measure MX-based load-balancing and fail-over setups.
//
//   mx-audit scan --input <file>... --format plain|ranked_csv
//                 [--resolver <ip> | --fixtures <dir>] [--concurrency N]
//                 [--timeout-ms N] [--out <dir>] [--hosting-rules <file>]
//   mx-audit classify --nm N --na N --naaaa N
//   mx-audit simulate --pool <file> --trials N --seed N --client first|random

#include "mxaudit/classifier.hpp"
#include "mxaudit/fixture_backend.hpp"
#include "mxaudit/mta_sim.hpp"
#include "mxaudit/scan.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
  CLI::App app{"DNS MX load-balancing and fail-over measurement"};
  app.require_subcommand(1);

  // scan
  auto* scan = app.add_subcommand("scan", "Resolve, classify and summarize a domain corpus");
  mxaudit::RunConfig cfg;
  std::vector<std::string> inputs;
  std::string format = "plain";
  std::string resolver;
  std::string fixtures;
  std::string out_dir = "out";
  std::string hosting;
  scan->add_option("--input", inputs, "Domain list file(s)")->required()->expected(1, -1);
  scan->add_option("--format", format, "plain or ranked_csv")
    ->check(CLI::IsMember({"plain", "ranked_csv"}));
  auto* resolver_opt = scan->add_option("--resolver", resolver, "Recursive resolver (IPv4)");
  auto* fixtures_opt = scan->add_option("--fixtures", fixtures, "Fixture file or directory");
  resolver_opt->excludes(fixtures_opt);
  scan->add_option("--concurrency", cfg.concurrency, "Domains in flight")->check(CLI::PositiveNumber);
  scan->add_option("--timeout-ms", cfg.timeout_ms, "Per-query timeout")->check(CLI::PositiveNumber);
  scan->add_option("--retries", cfg.retries, "Retries on timeout/SERVFAIL (0 = single pass)")
    ->check(CLI::NonNegativeNumber);
  scan->add_option("--out", out_dir, "Output directory");
  scan->add_option("--hosting-rules", hosting, "Hosting provider rules (JSON)");

  // classify
  auto* classify = app.add_subcommand("classify", "Print the configuration label for record counts");
  std::uint64_t nm = 0, na = 0, naaaa = 0;
  classify->add_option("--nm", nm, "MX record count")->required();
  classify->add_option("--na", na, "A record count")->required();
  classify->add_option("--naaaa", naaaa, "AAAA record count")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Simulate MTA exchanger selection over a pool");
  std::string pool_path;
  std::string pool_domain;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string client = "first";
  bool random_server = false;
  simulate->add_option("--pool", pool_path, "Pool fixture file")->required();
  simulate->add_option("--domain", pool_domain, "Domain to use when the file has several MX entries");
  simulate->add_option("--trials", trials, "Number of deliveries")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--client", client, "first or random")->check(CLI::IsMember({"first", "random"}));
  simulate->add_flag("--random-permutation", random_server, "Server permutes answers instead of rotating");

  CLI11_PARSE(app, argc, argv);

  if (scan->parsed())
  {
    for (const auto& i : inputs)
      cfg.input_paths.emplace_back(i);
    cfg.input_format = format == "plain" ? mxaudit::InputFormat::Plain : mxaudit::InputFormat::RankedCsv;
    cfg.output_dir = out_dir;
    if (!hosting.empty())
      cfg.hosting_rules_path = hosting;
    if (!fixtures.empty())
    {
      cfg.fixture_dir = fixtures;
    }
    else
    {
      const char* env = std::getenv("MX_AUDIT_RESOLVER");
      cfg.resolver_address = (env != nullptr && *env != '\0') ? std::string(env)
                           : !resolver.empty()                ? resolver
                                                              : std::string("8.8.8.8");
    }
    return mxaudit::run(cfg, std::cerr);
  }

  if (classify->parsed())
  {
    std::cout << mxaudit::to_string(mxaudit::classify(nm, na, naaaa)) << '\n';
    return 0;
  }

  if (simulate->parsed())
  {
    try
    {
      const auto fixture = mxaudit::load_fixture_backend(pool_path);
      std::optional<mxaudit::DomainName> domain;
      if (!pool_domain.empty())
        domain = mxaudit::DomainName::parse(pool_domain);
      const auto pool = mxaudit::sim::load_pool(fixture, domain);
      const auto policy = client == "first" ? mxaudit::sim::ClientPolicy::FirstAddress
                                            : mxaudit::sim::ClientPolicy::RandomAddress;
      const auto server = random_server ? mxaudit::sim::ServerPolicy::RandomPermutation
                                        : mxaudit::sim::ServerPolicy::Rotate;
      const auto report = mxaudit::sim::run_trials(pool, policy, trials, seed, server);
      std::cout << mxaudit::sim::to_json(report).dump(2) << '\n';
      return 0;
    }
    catch (const std::exception& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
