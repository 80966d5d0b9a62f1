#include "doctest.h"

#include "test_support.hpp"

#include "mxaudit/classifier.hpp"
#include "mxaudit/errors.hpp"
#include "mxaudit/scan.hpp"
#include "mxaudit/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mxaudit;
namespace fs = std::filesystem;
using testing::dn;

namespace
{

fs::path scratch(const std::string& name)
{
  auto p = fs::temp_directory_path() / ("mxaudit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text)
{
  std::ofstream(p, std::ios::binary) << text;
}

RunConfig golden_config(const fs::path& out)
{
  const auto g = testing::data_dir() / "golden";
  RunConfig c;
  c.input_paths = {g / "week1.csv", g / "week2.csv"};
  c.input_format = InputFormat::RankedCsv;
  c.fixture_dir = g / "fixtures";
  c.output_dir = out;
  c.concurrency = 8;
  return c;
}

} // namespace

TEST_SUITE("scan")
{
  TEST_CASE("ingest takes the median rank across files")
  {
    const auto dir = scratch("ingest");
    spit(dir / "w1.csv", "rank,domain\n10,x.tld\n3,y.tld\n");
    spit(dir / "w2.csv", "# comment\n\n20,X.TLD.\n7,x.tld\n");
    spit(dir / "w3.csv", "1,z.tld\n");
    const auto out = ingest({dir / "w1.csv", dir / "w2.csv", dir / "w3.csv"}, InputFormat::RankedCsv);
    REQUIRE(out.size() == 3);
    CHECK(out[0].domain == dn("x.tld"));
    CHECK(out[0].median_rank.value() == 15.0);
    CHECK(out[1].domain == dn("y.tld"));
    CHECK(out[1].median_rank.value() == 3.0);
    CHECK(out[2].median_rank.value() == 1.0);
  }

  TEST_CASE("ingest merges case variants in plain lists")
  {
    const auto dir = scratch("ingest_plain");
    spit(dir / "a.txt", "X.TLD\nb.tld\n");
    spit(dir / "b.txt", "x.tld.\n");
    const auto out = ingest({dir / "a.txt", dir / "b.txt"}, InputFormat::Plain);
    REQUIRE(out.size() == 2);
    CHECK(out[1].domain == dn("x.tld"));
    CHECK_FALSE(out[1].median_rank.has_value());
  }

  TEST_CASE("ingest reports file and line")
  {
    const auto dir = scratch("ingest_bad");
    spit(dir / "bad.csv", "rank,domain\n1,ok.tld\nnot-a-rank,x.tld\n");
    try
    {
      ingest({dir / "bad.csv"}, InputFormat::RankedCsv);
      FAIL("expected ParseError");
    }
    catch (const ParseError& e)
    {
      CHECK(e.line() == 3);
    }
    spit(dir / "bad.txt", "ok.tld\na..b\n");
    CHECK_THROWS_AS(ingest({dir / "bad.txt"}, InputFormat::Plain), ParseError);
  }

  TEST_CASE("empty input exits 1")
  {
    const auto dir = scratch("empty");
    spit(dir / "empty.txt", "");
    spit(dir / "zone.json", "{}");
    RunConfig c;
    c.input_paths = {dir / "empty.txt"};
    c.fixture_dir = dir / "zone.json";
    c.output_dir = dir / "out";
    std::ostringstream diag;
    CHECK(run(c, diag) == exit_code::kFatal);
    CHECK_FALSE(diag.str().empty());
  }

  TEST_CASE("resolver and fixtures are mutually exclusive")
  {
    const auto dir = scratch("modes");
    spit(dir / "in.txt", "a.tld\n");
    RunConfig c;
    c.input_paths = {dir / "in.txt"};
    c.output_dir = dir / "out";
    std::ostringstream diag;
    CHECK(run(c, diag) == exit_code::kFatal);
    c.fixture_dir = dir;
    c.resolver_address = "192.0.2.1";
    CHECK(run(c, diag) == exit_code::kFatal);
  }

  TEST_CASE("Null MX accounting in run_meta")
  {
    const auto dir = scratch("nullmx");
    spit(dir / "in.txt", "null.tld\nmail.tld\nnone.tld\n");
    spit(dir / "zone.json", R"({
      "null.tld MX": {"status": "OK", "ttl": 300, "records": ["0 ."]},
      "none.tld MX": {"status": "NOERROR_EMPTY", "ttl": 0, "records": []},
      "mail.tld MX": {"status": "OK", "ttl": 300, "records": ["10 mx.mail.tld."]},
      "mx.mail.tld A": {"status": "OK", "ttl": 300, "records": ["192.0.2.1"]}
    })");
    RunConfig c;
    c.input_paths = {dir / "in.txt"};
    c.fixture_dir = dir / "zone.json";
    c.output_dir = dir / "out";
    std::ostringstream diag;
    REQUIRE(run(c, diag) == exit_code::kOk);
    const auto meta = Json::parse(slurp(dir / "out" / "run_meta.json"));
    CHECK(meta["k_q"] == 3);
    CHECK(meta["k_nullmx"] == 1);
    CHECK(meta["k_w"] == 1);
    CHECK(meta["k"] == 1);
    CHECK(meta["k"].get<int>() == meta["k_q"].get<int>() - (meta["k_w"].get<int>() + meta["k_nullmx"].get<int>()));

    // every ingested domain is still emitted
    std::ifstream jl(dir / "out" / "profiles.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(jl, line))
      ++lines;
    CHECK(lines == 3);
  }

  TEST_CASE("mostly errored run exits 2")
  {
    const auto dir = scratch("errored");
    spit(dir / "in.txt", "a.tld\nb.tld\nc.tld\n");
    spit(dir / "zone.json", R"({
      "a.tld MX": {"status": "TIMEOUT", "ttl": 0, "records": []},
      "b.tld MX": {"status": "SERVFAIL", "ttl": 0, "records": []},
      "c.tld MX": {"status": "OK", "ttl": 300, "records": ["10 mx.c.tld."]}
    })");
    RunConfig c;
    c.input_paths = {dir / "in.txt"};
    c.fixture_dir = dir / "zone.json";
    c.output_dir = dir / "out";
    std::ostringstream diag;
    CHECK(run(c, diag) == exit_code::kMostlyErrored);
    CHECK(fs::exists(dir / "out" / "summary.json"));
  }

  TEST_CASE("serial and parallel pipelines agree")
  {
    const auto g = testing::data_dir() / "golden";
    const auto corpus = ingest({g / "week1.csv", g / "week2.csv"}, InputFormat::RankedCsv);
    auto fx = load_fixture_backend(g / "fixtures");
    const auto rules = default_hosting_rules();
    const auto serial = run_pipeline_serial(corpus, fx, rules);
    for (int conc : {1, 3, 16})
    {
      ResolverPolicy policy;
      policy.max_concurrency = conc;
      const auto parallel = run_pipeline_parallel(corpus, fx, rules, policy);
      REQUIRE(parallel.size() == serial.size());
      for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(to_jsonl_line(parallel[i]) == to_jsonl_line(serial[i]));
    }
  }

  TEST_CASE("golden corpus matches frozen outputs")
  {
    const auto out = scratch("golden_out");
    std::ostringstream diag;
    REQUIRE(run(golden_config(out), diag) == exit_code::kOk);
    const auto expected = testing::data_dir() / "golden" / "expected";
    CHECK(slurp(out / "profiles.jsonl") == slurp(expected / "profiles.jsonl"));
    CHECK(slurp(out / "summary.json") == slurp(expected / "summary.json"));
  }

  TEST_CASE("golden summary agrees with the independent oracle")
  {
    const auto out = scratch("golden_oracle");
    std::ostringstream diag;
    REQUIRE(run(golden_config(out), diag) == exit_code::kOk);
    const auto s = Json::parse(slurp(out / "summary.json"));
    const auto o = Json::parse(slurp(testing::data_dir() / "golden" / "oracle.json"));
    for (const auto& [key, want] : o.items())
    {
      if (key == "labels")
        continue;
      CAPTURE(key);
      REQUIRE(s.contains(key));
      const auto& got = s[key];
      if (want.is_number_float())
        CHECK(got.get<double>() == doctest::Approx(want.get<double>()).epsilon(1e-9));
      else if (want.is_object())
      {
        for (const auto& [k2, w2] : want.items())
        {
          CAPTURE(k2);
          if (w2.is_object())
          {
            for (const auto& [k3, w3] : w2.items())
            {
              if (w3.is_number_float())
                CHECK(got[k2][k3].get<double>() == doctest::Approx(w3.get<double>()).epsilon(1e-9));
              else
                CHECK(got[k2][k3] == w3);
            }
          }
          else if (w2.is_number_float())
            CHECK(got[k2].get<double>() == doctest::Approx(w2.get<double>()).epsilon(1e-9));
          else
            CHECK(got[k2] == w2);
        }
      }
      else
        CHECK(got == want);
    }

    std::ifstream jl(out / "profiles.jsonl");
    std::string line;
    std::size_t matched = 0;
    while (std::getline(jl, line))
    {
      const auto p = Json::parse(line);
      const auto name = p["domain"].get<std::string>();
      if (o["labels"].contains(name))
      {
        CHECK(p["classification"] == o["labels"][name]);
        ++matched;
      }
    }
    CHECK(matched == o["labels"].size());
  }

  TEST_CASE("repeated runs are byte identical and sorted")
  {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    std::ostringstream diag;
    REQUIRE(run(golden_config(a), diag) == exit_code::kOk);
    auto cb = golden_config(b);
    cb.concurrency = 1;
    REQUIRE(run(cb, diag) == exit_code::kOk);
    for (const char* f : {"profiles.jsonl", "summary.json", "hist_mx.csv", "hist_a.csv", "hist_aaaa.csv",
                          "hist_pref_stddev.csv", "hist_ttl.csv"})
    {
      CAPTURE(f);
      CHECK(slurp(a / f) == slurp(b / f));
    }
    std::ifstream jl(a / "profiles.jsonl");
    std::string line, prev;
    while (std::getline(jl, line))
    {
      const auto name = Json::parse(line)["domain"].get<std::string>();
      CHECK(prev < name);
      prev = name;
    }
  }
}
