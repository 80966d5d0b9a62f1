#pragma once

#include "mxaudit/pipeline.hpp"
#include "mxaudit/summary.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mxaudit
{

enum class InputFormat : std::uint8_t
{
  Plain,       ///< one domain per line
  RankedCsv    ///< "rank,domain" per line
};

/// \brief Read every input list and merge them.
///
/// Domains are canonicalized and deduplicated across files. With RankedCsv,
/// a domain's rank is the median of its ranks over the files it appears in
/// (first occurrence within a file). Blank lines, '#' comments and a leading
/// "rank,domain" header are skipped. Output is sorted by domain. Throws
/// ParseError with file and line.
std::vector<CorpusEntry> ingest(const std::vector<std::filesystem::path>& paths, InputFormat format);

struct RunConfig
{
  std::vector<std::filesystem::path> input_paths;
  InputFormat input_format{InputFormat::Plain};
  std::optional<std::string> resolver_address;   ///< live mode
  std::optional<std::filesystem::path> fixture_dir;   ///< fixture mode
  int concurrency{64};
  int timeout_ms{5000};
  int retries{0};
  std::filesystem::path output_dir{"out"};
  std::optional<std::filesystem::path> hosting_rules_path;
};

namespace exit_code
{
inline constexpr int kOk = 0;
inline constexpr int kFatal = 1;
inline constexpr int kMostlyErrored = 2;
} // namespace exit_code

/// \brief Resolve, audit and summarize; write profiles.jsonl, summary.json,
/// hist_*.csv and run_meta.json into the output directory.
///
/// Returns 0 on success, 1 on a fatal config or I/O error (message on
/// \p diag), 2 when more than half the domains errored. SOURCE_DATE_EPOCH,
/// when set, fixes the run_meta timestamp.
int run(const RunConfig& config, std::ostream& diag);

/// \brief Write the output files for an already-computed run.
void write_outputs(const std::filesystem::path& dir, const std::vector<DomainProfile>& profiles,
                   const CorpusSummary& summary, const Json& meta);

} // namespace mxaudit
