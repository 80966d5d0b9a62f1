#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mxaudit
{

/// \brief Pearson product-moment correlation. Throws DegenerateInput if
/// either vector is constant, std::invalid_argument on length mismatch or n < 2.
double pearson(std::span<const double> x, std::span<const double> y);

/// \brief Population standard deviation (divisor n) of a preference vector.
double pref_stddev(std::span<const double> prefs);

struct KruskalWallisResult
{
  double h{0.0};
  double p_value{1.0};
  int df{0};
};

/// \brief Kruskal-Wallis H with midranks and tie correction; p-value from the
/// chi-square upper tail with groups-1 degrees of freedom.
///
/// Requires at least two non-empty groups and N >= 3. Throws DegenerateInput
/// when every observation is identical.
KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// \brief P(X > x) for X ~ chi-square(df), via the regularized upper incomplete gamma.
double chi_square_upper_tail(double x, double df);

/// \brief Median; even-length input averages the two middle values.
double median(std::vector<double> values);

/// \brief Median of a domain's popularity ranks.
double median_rank(std::span<const std::uint64_t> ranks);

/// \brief Midranks (1-based) of \p values, ties sharing their average rank.
std::vector<double> midranks(std::span<const double> values);

/// \brief Bins [edge_i, edge_{i+1}); the last edge may be +inf.
struct Histogram
{
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;

  /// \brief "bin_low,bin_high,count" lines with a header; +inf prints as "inf".
  std::string to_csv() const;
};

/// \brief Count \p values into bins. Values outside [edges.front(), edges.back()) are dropped;
/// the defaults below always end in +inf so nothing is lost.
Histogram make_histogram(std::span<const double> values, std::vector<double> edges);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// \brief Integer bins lo, lo+1, ..., hi, then [hi, inf).
std::vector<double> integer_edges(int lo, int hi);

/// TTL bins [0, 300, 600, 2000, 3600, 14400, 86400, inf).
std::vector<double> default_ttl_edges();

/// \brief Width-\p width bins from 0 up past \p max_value, then +inf.
std::vector<double> uniform_edges(double width, double max_value);

} // namespace mxaudit
