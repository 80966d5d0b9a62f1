#include "mxaudit/stats.hpp"

#include "mxaudit/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mxaudit
{

double pearson(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
    throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2)
    throw std::invalid_argument("pearson: need at least two points");

  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateInput("pearson: constant input vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pref_stddev(std::span<const double> prefs)
{
  if (prefs.empty())
    throw std::invalid_argument("pref_stddev: empty input");
  const double n = static_cast<double>(prefs.size());
  const double mean = std::accumulate(prefs.begin(), prefs.end(), 0.0) / n;
  double ss = 0.0;
  for (double p : prefs)
    ss += (p - mean) * (p - mean);
  return std::sqrt(ss / n);
}

std::vector<double> midranks(std::span<const double> values)
{
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();)
  {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]])
      ++j;
    // positions i..j (0-based) share rank average of (i+1)..(j+1)
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double chi_square_upper_tail(double x, double df)
{
  if (df <= 0)
    throw std::invalid_argument("chi_square_upper_tail: df must be positive");
  if (x <= 0)
    return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups)
{
  if (groups.size() < 2)
    throw std::invalid_argument("kruskal_wallis: need at least two groups");
  std::vector<double> pooled;
  for (const auto& g : groups)
  {
    if (g.empty())
      throw std::invalid_argument("kruskal_wallis: empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const double n = static_cast<double>(pooled.size());
  if (pooled.size() < 3)
    throw std::invalid_argument("kruskal_wallis: need N >= 3");

  const auto ranks = midranks(pooled);

  double sum_term = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups)
  {
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      r += ranks[offset + i];
    sum_term += r * r / static_cast<double>(g.size());
    offset += g.size();
  }
  const double h_raw = 12.0 / (n * (n + 1.0)) * sum_term - 3.0 * (n + 1.0);

  // tie correction: 1 - sum(t^3 - t) / (N^3 - N)
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();)
  {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i])
      ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double correction = 1.0 - ties / (n * n * n - n);
  if (correction <= 0.0)
    throw DegenerateInput("kruskal_wallis: all observations identical");

  KruskalWallisResult out;
  out.h = std::max(0.0, h_raw / correction);
  out.df = static_cast<int>(groups.size()) - 1;
  out.p_value = chi_square_upper_tail(out.h, out.df);
  return out;
}

double median(std::vector<double> values)
{
  if (values.empty())
    throw std::invalid_argument("median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1)
    return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

double median_rank(std::span<const std::uint64_t> ranks)
{
  std::vector<double> v(ranks.begin(), ranks.end());
  return median(std::move(v));
}

std::uint64_t Histogram::total() const noexcept
{
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::string Histogram::to_csv() const
{
  std::ostringstream out;
  out << "bin_low,bin_high,count\n";
  const auto fmt = [](double v) {
    if (std::isinf(v))
      return std::string("inf");
    std::ostringstream s;
    s << v;
    return s.str();
  };
  for (std::size_t i = 0; i < counts.size(); ++i)
    out << fmt(bin_edges[i]) << ',' << fmt(bin_edges[i + 1]) << ',' << counts[i] << '\n';
  return out.str();
}

Histogram make_histogram(std::span<const double> values, std::vector<double> edges)
{
  if (edges.size() < 2)
    throw std::invalid_argument("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw std::invalid_argument("histogram edges must be strictly increasing");

  Histogram h;
  h.counts.assign(edges.size() - 1, 0);
  for (double v : values)
  {
    if (v < edges.front() || v >= edges.back())
      continue;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    ++h.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
  h.bin_edges = std::move(edges);
  return h;
}

std::vector<double> integer_edges(int lo, int hi)
{
  std::vector<double> e;
  for (int i = lo; i <= hi; ++i)
    e.push_back(i);
  e.push_back(kInf);
  return e;
}

std::vector<double> default_ttl_edges()
{
  return {0, 300, 600, 2000, 3600, 14400, 86400, kInf};
}

std::vector<double> uniform_edges(double width, double max_value)
{
  std::vector<double> e{0.0};
  while (e.back() <= max_value)
    e.push_back(e.back() + width);
  e.push_back(kInf);
  return e;
}

} // namespace mxaudit
