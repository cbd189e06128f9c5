#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cmoead/harness.hpp"

namespace cmoead {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kWorse: return "worse";
    case Verdict::kBetter: return "better";
    case Verdict::kNotSignificant: return "not-significant";
  }
  return "?";
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  if (!std::isfinite(mu)) return std::numeric_limits<double>::infinity();
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

constexpr std::size_t kExactMaxSmall = 12;
constexpr std::size_t kExactMaxPooled = 200;

struct Ranked {
  std::vector<long> doubled_ranks;  // 2 * midrank, pooled order: a then b
  std::vector<std::size_t> tie_sizes;
};

Ranked rank_pooled(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size() + b.size();
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

  Ranked out;
  out.doubled_ranks.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Ranks i+1 .. j+1 share the midrank (i + j + 2) / 2.
    const long doubled = static_cast<long>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) out.doubled_ranks[order[k]] = doubled;
    out.tie_sizes.push_back(j - i + 1);
    i = j + 1;
  }
  return out;
}

// P(W <= w) and P(W >= w) for the doubled rank sum W of a uniformly random
// subset of size k drawn from `items`.
std::pair<double, double> exact_tails(const std::vector<long>& items, std::size_t k, long w) {
  const long max_sum = std::accumulate(items.begin(), items.end(), 0L);
  std::vector<std::vector<long double>> ways(k + 1,
                                             std::vector<long double>(static_cast<std::size_t>(max_sum) + 1, 0.0L));
  ways[0][0] = 1.0L;
  long reach = 0;
  for (long item : items) {
    reach += item;
    for (std::size_t c = k; c >= 1; --c) {
      auto& dst = ways[c];
      const auto& src = ways[c - 1];
      for (long s = reach; s >= item; --s)
        dst[static_cast<std::size_t>(s)] += src[static_cast<std::size_t>(s - item)];
    }
  }
  long double total = 0.0L, low = 0.0L, high = 0.0L;
  for (long s = 0; s <= max_sum; ++s) {
    const long double c = ways[k][static_cast<std::size_t>(s)];
    total += c;
    if (s <= w) low += c;
    if (s >= w) high += c;
  }
  return {static_cast<double>(low / total), static_cast<double>(high / total)};
}

}  // namespace

RankSumResult wilcoxon_rank_sum(const std::vector<double>& sample_a,
                                const std::vector<double>& sample_b, double significance,
                                Orientation orientation) {
  if (sample_a.empty() || sample_b.empty())
    throw std::invalid_argument("wilcoxon_rank_sum: samples must be nonempty");

  const std::size_t na = sample_a.size();
  const std::size_t nb = sample_b.size();
  const std::size_t n = na + nb;
  const Ranked ranked = rank_pooled(sample_a, sample_b);

  long doubled_ra = 0;
  for (std::size_t i = 0; i < na; ++i) doubled_ra += ranked.doubled_ranks[i];
  const double ra = 0.5 * static_cast<double>(doubled_ra);
  const double rb = 0.5 * static_cast<double>(n * (n + 1)) - ra;

  RankSumResult result;
  result.u_statistic = ra - static_cast<double>(na * (na + 1)) / 2.0;

  if (ranked.tie_sizes.size() == 1) return result;  // every value identical

  if (std::min(na, nb) <= kExactMaxSmall && n <= kExactMaxPooled) {
    const bool a_smaller = na <= nb;
    long w = doubled_ra;
    std::size_t k = na;
    if (!a_smaller) {
      w = static_cast<long>(n * (n + 1)) - doubled_ra;
      k = nb;
    }
    const auto [low, high] = exact_tails(ranked.doubled_ranks, k, w);
    result.p_value = std::min(1.0, 2.0 * std::min(low, high));
    result.exact = true;
  } else {
    double tie_term = 0.0;
    for (std::size_t t : ranked.tie_sizes) {
      const double td = static_cast<double>(t);
      tie_term += td * td * td - td;
    }
    const double nd = static_cast<double>(n);
    const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                       ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    const double z = var > 0.0 ? (result.u_statistic - mu) / std::sqrt(var) : 0.0;
    result.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  }

  if (result.p_value < significance) {
    const bool b_larger = rb / static_cast<double>(nb) > ra / static_cast<double>(na);
    const bool b_worse = (orientation == Orientation::kLowerIsBetter) == b_larger;
    result.verdict = b_worse ? Verdict::kWorse : Verdict::kBetter;
  }
  return result;
}

}  // namespace cmoead
