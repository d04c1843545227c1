#include "mfact/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "mfact/bijection.hpp"
#include "mfact/parallel.hpp"
#include "mfact/rng.hpp"

namespace mfact {

bool DistributionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

double DistributionReport::statistic(const std::string& key) const {
  for (const auto& [k, v] : statistics) {
    if (k == key) return v;
  }
  throw std::out_of_range("report has no statistic " + key);
}

double DistributionReport::probability_mass() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

nlohmann::ordered_json DistributionReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "mfact.report/1";
  j["name"] = name;
  j["n"] = n;
  j["sample_size"] = sample_size;
  j["seed"] = seed;
  j["exact"] = exact;
  j["support"] = support;
  j["probabilities"] = probabilities;
  if (exact) {
    j["counts"] = counts;
    j["denominator"] = denominator;
  }
  auto cols = nlohmann::ordered_json::object();
  for (const auto& [k, v] : columns) cols[k] = v;
  j["columns"] = cols;
  auto stats = nlohmann::ordered_json::object();
  for (const auto& [k, v] : statistics) stats[k] = v;
  j["statistics"] = stats;
  auto chk = nlohmann::ordered_json::object();
  for (const auto& [k, v] : checks) chk[k] = v;
  j["checks"] = chk;
  j["notes"] = notes;
  j["pass"] = passed();
  return j;
}

std::string DistributionReport::to_text() const {
  std::ostringstream os;
  os << "# " << name << "  n=" << n << "  samples=" << sample_size;
  if (!exact) os << "  seed=" << seed;
  os << '\n';
  os << std::setw(12) << "value" << std::setw(16) << "probability";
  if (exact) os << std::setw(10) << "count";
  for (const auto& [k, v] : columns) os << std::setw(16) << k;
  os << '\n';
  os << std::setprecision(8);
  for (std::size_t i = 0; i < support.size(); ++i) {
    os << std::setw(12) << support[i] << std::setw(16) << probabilities[i];
    if (exact) os << std::setw(10) << counts[i];
    for (const auto& [k, v] : columns) os << std::setw(16) << v[i];
    os << '\n';
  }
  for (const auto& [k, v] : statistics) os << std::left << std::setw(28) << k << std::right << v << '\n';
  for (const auto& [k, v] : checks) os << std::left << std::setw(28) << k << std::right << (v ? "pass" : "FAIL") << '\n';
  for (const auto& note : notes) os << "note: " << note << '\n';
  return os.str();
}

std::uint64_t narayana(int m, int k) {
  if (m < 1 || k < 1 || k > m) return 0;
  auto binom = [](int a, int b) {
    std::uint64_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
    return r;
  };
  return binom(m, k) * binom(m, k - 1) / static_cast<std::uint64_t>(m);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance_to_normal(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("KS distance needs a sample");
  std::sort(sample.begin(), sample.end());
  const double total = static_cast<double>(sample.size());
  double d = 0;
  std::size_t i = 0;
  while (i < sample.size()) {
    std::size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) ++j;
    const double phi = standard_normal_cdf(sample[i]);
    d = std::max({d, std::abs(static_cast<double>(j) / total - phi), std::abs(static_cast<double>(i) / total - phi)});
    i = j;
  }
  return d;
}

double chi_square_survival(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi-square needs at least one degree of freedom");
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

namespace {

int distinct_count(const std::vector<int>& xs) {
  return static_cast<int>(std::set<int>(xs.begin(), xs.end()).size());
}

void fill_empirical(DistributionReport& r, const std::vector<double>& values) {
  std::map<double, std::uint64_t> freq;
  for (double v : values) ++freq[v];
  for (const auto& [v, c] : freq) {
    r.support.push_back(v);
    r.probabilities.push_back(static_cast<double>(c) / static_cast<double>(values.size()));
  }
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

DistributionReport distinct_a_distribution_exact(int n) {
  if (n < 2 || n > kMaxExactDistributionSize) {
    throw std::out_of_range("exact distribution supports 2 <= n <= " + std::to_string(kMaxExactDistributionSize));
  }
  DistributionReport r;
  r.name = "distinct_a_exact";
  r.n = n;
  r.exact = true;

  // Route 1: the factorisations. Brute-force enumeration where feasible,
  // otherwise the image of the tree bijection.
  std::vector<std::uint64_t> by_factorisation(static_cast<std::size_t>(n), 0);
  std::uint64_t total = 0;
  if (n <= kMaxEnumerationSize) {
    for (const auto& f : enumerate_minimal_factorisations(n)) {
      if (!is_decreasing(f)) continue;
      ++by_factorisation[static_cast<std::size_t>(distinct_count(f.a_values()))];
      ++total;
    }
    r.notes.push_back("factorisation route: brute-force enumeration of minimal factorisations");
  } else {
    for_each_plane_tree(n, [&](const PlaneTree& t) {
      ++by_factorisation[static_cast<std::size_t>(distinct_count(decreasing_factorisation_of_tree(t).a_values()))];
      ++total;
      return true;
    });
    r.notes.push_back("factorisation route: decreasing factorisations generated from all plane trees");
  }

  // Route 2: non-leaf vertices of plane trees.
  std::vector<std::uint64_t> by_tree(static_cast<std::size_t>(n), 0);
  for_each_plane_tree(n, [&](const PlaneTree& t) {
    ++by_tree[static_cast<std::size_t>(count_non_leaves(t))];
    return true;
  });

  r.denominator = total;
  r.sample_size = total;
  std::vector<double> narayana_col, printed_col;
  // Printed closed form: (n+1)/(n-1) C(n-1,k) C(n-1,k-1) / C(2n,n).
  auto binom = [](int a, int b) {
    double x = 1;
    for (int i = 1; i <= b; ++i) x = x * (a - b + i) / i;
    return x;
  };
  double printed_mass = 0;
  for (int k = 1; k <= n - 1; ++k) {
    r.support.push_back(k);
    r.counts.push_back(by_factorisation[static_cast<std::size_t>(k)]);
    r.probabilities.push_back(static_cast<double>(by_factorisation[static_cast<std::size_t>(k)]) /
                              static_cast<double>(total));
    narayana_col.push_back(static_cast<double>(narayana(n - 1, n - k)) / static_cast<double>(catalan(n - 1)));
    const double printed = (n + 1.0) / (n - 1.0) * binom(n - 1, k) * binom(n - 1, k - 1) / binom(2 * n, n);
    printed_col.push_back(printed);
    printed_mass += printed;
  }
  r.columns.emplace_back("narayana", narayana_col);
  r.columns.emplace_back("printed_formula", printed_col);

  bool routes_agree = true, narayana_agree = true;
  for (int k = 1; k <= n - 1; ++k) {
    routes_agree = routes_agree && by_factorisation[static_cast<std::size_t>(k)] == by_tree[static_cast<std::size_t>(k)];
    narayana_agree = narayana_agree && by_tree[static_cast<std::size_t>(k)] == narayana(n - 1, n - k);
  }
  r.statistics.emplace_back("total", static_cast<double>(total));
  r.statistics.emplace_back("catalan_n_minus_1", static_cast<double>(catalan(n - 1)));
  r.statistics.emplace_back("printed_formula_mass", printed_mass);
  r.checks.emplace_back("routes_agree", routes_agree);
  r.checks.emplace_back("narayana_agree", narayana_agree);
  r.checks.emplace_back("total_is_catalan", total == catalan(n - 1));
  r.checks.emplace_back("mass_is_one", std::abs(r.probability_mass() - 1) <= kThresholds.probability_sum_slack);
  r.notes.push_back("the printed closed form is shown for comparison; its mass is not 1");
  return r;
}

DistributionReport distinct_a_clt(int n, int trials, std::uint64_t seed) {
  if (n < 100 || trials < 100) throw std::invalid_argument("CLT harness needs n >= 100 and trials >= 100");
  std::vector<double> z(static_cast<std::size_t>(trials));
  const double centre = n / 2.0, spread = std::sqrt(n / 8.0);
  parallel_for(z.size(), [&](std::size_t t) {
    Rng rng = Rng::for_trial(seed, t);
    const auto f = decreasing_factorisation_of_tree(sample_uniform_plane_tree(n, rng));
    z[t] = (distinct_count(f.a_values()) - centre) / spread;
  });

  DistributionReport r;
  r.name = "distinct_a_clt";
  r.n = n;
  r.sample_size = static_cast<std::uint64_t>(trials);
  r.seed = seed;
  fill_empirical(r, z);
  const double mean = std::accumulate(z.begin(), z.end(), 0.0) / trials;
  double ss = 0;
  for (double x : z) ss += (x - mean) * (x - mean);
  const double variance = ss / (trials - 1);
  const double ks = ks_distance_to_normal(z);
  r.statistics.emplace_back("mean", mean);
  r.statistics.emplace_back("variance", variance);
  r.statistics.emplace_back("ks_distance", ks);
  r.checks.emplace_back("mean_near_zero", std::abs(mean) < kThresholds.clt_mean_abs);
  r.checks.emplace_back("variance_near_one",
                        variance >= kThresholds.clt_variance_low && variance <= kThresholds.clt_variance_high);
  r.checks.emplace_back("ks_small", ks < kThresholds.clt_ks);
  r.checks.emplace_back("mass_is_one", std::abs(r.probability_mass() - 1) <= 1e-9);
  return r;
}

double parking_statistic(const std::vector<int>& word) {
  const auto m = static_cast<std::int64_t>(word.size());
  if (m == 0) return 0;
  // counts[k] = #{i : w_i <= k}
  std::vector<std::int64_t> at(static_cast<std::size_t>(m) + 1, 0);
  for (int x : word) {
    if (x < 1 || x > m) throw std::invalid_argument("parking word entries must lie in [1, m]");
    ++at[static_cast<std::size_t>(x)];
  }
  std::int64_t below = 0, worst = 0;
  for (std::int64_t k = 0; k < m; ++k) {
    below += at[static_cast<std::size_t>(k)];
    worst = std::max({worst, std::abs(below - k), std::abs(below - k - 1)});
  }
  return std::sqrt(m / 2.0) * static_cast<double>(worst) / static_cast<double>(m);
}

double parking_statistic_from_walk(const LukaPath& path) {
  const auto n = path.steps();
  const auto top = *std::max_element(path.values.begin(), path.values.end());
  return static_cast<double>(top) / std::sqrt(2.0 * n);
}

DistributionReport parking_cdf_fluctuation(int n, int trials, std::uint64_t seed) {
  if (n < 100 || trials < 1) throw std::invalid_argument("parking harness needs n >= 100 and trials >= 1");
  std::vector<double> stat(static_cast<std::size_t>(trials)), from_walk(stat.size()), gap_bound(stat.size());
  parallel_for(stat.size(), [&](std::size_t t) {
    Rng rng = Rng::for_trial(seed, t);
    const auto tree = sample_uniform_plane_tree(n, rng);
    const auto f = decreasing_factorisation_of_tree(tree);
    stat[t] = parking_statistic(to_parking_word(f));
    from_walk[t] = parking_statistic_from_walk(lukasiewicz_path(tree));
    const auto& c = tree.children_counts();
    gap_bound[t] = *std::max_element(c.begin(), c.end()) / std::sqrt(2.0 * n);
  });

  DistributionReport r;
  r.name = "parking_cdf_fluctuation";
  r.n = n;
  r.sample_size = static_cast<std::uint64_t>(trials);
  r.seed = seed;
  fill_empirical(r, stat);
  bool below_crude = true, walk_agrees = true;
  for (std::size_t t = 0; t < stat.size(); ++t) {
    below_crude = below_crude && stat[t] < std::sqrt(n / 2.0);
    walk_agrees = walk_agrees && std::abs(stat[t] - from_walk[t]) <= gap_bound[t];
  }
  r.statistics.emplace_back("median", median(stat));
  r.statistics.emplace_back("mean", std::accumulate(stat.begin(), stat.end(), 0.0) / trials);
  r.statistics.emplace_back("q25", quantile(stat, 0.25));
  r.statistics.emplace_back("q75", quantile(stat, 0.75));
  r.statistics.emplace_back("median_from_walk", median(from_walk));
  r.checks.emplace_back("below_crude_bound", below_crude);
  r.checks.emplace_back("walk_route_agrees", walk_agrees);
  r.checks.emplace_back("mass_is_one", std::abs(r.probability_mass() - 1) <= 1e-9);
  return r;
}

int profile_identity_failure(const Factorisation& f) {
  const auto S = lukasiewicz_path(tree_of_decreasing_factorisation(f)).values;
  const int n = f.n();
  const auto a = f.a_values();
  std::vector<int> total(static_cast<std::size_t>(n) + 1, 0), seen(static_cast<std::size_t>(n) + 1, 0);
  for (int x : a) ++total[static_cast<std::size_t>(x)];
  for (int i = 1; i <= n - 1; ++i) {
    const int ai = a[static_cast<std::size_t>(i - 1)];
    const int s = total[static_cast<std::size_t>(ai)];
    const int r = ++seen[static_cast<std::size_t>(ai)];
    const std::int64_t middle = n - i - ai;
    const auto below = S[static_cast<std::size_t>(ai - 1)], above = S[static_cast<std::size_t>(ai)];
    if (!(below <= middle && middle == below + (s - r) && middle <= above)) return i;
  }
  return 0;
}

bool profile_identity_check(const Factorisation& f) { return profile_identity_failure(f) == 0; }

bool increasing_partition_check(const Factorisation& f) {
  const int n = f.n();
  std::vector<int> mark(static_cast<std::size_t>(n) + 1, 0);
  for (int x : f.a_values()) mark[static_cast<std::size_t>(x)] |= 1;
  for (int x : f.b_values()) mark[static_cast<std::size_t>(x)] |= 2;
  for (int x = 1; x <= n; ++x) {
    if (mark[static_cast<std::size_t>(x)] != 1 && mark[static_cast<std::size_t>(x)] != 2) {
      // n = 1 has no transpositions; its only point is the root.
      if (!(n == 1 && mark[1] == 0)) return false;
    }
  }
  LabeledTree t;
  try {
    t = t1_forward(f);
  } catch (const std::invalid_argument&) {
    return false;
  }
  const auto h = vertex_heights(t.shape);
  for (int v = 0; v < n; ++v) {
    const int label = t.vertex_labels[static_cast<std::size_t>(v)];
    const bool even = h[static_cast<std::size_t>(v)] % 2 == 0;
    if (n > 1 && even != (mark[static_cast<std::size_t>(label)] == 1)) return false;
  }
  return true;
}

}  // namespace mfact
