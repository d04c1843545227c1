#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mfact/perm.hpp"
#include "mfact/tree.hpp"

namespace mfact {

// Pass/fail thresholds shared by the statistical harnesses and the
// acceptance suite.
struct Thresholds {
  double clt_mean_abs = 0.1;
  double clt_variance_low = 0.9;
  double clt_variance_high = 1.1;
  double clt_ks = 0.05;
  double parking_median_relative = 0.10;
  double tree_frequency_max_deviation = 5e-4;
  double chi_square_min_p = 1e-3;
  double probability_sum_slack = 1e-12;
};

inline constexpr Thresholds kThresholds{};

struct DistributionReport {
  std::string name;
  int n = 0;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  bool exact = false;

  std::vector<double> support;
  std::vector<double> probabilities;
  // Exact reports: probabilities[k] = counts[k] / denominator.
  std::vector<std::uint64_t> counts;
  std::uint64_t denominator = 0;
  // Extra per-support columns, e.g. closed forms printed for comparison.
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  std::vector<std::pair<std::string, double>> statistics;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> notes;

  bool passed() const;
  double statistic(const std::string& key) const;
  double probability_mass() const;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

// Narayana number N(m, k) = C(m,k) C(m,k-1) / m: plane trees with m edges and k leaves.
std::uint64_t narayana(int m, int k);

double standard_normal_cdf(double x);
// sup_x |F_emp(x) - Phi(x)|, handling ties in the sample.
double ks_distance_to_normal(std::vector<double> sample);
// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_survival(double statistic, int dof);

constexpr int kMaxExactDistributionSize = 10;

// Law of #{distinct a_i} over decreasing factorisations of size n (2..10),
// computed from the factorisations themselves and from the non-leaf counts
// of plane trees; the two must agree exactly.
DistributionReport distinct_a_distribution_exact(int n);

// Monte Carlo law of (#{distinct a} - n/2) / sqrt(n/8). n >= 100, trials >= 100.
DistributionReport distinct_a_clt(int n, int trials, std::uint64_t seed);

// sqrt(m/2) * sup_x |F(x) - x| for an increasing parking function of length m,
// F(x) = #{i : w_i <= m x} / m, evaluated exactly at the jump points.
double parking_statistic(const std::vector<int>& word);
// The same profile read off the walk: max_k S_k / sqrt(2n).
double parking_statistic_from_walk(const LukaPath& path);

// Monte Carlo law of parking_statistic over uniform increasing parking
// functions obtained from uniform decreasing factorisations. n >= 100.
DistributionReport parking_cdf_fluctuation(int n, int trials, std::uint64_t seed);

// S_{a-1} <= n - i - a = S_{a-1} + (s(i) - r(i)) <= S_a for every i.
// Returns 0 when all hold, else the first failing index.
int profile_identity_failure(const Factorisation& f);
bool profile_identity_check(const Factorisation& f);

// a-set and b-set partition {1..n}, and the a-set is the set of labels at
// even height in the labeled tree of f.
bool increasing_partition_check(const Factorisation& f);

double median(std::vector<double> values);

}  // namespace mfact
