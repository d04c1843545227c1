#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mfact/bijection.hpp"
#include "mfact/perm.hpp"
#include "mfact/tree.hpp"

using namespace mfact;

namespace {

Factorisation fac(int n, std::vector<std::pair<int, int>> pairs) {
  std::vector<Transposition> taus;
  for (auto [a, b] : pairs) taus.emplace_back(a, b);
  return Factorisation(n, taus);
}

const Factorisation kSize10Decreasing =
    fac(10, {{8, 9}, {8, 10}, {7, 8}, {2, 3}, {2, 4}, {2, 5}, {1, 2}, {1, 6}, {1, 7}});
const Factorisation kSize6Increasing = fac(6, {{1, 4}, {1, 6}, {2, 4}, {3, 4}, {5, 6}});

// Cubic scan straight from the definition.
bool avoids_231_brute(const std::vector<int>& w) {
  const auto m = w.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        if (w[k] < w[i] && w[i] < w[j]) return false;
  return true;
}

}  // namespace

TEST_CASE("transpositions are normalised") {
  Transposition t(5, 2);
  CHECK(t.a == 2);
  CHECK(t.b == 5);
  CHECK_THROWS_AS(Transposition(3, 3), std::invalid_argument);
}

TEST_CASE("factorisation shape is validated") {
  CHECK_THROWS(fac(3, {{1, 2}}));
  CHECK_THROWS(fac(3, {{1, 2}, {1, 4}}));
  CHECK_THROWS(Factorisation(0, {}));
  CHECK(Factorisation(1, {}).size() == 0);
}

TEST_CASE("cycle property, composition applies the first factor first") {
  CHECK(is_cycle_factorisation(fac(3, {{1, 2}, {1, 3}})));
  CHECK_FALSE(is_cycle_factorisation(fac(3, {{1, 2}, {2, 3}})));
  CHECK(is_cycle_factorisation(fac(3, {{2, 3}, {1, 2}})));
  CHECK(is_cycle_factorisation(kSize10Decreasing));
  CHECK(is_cycle_factorisation(kSize6Increasing));
  CHECK(is_cycle_factorisation(fac(2, {{1, 2}})));
  CHECK(is_cycle_factorisation(Factorisation(1, {})));
  // ((1 2),(2 3)): 1 -> 2 -> 3, 2 -> 1, 3 -> 2 -> ... gives 1->3, 2->1, 3->2.
  CHECK(compose(fac(3, {{1, 2}, {2, 3}})) == std::vector<int>{0, 3, 1, 2});
}

TEST_CASE("monotone classes") {
  CHECK(monotone_class(fac(3, {{1, 2}, {1, 3}})) == Monotonicity::both);
  CHECK(monotone_class(kSize10Decreasing) == Monotonicity::decreasing);
  CHECK(monotone_class(kSize6Increasing) == Monotonicity::increasing);
  CHECK(monotone_class(fac(4, {{2, 3}, {1, 4}, {3, 4}})) == Monotonicity::neither);
  CHECK(std::string(to_string(Monotonicity::both)) == "both");
}

TEST_CASE("parking and 231 words") {
  CHECK(to_parking_word(fac(3, {{2, 3}, {1, 2}})) == std::vector<int>{1, 2});
  CHECK(to_parking_word(fac(3, {{1, 2}, {1, 3}})) == std::vector<int>{1, 1});
  CHECK(to_parking_word(kSize10Decreasing) == std::vector<int>{1, 1, 1, 2, 2, 2, 7, 8, 8});
  CHECK(to_231_word(fac(3, {{2, 3}, {1, 2}})) == std::vector<int>{2, 3});
  CHECK(to_231_word(fac(3, {{1, 2}, {1, 3}})) == std::vector<int>{3, 2});
  CHECK(to_231_word(kSize10Decreasing) == std::vector<int>{7, 6, 2, 5, 4, 3, 8, 10, 9});
  CHECK_THROWS(to_parking_word(kSize6Increasing));
  CHECK_THROWS(to_231_word(kSize6Increasing));
}

TEST_CASE("231 avoidance") {
  CHECK(is_231_avoiding(std::vector<int>{3, 2}));
  CHECK_FALSE(is_231_avoiding(std::vector<int>{2, 3, 1}));
  CHECK(is_231_avoiding(std::vector<int>{7, 6, 2, 5, 4, 3, 8, 10, 9}));
  CHECK(is_231_avoiding(std::vector<int>{}));
  CHECK_THROWS(is_231_avoiding(std::vector<int>{1, 1}));
  // Stack test against the cubic definition on every permutation of 6.
  std::vector<int> w{1, 2, 3, 4, 5, 6};
  int agree = 0, total = 0;
  do {
    agree += is_231_avoiding(w) == avoids_231_brute(w);
    ++total;
  } while (std::next_permutation(w.begin(), w.end()));
  CHECK(agree == total);
  // 231-avoiders of length m are counted by Catalan(m).
  int count = 0;
  w = {1, 2, 3, 4, 5, 6};
  do count += is_231_avoiding(w);
  while (std::next_permutation(w.begin(), w.end()));
  CHECK(count == 132);
}

TEST_CASE("increasing parking functions") {
  CHECK(is_increasing_parking_function(std::vector<int>{1, 1}));
  CHECK(is_increasing_parking_function(std::vector<int>{1, 2, 2}));
  CHECK_FALSE(is_increasing_parking_function(std::vector<int>{2, 2}));
  CHECK(is_increasing_parking_function(std::vector<int>{1, 1, 1, 2, 2, 2, 7, 8, 8}));
  CHECK_FALSE(is_increasing_parking_function(std::vector<int>{1, 3, 2}));
  CHECK(is_increasing_parking_function(std::vector<int>{}));
}

TEST_CASE("brute-force enumeration") {
  CHECK(enumerate_minimal_factorisations(2) == std::vector<Factorisation>{fac(2, {{1, 2}})});
  CHECK(enumerate_minimal_factorisations(3).size() == 3);
  CHECK(enumerate_minimal_factorisations(4).size() == 16);
  CHECK(enumerate_minimal_factorisations(5).size() == 125);
  CHECK(enumerate_minimal_factorisations(6).size() == 1296);
  CHECK_THROWS_AS(enumerate_minimal_factorisations(8), std::out_of_range);
  CHECK_THROWS_AS(enumerate_minimal_factorisations(1), std::out_of_range);
  const auto all = enumerate_minimal_factorisations(5);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& f : all) CHECK(is_cycle_factorisation(f));
}

TEST_CASE("oracle filters equal the bijection images, n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    std::set<Factorisation> dec_oracle, inc_oracle, dec_gen, inc_gen;
    for (const auto& f : enumerate_minimal_factorisations(n)) {
      if (is_decreasing(f)) dec_oracle.insert(f);
      if (is_increasing(f)) inc_oracle.insert(f);
    }
    for (const auto& t : enumerate_plane_trees(n)) {
      dec_gen.insert(decreasing_factorisation_of_tree(t));
      inc_gen.insert(increasing_factorisation_of_tree(t));
    }
    CHECK(dec_oracle == dec_gen);
    CHECK(inc_oracle == inc_gen);
    CHECK(dec_gen.size() == catalan(n - 1));
  }
}

TEST_CASE("Prop 1.1(1) and Prop 1.4(1) on every monotone factorisation, n <= 8") {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& t : enumerate_plane_trees(n)) {
      const auto d = decreasing_factorisation_of_tree(t);
      auto b = d.b_values();
      std::sort(b.begin(), b.end());
      for (int i = 0; i < n - 1; ++i) CHECK(b[static_cast<std::size_t>(i)] == i + 2);
      CHECK(is_increasing_parking_function(to_parking_word(d)));
      CHECK(is_231_avoiding(to_231_word(d)));

      const auto u = increasing_factorisation_of_tree(t);
      std::set<int> as, bs;
      for (int x : u.a_values()) as.insert(x);
      for (int x : u.b_values()) bs.insert(x);
      std::set<int> both;
      std::set_intersection(as.begin(), as.end(), bs.begin(), bs.end(), std::inserter(both, both.begin()));
      CHECK(both.empty());
      CHECK(as.size() + bs.size() == static_cast<std::size_t>(n));
    }
  }
}
