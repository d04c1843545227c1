#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mfact/bijection.hpp"
#include "mfact/lamination.hpp"
#include "mfact/rng.hpp"
#include "mfact/stats.hpp"

using namespace mfact;

namespace {

using Q = Rational;

Factorisation fac(int n, std::vector<std::pair<int, int>> pairs) {
  std::vector<Transposition> taus;
  for (auto [a, b] : pairs) taus.emplace_back(a, b);
  return Factorisation(n, taus);
}

Chord ch(Q u, Q v) { return Chord(u, v); }

const Factorisation kCherry = fac(3, {{1, 2}, {1, 3}});
const Factorisation kPath = fac(3, {{2, 3}, {1, 2}});
const Factorisation kSize10 = fac(10, {{8, 9}, {8, 10}, {7, 8}, {2, 3}, {2, 4}, {2, 5}, {1, 2}, {1, 6}, {1, 7}});

WalkExcursion excursion_of(const Factorisation& f) {
  return WalkExcursion(lukasiewicz_path(tree_of_decreasing_factorisation(f)));
}

// ---- oracles ----------------------------------------------------------------

double point_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double s = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(p.x - a.x - s * dx, p.y - a.y - s * dy);
}

// Samples each chord of A at spacing <= 2 tol (endpoints included) and takes
// exact distances to B: underestimates the directed distance by at most tol.
double directed_sampled(const std::vector<Chord>& A, const std::vector<Chord>& B, double tol) {
  double best = 0;
  for (const auto& c : A) {
    const Point a = circle_point(c.u), b = circle_point(c.v);
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil(len / (2 * tol))));
    for (long k = 0; k <= steps; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(steps);
      const Point p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      double d = 1e9;
      for (const auto& e : B) d = std::min(d, point_segment(p, circle_point(e.u), circle_point(e.v)));
      best = std::max(best, d);
    }
  }
  return best;
}

double hausdorff_sampled(const std::vector<Chord>& A, const std::vector<Chord>& B, double tol) {
  return std::max(directed_sampled(A, B, tol), directed_sampled(B, A, tol));
}

// Good cords by brute force: for every grid point v = j/(n-1), every u <= v
// where the interpolated walk takes the value S_j, filtered by is_good_cord.
std::set<std::pair<Q, Q>> good_cords_brute(const WalkExcursion& w) {
  std::set<std::pair<Q, Q>> out;
  const auto& S = w.path().values;
  const int m = w.n() - 1;  // grid steps
  if (m == 0) {
    out.insert({Q(0), Q(0)});
    return out;
  }
  for (int j = 0; j <= m; ++j) {
    const Q v(j, m);
    const auto level = S[static_cast<std::size_t>(j)];
    std::vector<Q> candidates;
    for (int k = 0; k < j; ++k) {
      const auto lo = S[static_cast<std::size_t>(k)], hi = S[static_cast<std::size_t>(k + 1)];
      if (lo == level) candidates.emplace_back(k, m);
      if (lo != hi && std::min(lo, hi) < level && level < std::max(lo, hi)) {
        candidates.push_back((Q(k) + Q(level - lo, hi - lo)) / m);
      }
    }
    candidates.push_back(v);
    for (const auto& u : candidates) {
      if (is_good_cord(w, ch(u, v))) out.insert({u, v});
    }
  }
  return out;
}

std::set<std::pair<Q, Q>> as_set(const std::vector<Chord>& cs, bool nontrivial_only) {
  std::set<std::pair<Q, Q>> out;
  for (const auto& c : cs) {
    if (!nontrivial_only || !c.trivial()) out.insert({c.u, c.v});
  }
  return out;
}

std::vector<Chord> formula_cords(const Factorisation& f) {
  const auto ranks = rank_data(f);
  std::vector<Chord> out;
  for (int i = 1; i <= ranks.size(); ++i) {
    if (ranks.rank[static_cast<std::size_t>(i - 1)] >= 2) out.push_back(good_cord_for_index(f, ranks, i));
  }
  return out;
}

}  // namespace

TEST_CASE("chords") {
  CHECK(ch(0, 0).trivial());
  CHECK(ch(0, 1).trivial());
  CHECK(ch(Q(1, 3), Q(1, 3)).trivial());
  CHECK_FALSE(ch(0, Q(1, 2)).trivial());
  CHECK_THROWS(ch(Q(1, 2), Q(1, 3)));
  CHECK_THROWS(ch(Q(-1, 2), Q(1, 3)));
  CHECK_THROWS(ch(0, Q(3, 2)));
  const auto p = circle_point(Q(1, 4));
  CHECK(p.x == doctest::Approx(0).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(-1));
}

TEST_CASE("crossing predicate") {
  CHECK(chords_cross(ch(0, Q(1, 2)), ch(Q(1, 4), Q(3, 4))));
  CHECK_FALSE(chords_cross(ch(0, Q(1, 2)), ch(Q(1, 8), Q(1, 4))));
  CHECK_FALSE(chords_cross(ch(0, Q(1, 2)), ch(Q(1, 2), Q(3, 4))));
  CHECK(chords_cross(ch(Q(1, 4), Q(3, 4)), ch(0, Q(1, 2))));
  CHECK(is_non_crossing({ch(0, Q(1, 2)), ch(Q(1, 8), Q(1, 4)), ch(Q(1, 2), 1)}));
  CHECK_FALSE(is_non_crossing({ch(0, Q(1, 2)), ch(Q(1, 8), Q(1, 4)), ch(Q(1, 4), Q(3, 4))}));
  CHECK_THROWS(Lamination({ch(0, Q(1, 2)), ch(Q(1, 4), Q(3, 4))}));
}

TEST_CASE("non-crossing sweep agrees with the pairwise test") {
  Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Chord> cs;
    const int m = 1 + static_cast<int>(rng.below(6));
    for (int k = 0; k < m; ++k) {
      Q a(static_cast<std::int64_t>(rng.below(9)), 8), b(static_cast<std::int64_t>(rng.below(9)), 8);
      if (b < a) std::swap(a, b);
      cs.push_back(ch(a, b));
    }
    bool pairwise = true;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) pairwise = pairwise && !chords_cross(cs[i], cs[j]);
    CHECK(is_non_crossing(cs) == pairwise);
  }
}

TEST_CASE("discrete lamination process") {
  const auto P = discrete_lamination_process(kPath);
  CHECK(P.snapshot(0).chords() == std::vector<Chord>{ch(0, 0)});
  CHECK(P.snapshot(1).chords() == std::vector<Chord>{ch(Q(2, 3), 1)});
  const auto L2 = P.snapshot(2).chords();
  CHECK(std::set<std::pair<Q, Q>>{{Q(2, 3), 1}, {Q(1, 3), Q(2, 3)}} == as_set(L2, false));
  CHECK(P.snapshot(3).chords() == P.snapshot(2).chords());
  CHECK(P.at_time(Q(1, 2)).chords() == P.snapshot(1).chords());
  CHECK(P.at_time(1).chords() == P.snapshot(2).chords());

  const auto L9 = discrete_lamination_process(kSize10).snapshot(9).chords();
  CHECK(std::count(L9.begin(), L9.end(), ch(Q(1, 10), Q(2, 10))) == 1);
  CHECK(std::count(L9.begin(), L9.end(), ch(Q(8, 10), 1)) == 1);
  CHECK(discrete_lamination_process(Factorisation(1, {})).snapshot(0).chords() == std::vector<Chord>{ch(0, 0)});
  CHECK_THROWS(discrete_lamination_process(fac(3, {{1, 2}, {2, 3}})));
}

TEST_CASE("every snapshot of every monotone factorisation is non-crossing, n <= 8") {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& t : enumerate_plane_trees(n)) {
      for (const auto& f : {decreasing_factorisation_of_tree(t), increasing_factorisation_of_tree(t)}) {
        const auto P = discrete_lamination_process(f);
        for (int k = 0; k <= n; ++k) CHECK(is_non_crossing(P.snapshot(k).chords()));
      }
    }
  }
}

TEST_CASE("rank data") {
  const auto c = rank_data(kCherry);
  CHECK(c.siblings == std::vector<int>{2, 2});
  CHECK(c.rank == std::vector<int>{1, 2});
  CHECK_FALSE(c.h[0].has_value());
  CHECK(*c.h[1] == Q(0));
  const auto p = rank_data(kPath);
  CHECK(p.siblings == std::vector<int>{1, 1});
  CHECK(p.rank == std::vector<int>{1, 1});
  CHECK_FALSE(p.h[0].has_value());
  CHECK_FALSE(p.h[1].has_value());

  const auto r = rank_data(kSize10);
  // a-value 2 sits at positions 4, 5, 6.
  CHECK(r.a[4] == 2);
  CHECK(r.siblings[4] == 3);
  CHECK(r.rank[4] == 2);
  CHECK(*r.h[4] == Q(0));
  CHECK(r.a[5] == 2);
  CHECK(r.b[5] == 5);
  CHECK(r.siblings[5] == 3);
  CHECK(r.rank[5] == 3);
  CHECK(*r.h[5] == Q(1, 2));
  CHECK_THROWS(rank_data(fac(6, {{1, 4}, {1, 6}, {2, 4}, {3, 4}, {5, 6}})));
}

TEST_CASE("good cords from the formula") {
  CHECK(good_cord_for_index(kCherry, 2) == ch(Q(1, 2), Q(1, 2)));
  CHECK(good_cord_for_index(kSize10, 6) == ch(Q(1, 6), Q(1, 3)));
  CHECK(good_cord_for_index(kSize10, 5) == ch(Q(2, 9), Q(2, 9)));
  CHECK_THROWS(good_cord_for_index(kCherry, 1));
  const auto ranks = rank_data(kSize10);
  for (int i = 1; i <= 9; ++i) {
    if (ranks.rank[static_cast<std::size_t>(i - 1)] == 2) {
      CHECK(good_cord_for_index(kSize10, i).u == Q(ranks.a[static_cast<std::size_t>(i - 1)], 9));
    }
  }
}

TEST_CASE("excursion queries") {
  const auto w = excursion_of(kCherry);
  CHECK(w(0) == Q(0));
  CHECK(w(Q(1, 2)) == Q(1));
  CHECK(w(Q(1, 4)) == Q(1, 2));
  CHECK(w(1) == Q(0));
  CHECK(w.min_on(Q(1, 4), Q(1, 2)) == Q(1, 2));
  CHECK_THROWS(w(Q(3, 2)));
}

TEST_CASE("good-cord predicate") {
  const auto cherry = excursion_of(kCherry);
  CHECK(is_good_cord(cherry, ch(0, 1)));
  CHECK(is_good_cord(cherry, ch(Q(1, 2), Q(1, 2))));
  CHECK_FALSE(is_good_cord(cherry, ch(Q(1, 4), Q(3, 4))));
  CHECK(is_cord(cherry, ch(Q(1, 4), Q(3, 4))));
  // Maximal (neither end extends on its own) but v = 3/4 is off the grid.
  CHECK(is_maximal_cord(cherry, ch(Q(1, 4), Q(3, 4))));
  CHECK(is_maximal_cord(cherry, ch(Q(1, 2), Q(1, 2))));
  CHECK_FALSE(is_cord(cherry, ch(0, Q(1, 2))));
  const auto flat = excursion_of(kPath);
  CHECK(is_good_cord(flat, ch(0, 1)));
  CHECK(enumerate_good_cords(cherry) == std::vector<Chord>{ch(0, 1), ch(Q(1, 2), Q(1, 2))});
  CHECK(enumerate_good_cords(WalkExcursion(lukasiewicz_path(PlaneTree()))) == std::vector<Chord>{ch(0, 0)});
}

TEST_CASE("cords of an excursion never cross") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = WalkExcursion(lukasiewicz_path(sample_uniform_plane_tree(20, rng)));
    const auto good = enumerate_good_cords(w);
    CHECK(is_non_crossing(good));
  }
}

TEST_CASE("good-cord correspondence, exhaustive n <= 8") {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& t : enumerate_plane_trees(n)) {
      const auto f = decreasing_factorisation_of_tree(t);
      const WalkExcursion w(lukasiewicz_path(t));
      const auto formula = formula_cords(f);
      for (const auto& c : formula) CHECK(is_good_cord(w, c));
      const auto scan = enumerate_good_cords(w);
      CHECK(as_set(scan, true) == as_set(formula, true));
      CHECK(as_set(scan, false) == good_cords_brute(w));
    }
  }
}

TEST_CASE("good-cord correspondence, random n <= 200") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(199));
    const auto t = sample_uniform_plane_tree(n, rng);
    const auto f = decreasing_factorisation_of_tree(t);
    const WalkExcursion w(lukasiewicz_path(t));
    const auto formula = formula_cords(f);
    for (const auto& c : formula) CHECK(is_good_cord(w, c));
    CHECK(as_set(enumerate_good_cords(w), true) == as_set(formula, true));
    if (n <= 60) CHECK(as_set(enumerate_good_cords(w), false) == good_cords_brute(w));
  }
}

TEST_CASE("sandwich identity") {
  CHECK(profile_identity_check(kCherry));
  CHECK(profile_identity_check(kSize10));
  for (int n = 1; n <= 8; ++n) {
    for (const auto& t : enumerate_plane_trees(n)) CHECK(profile_identity_check(decreasing_factorisation_of_tree(t)));
  }
}

TEST_CASE("time change") {
  const auto phi = alignment_time_change(kCherry);
  CHECK(phi.breakpoints == std::vector<std::pair<Q, Q>>{{0, 0}, {Q(2, 3), Q(1, 2)}, {1, 1}});
  CHECK(phi.strictly_increasing());
  CHECK(phi(Q(1, 3)) == Q(1, 4));
  CHECK(phi.sup_distance_to_identity() == Q(1, 6));
  const auto id = alignment_time_change(kPath);
  CHECK(id.breakpoints == std::vector<std::pair<Q, Q>>{{0, 0}, {1, 1}});
  for (int n = 2; n <= 8; ++n) {
    for (const auto& t : enumerate_plane_trees(n)) CHECK(alignment_time_change(decreasing_factorisation_of_tree(t)).strictly_increasing());
  }
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = decreasing_factorisation_of_tree(sample_uniform_plane_tree(1000, rng));
    const auto p = alignment_time_change(f);
    CHECK(p.strictly_increasing());
  }
}

TEST_CASE("Hausdorff distance: worked examples") {
  const std::vector<Chord> point{ch(0, 0)}, diameter{ch(0, Q(1, 2))};
  CHECK(hausdorff_distance(point, point) == doctest::Approx(0).epsilon(1e-4));
  CHECK(std::abs(hausdorff_distance(point, diameter) - 2) <= 1e-4);
  CHECK(std::abs(hausdorff_distance(diameter, {ch(0, Q(1, 2)), ch(0, 0)})) <= 1e-4);
  CHECK_THROWS(hausdorff_distance(std::vector<Chord>{}, point));
  CHECK_THROWS(hausdorff_distance(point, point, 0));
}

TEST_CASE("Hausdorff distance against the uniform sampling oracle") {
  Rng rng(23);
  const double tol = 1e-3;
  auto random_set = [&]() {
    std::vector<Chord> cs;
    const int m = 1 + static_cast<int>(rng.below(5));
    for (int k = 0; k < m; ++k) {
      Q a(static_cast<std::int64_t>(rng.below(61)), 60), b(static_cast<std::int64_t>(rng.below(61)), 60);
      if (b < a) std::swap(a, b);
      cs.push_back(ch(a, b));
    }
    return cs;
  };
  for (int trial = 0; trial < 150; ++trial) {
    const auto A = random_set(), B = random_set(), C = random_set();
    const double ab = hausdorff_distance(A, B, tol);
    CHECK(std::abs(ab - hausdorff_sampled(A, B, tol)) <= 2 * tol);
    CHECK(ab == hausdorff_distance(B, A, tol));
    CHECK(ab <= hausdorff_distance(A, C, tol) + hausdorff_distance(C, B, tol) + 3 * tol);
  }
  // Larger sets exercise the grid index.
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = decreasing_factorisation_of_tree(sample_uniform_plane_tree(80, rng));
    const auto P = discrete_lamination_process(f);
    const auto A = P.snapshot(79).chords();
    const auto B = enumerate_good_cords(excursion_of(f));
    CHECK(std::abs(hausdorff_distance(A, B, tol) - hausdorff_sampled(A, B, tol)) <= 2 * tol);
  }
}

TEST_CASE("alignment bound") {
  const auto cherry = alignment_bound(kCherry);
  CHECK(cherry.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
  CHECK(cherry.time_term == doctest::Approx(1.0 / 6));
  CHECK(cherry.phi_increasing);
  const auto two = alignment_bound(fac(2, {{1, 2}}));
  CHECK(std::isfinite(two.value));
  // Halving the tolerance moves the answer by at most the tolerance.
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = decreasing_factorisation_of_tree(sample_uniform_plane_tree(300, rng));
    const double a = alignment_bound(f, 1e-3).value, b = alignment_bound(f, 5e-4).value;
    CHECK(std::abs(a - b) <= 1e-3);
  }
}

TEST_CASE("alignment bound against a direct per-index evaluation") {
  // Recompute max_i d_H(L_i, G_{phi(i/n)}) naively with the sampling oracle.
  Rng rng(77);
  const double tol = 1e-3;
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(20));
    const auto f = decreasing_factorisation_of_tree(sample_uniform_plane_tree(n, rng));
    const auto P = discrete_lamination_process(f);
    const auto phi = alignment_time_change(f);
    const auto good = enumerate_good_cords(excursion_of(f));
    double worst = 0;
    for (int i = 1; i <= n - 1; ++i) {
      const Q s = phi(Q(i, n));
      std::vector<Chord> G{ch(0, 0)};
      for (const auto& g : good) {
        if (g.u >= 1 - s) G.push_back(g);
      }
      worst = std::max(worst, hausdorff_sampled(P.snapshot(i).chords(), G, tol));
    }
    const auto bound = alignment_bound(f, tol);
    CHECK(std::abs(bound.hausdorff_term - worst) <= 2 * tol);
    CHECK(bound.value == std::max(bound.hausdorff_term, bound.time_term));
  }
}

TEST_CASE("svg rendering") {
  const auto dot = render_svg(Lamination({ch(0, 0)}));
  CHECK(dot.find("<circle") != std::string::npos);
  CHECK(dot.find("<line") == std::string::npos);
  const auto two = render_svg(discrete_lamination_process(kCherry).snapshot(2));
  std::size_t lines = 0;
  for (auto p = two.find("<line"); p != std::string::npos; p = two.find("<line", p + 1)) ++lines;
  CHECK(lines == 2);
  CHECK(two == render_svg(discrete_lamination_process(kCherry).snapshot(2)));
}
