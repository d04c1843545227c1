#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "mfact/perm.hpp"
#include "mfact/tree.hpp"

namespace mfact {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& q);

// Chord [[u, v]] of the unit disk joining exp(-2 pi i u) and exp(-2 pi i v).
struct Chord {
  Rational u{0};
  Rational v{0};

  Chord() = default;
  // Throws unless 0 <= u <= v <= 1.
  Chord(Rational u_, Rational v_);

  // Degenerates to a point: u = v, or (u, v) = (0, 1).
  bool trivial() const;

  friend bool operator==(const Chord&, const Chord&) = default;
};

bool operator<(const Chord& x, const Chord& y);

struct Point {
  double x = 0;
  double y = 0;
};

// exp(-2 pi i s) as a plane point.
Point circle_point(const Rational& s);

// Strict interleaving of the endpoints; shared endpoints do not cross.
bool chords_cross(const Chord& c1, const Chord& c2);

// A finite set of pairwise non-crossing chords.
class Lamination {
public:
  Lamination() = default;
  // Throws std::invalid_argument if two chords cross.
  explicit Lamination(std::vector<Chord> chords);

  const std::vector<Chord>& chords() const { return chords_; }
  std::size_t size() const { return chords_.size(); }
  bool empty() const { return chords_.empty(); }

private:
  std::vector<Chord> chords_;
};

// O(m log m) check: intervals must be nested or disjoint (touching allowed).
bool is_non_crossing(const std::vector<Chord>& chords);

// L_0 = {[[0,0]]}, L_k = {[[a_i/n, b_i/n]] : i <= k}, L_n = L_{n-1}.
class StepLaminationProcess {
public:
  // Throws unless f is a minimal factorisation whose chords do not cross.
  explicit StepLaminationProcess(const Factorisation& f);

  int n() const { return n_; }
  // Chord c_i for 1 <= i <= n-1.
  const Chord& chord(int i) const { return chords_.at(static_cast<std::size_t>(i - 1)); }
  Lamination snapshot(int k) const;
  // Snapshot active at time t in [0,1], i.e. L_{floor(n t)}.
  Lamination at_time(const Rational& t) const;

private:
  int n_;
  std::vector<Chord> chords_;
};

StepLaminationProcess discrete_lamination_process(const Factorisation& f);

// The walk S interpolated linearly and rescaled to [0,1]:
// w(t) = S_{(n-1)t}. With n = 1 the excursion is the constant 0.
class WalkExcursion {
public:
  explicit WalkExcursion(LukaPath path);

  int n() const { return path_.steps(); }
  const LukaPath& path() const { return path_; }
  // Throws unless 0 <= t <= 1.
  Rational operator()(const Rational& t) const;
  // Minimum over [u, v], exact.
  Rational min_on(const Rational& u, const Rational& v) const;
  // Integer slope (in units of S) of the linear piece just left / right of t.
  // Undefined at t = 0 (left) and t = 1 (right).
  std::int64_t slope_left_of(const Rational& t) const;
  std::int64_t slope_right_of(const Rational& t) const;

private:
  LukaPath path_;
};

// Sibling count, rank and h for each transposition index (1-based access).
struct RankData {
  std::vector<int> a, b;
  std::vector<int> siblings;  // s(i)
  std::vector<int> rank;      // r(i)
  std::vector<std::optional<Rational>> h;  // (r-2)/(s-1), present iff r >= 2

  int size() const { return static_cast<int>(a.size()); }
};

// Throws unless f is decreasing.
RankData rank_data(const Factorisation& f);

// [[(a_i - h(i))/(n-1), (b_i - 2)/(n-1)]]; throws if r(i) < 2.
Chord good_cord_for_index(const Factorisation& f, int i);
Chord good_cord_for_index(const Factorisation& f, const RankData& ranks, int i);

bool is_cord(const WalkExcursion& w, const Chord& c);
bool is_maximal_cord(const WalkExcursion& w, const Chord& c);
// Maximal cord whose right endpoint lies on the grid j/(n-1).
bool is_good_cord(const WalkExcursion& w, const Chord& c);

// All good cords, sorted by (u, v).
std::vector<Chord> enumerate_good_cords(const WalkExcursion& w);

// Piecewise-linear increasing map of [0,1] given by its breakpoints.
struct TimeChange {
  std::vector<std::pair<Rational, Rational>> breakpoints;
  // Human-readable descriptions of any non-increasing consecutive pair.
  std::vector<std::string> violations;

  bool strictly_increasing() const { return violations.empty(); }
  Rational operator()(const Rational& t) const;
  // max |phi(x) - x|, attained at a breakpoint.
  Rational sup_distance_to_identity() const;
};

// phi(0) = 0, phi(i/n) = 1 - (a_i - h(i))/(n-1) where r(i) >= 2, phi(1) = 1.
TimeChange alignment_time_change(const Factorisation& f);

constexpr double kDefaultHausdorffTolerance = 1e-4;

// Hausdorff distance between the unions of two chord sets, within `tol`.
double hausdorff_distance(const Lamination& A, const Lamination& B, double tol = kDefaultHausdorffTolerance);
double hausdorff_distance(const std::vector<Chord>& A, const std::vector<Chord>& B,
                          double tol = kDefaultHausdorffTolerance);

struct AlignmentBound {
  double value = 0;          // D_n
  double time_term = 0;      // max |phi - Id|
  double hausdorff_term = 0; // max_i d_H(L_i, G_{phi(i/n)})
  bool phi_increasing = true;
};

// D_n for a decreasing factorisation with n >= 2, Hausdorff part within tol.
AlignmentBound alignment_bound(const Factorisation& f, double tol = kDefaultHausdorffTolerance);

struct SvgOptions {
  int size_px = 512;
  double stroke_width = 1.0;
  double point_radius = 3.0;
};

// SVG 1.1 picture: unit circle, one line per chord, a dot per trivial chord.
std::string render_svg(const Lamination& L, const SvgOptions& options = {});

}  // namespace mfact
