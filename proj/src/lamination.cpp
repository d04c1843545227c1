#include "mfact/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mfact/bijection.hpp"

namespace mfact {

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Chord::Chord(Rational u_, Rational v_) : u(u_), v(v_) {
  if (u < 0 || v > 1 || v < u) throw std::invalid_argument("chord endpoints must satisfy 0 <= u <= v <= 1");
}

// Mixed rational/int equality recurses under C++20 rewritten comparisons with
// Boost 1.74, so compare against rationals.
const Rational kZero(0), kOne(1);

bool Chord::trivial() const { return u == v || (u == kZero && v == kOne); }

bool operator<(const Chord& x, const Chord& y) {
  if (x.u != y.u) return x.u < y.u;
  return x.v < y.v;
}

Point circle_point(const Rational& s) {
  const double angle = 2.0 * std::numbers::pi * to_double(s);
  return {std::cos(angle), -std::sin(angle)};
}

bool chords_cross(const Chord& c1, const Chord& c2) {
  return (c1.u < c2.u && c2.u < c1.v && c1.v < c2.v) || (c2.u < c1.u && c1.u < c2.v && c2.v < c1.v);
}

bool is_non_crossing(const std::vector<Chord>& chords) {
  std::vector<const Chord*> order;
  order.reserve(chords.size());
  for (const auto& c : chords) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Chord* x, const Chord* y) {
    if (x->u != y->u) return x->u < y->u;
    return x->v > y->v;
  });
  // Chain of nested open intervals, innermost on top.
  std::vector<const Chord*> open;
  for (const Chord* c : order) {
    while (!open.empty() && open.back()->v <= c->u) open.pop_back();
    if (!open.empty() && chords_cross(*open.back(), *c)) return false;
    open.push_back(c);
  }
  return true;
}

Lamination::Lamination(std::vector<Chord> chords) : chords_(std::move(chords)) {
  if (!is_non_crossing(chords_)) throw std::invalid_argument("lamination chords cross");
}

StepLaminationProcess::StepLaminationProcess(const Factorisation& f) : n_(f.n()) {
  if (!is_cycle_factorisation(f)) throw std::invalid_argument("lamination process needs a minimal factorisation");
  chords_.reserve(f.size());
  for (const auto& t : f.taus()) chords_.emplace_back(Rational(t.a, n_), Rational(t.b, n_));
  // Snapshots are nested, so checking the last one covers them all.
  if (!is_non_crossing(chords_)) throw std::invalid_argument("factorisation chords cross");
}

Lamination StepLaminationProcess::snapshot(int k) const {
  if (k < 0 || k > n_) throw std::out_of_range("snapshot index must lie in [0, n]");
  if (k == 0 || n_ == 1) return Lamination({Chord()});
  const auto count = static_cast<std::size_t>(std::min(k, n_ - 1));
  return Lamination(std::vector<Chord>(chords_.begin(), chords_.begin() + static_cast<std::ptrdiff_t>(count)));
}

Lamination StepLaminationProcess::at_time(const Rational& t) const {
  if (t < 0 || t > 1) throw std::out_of_range("time must lie in [0, 1]");
  const Rational scaled = t * Rational(n_);
  return snapshot(static_cast<int>(scaled.numerator() / scaled.denominator()));
}

StepLaminationProcess discrete_lamination_process(const Factorisation& f) { return StepLaminationProcess(f); }

// ---------------------------------------------------------------------------
// Interpolated walk

WalkExcursion::WalkExcursion(LukaPath path) : path_(std::move(path)) {
  if (path_.values.size() < 2) throw std::invalid_argument("walk needs at least one step");
}

namespace {

std::int64_t floor_of(const Rational& q) {
  auto num = q.numerator(), den = q.denominator();
  auto fl = num / den;
  if (num % den != 0 && num < 0) --fl;
  return fl;
}

bool is_integer(const Rational& q) { return q.denominator() == 1; }

}  // namespace

Rational WalkExcursion::operator()(const Rational& t) const {
  if (t < 0 || t > 1) throw std::out_of_range("excursion is defined on [0, 1]");
  const int scale = n() - 1;
  if (scale == 0) return Rational(0);
  const Rational x = t * Rational(scale);
  const auto j = floor_of(x);
  const auto sj = path_.values[static_cast<std::size_t>(j)];
  if (is_integer(x)) return Rational(sj);
  const auto step = path_.values[static_cast<std::size_t>(j + 1)] - sj;
  return Rational(sj) + Rational(step) * (x - Rational(j));
}

Rational WalkExcursion::min_on(const Rational& u, const Rational& v) const {
  Rational best = std::min((*this)(u), (*this)(v));
  const int scale = n() - 1;
  if (scale == 0) return best;
  const auto lo = floor_of(u * Rational(scale)) + 1;
  const Rational xv = v * Rational(scale);
  auto hi = floor_of(xv);
  if (is_integer(xv)) --hi;
  for (auto k = lo; k <= hi; ++k) best = std::min(best, Rational(path_.values[static_cast<std::size_t>(k)]));
  return best;
}

std::int64_t WalkExcursion::slope_left_of(const Rational& t) const {
  const Rational x = t * Rational(n() - 1);
  auto j = floor_of(x);
  if (is_integer(x)) --j;
  if (j < 0) throw std::out_of_range("no linear piece left of 0");
  return path_.values[static_cast<std::size_t>(j + 1)] - path_.values[static_cast<std::size_t>(j)];
}

std::int64_t WalkExcursion::slope_right_of(const Rational& t) const {
  const Rational x = t * Rational(n() - 1);
  const auto j = floor_of(x);
  if (j >= n() - 1) throw std::out_of_range("no linear piece right of 1");
  return path_.values[static_cast<std::size_t>(j + 1)] - path_.values[static_cast<std::size_t>(j)];
}

// ---------------------------------------------------------------------------
// Ranks and good cords

RankData rank_data(const Factorisation& f) {
  if (!is_decreasing(f)) throw std::invalid_argument("rank data requires a decreasing factorisation");
  RankData d;
  d.a = f.a_values();
  d.b = f.b_values();
  const int m = static_cast<int>(d.a.size());
  std::vector<int> total(static_cast<std::size_t>(f.n()) + 1, 0), seen(static_cast<std::size_t>(f.n()) + 1, 0);
  for (int x : d.a) ++total[x];
  d.siblings.resize(m);
  d.rank.resize(m);
  d.h.resize(m);
  for (int i = 0; i < m; ++i) {
    const int a = d.a[i];
    d.siblings[i] = total[a];
    d.rank[i] = ++seen[a];
    if (d.rank[i] >= 2) d.h[i] = Rational(d.rank[i] - 2, d.siblings[i] - 1);
  }
  return d;
}

Chord good_cord_for_index(const Factorisation& f, const RankData& ranks, int i) {
  if (i < 1 || i > ranks.size()) throw std::out_of_range("transposition index out of range");
  const auto k = static_cast<std::size_t>(i - 1);
  if (ranks.rank[k] < 2) throw std::invalid_argument("good cord is only defined for rank >= 2");
  const Rational scale(f.n() - 1);
  return Chord((Rational(ranks.a[k]) - *ranks.h[k]) / scale, Rational(ranks.b[k] - 2) / scale);
}

Chord good_cord_for_index(const Factorisation& f, int i) { return good_cord_for_index(f, rank_data(f), i); }

bool is_cord(const WalkExcursion& w, const Chord& c) {
  const Rational wu = w(c.u);
  return wu == w(c.v) && w.min_on(c.u, c.v) == wu;
}

bool is_maximal_cord(const WalkExcursion& w, const Chord& c) {
  if (!is_cord(w, c)) return false;
  if (w.n() == 1) return true;
  // The walk ends at 0 and never goes negative, so a cord extends leftward
  // unless the walk is strictly below its level just left of u, and likewise
  // on the right.
  const bool left_blocked = c.u == kZero || w.slope_left_of(c.u) > 0;
  const bool right_blocked = c.v == kOne || w.slope_right_of(c.v) < 0;
  return left_blocked && right_blocked;
}

bool is_good_cord(const WalkExcursion& w, const Chord& c) {
  if (w.n() == 1) return c.u == kZero && c.v == kZero;
  if (!is_integer(c.v * Rational(w.n() - 1))) return false;
  return is_maximal_cord(w, c);
}

std::vector<Chord> enumerate_good_cords(const WalkExcursion& w) {
  const int n = w.n();
  if (n == 1) return {Chord()};
  const auto& S = w.path().values;
  const Rational scale(n - 1);
  std::vector<Chord> out;
  // Indices with strictly increasing S: the descending ladder seen from i.
  std::vector<int> ladder;
  for (int i = 0; i <= n - 1; ++i) {
    while (!ladder.empty() && S[ladder.back()] >= S[i]) ladder.pop_back();
    const bool right_end = i == n - 1 || S[i + 1] - S[i] == -1;
    if (right_end) {
      Rational u(0);
      if (!ladder.empty()) {
        const int j = ladder.back();
        u = (Rational(j) + Rational(S[i] - S[j], S[j + 1] - S[j])) / scale;
      }
      out.emplace_back(u, Rational(i) / scale);
    }
    ladder.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Time change

Rational TimeChange::operator()(const Rational& t) const {
  if (t <= breakpoints.front().first) return breakpoints.front().second;
  if (t >= breakpoints.back().first) return breakpoints.back().second;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](const Rational& x, const auto& bp) { return x < bp.first; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  if (x1 == x0) return y1;
  return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
}

Rational TimeChange::sup_distance_to_identity() const {
  Rational best(0);
  for (const auto& [x, y] : breakpoints) best = std::max(best, boost::abs(y - x));
  return best;
}

TimeChange alignment_time_change(const Factorisation& f) {
  const auto ranks = rank_data(f);
  const int n = f.n();
  TimeChange phi;
  phi.breakpoints.emplace_back(Rational(0), Rational(0));
  for (int i = 1; i <= ranks.size(); ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    if (ranks.rank[k] < 2) continue;
    const Rational y = Rational(1) - (Rational(ranks.a[k]) - *ranks.h[k]) / Rational(n - 1);
    phi.breakpoints.emplace_back(Rational(i, n), y);
  }
  phi.breakpoints.emplace_back(Rational(1), Rational(1));
  for (std::size_t k = 1; k < phi.breakpoints.size(); ++k) {
    const auto& [x0, y0] = phi.breakpoints[k - 1];
    const auto& [x1, y1] = phi.breakpoints[k];
    if (!(x0 < x1) || !(y0 < y1)) {
      std::ostringstream os;
      os << "breakpoint " << k << ": (" << x0 << ", " << y0 << ") -> (" << x1 << ", " << y1 << ")";
      phi.violations.push_back(os.str());
    }
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Hausdorff distance

namespace {

struct Segment {
  Point p, q;
};

Segment segment_of(const Chord& c) { return {circle_point(c.u), circle_point(c.v)}; }

double distance(Point x, Point y) { return std::hypot(x.x - y.x, x.y - y.y); }

double distance(Point x, const Segment& s) {
  const double dx = s.q.x - s.p.x, dy = s.q.y - s.p.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0;
  if (len2 > 0) t = std::clamp(((x.x - s.p.x) * dx + (x.y - s.p.y) * dy) / len2, 0.0, 1.0);
  return distance(x, Point{s.p.x + t * dx, s.p.y + t * dy});
}

Point lerp(const Segment& s, double t) { return {s.p.x + t * (s.q.x - s.p.x), s.p.y + t * (s.q.y - s.p.y)}; }

// Incremental nearest-segment index over [-1,1]^2. Each segment is registered
// in the grid cells of points sampled every half cell along it, so a segment
// at distance d from a query has a registered cell within d + cell/2.
class SegmentIndex {
public:
  static constexpr int kGrid = 64;
  static constexpr double kCell = 2.0 / kGrid;
  static constexpr std::size_t kBruteForceLimit = 48;

  SegmentIndex() : cells_(kGrid * kGrid) {}

  void insert(const Segment& s) {
    const auto id = static_cast<std::uint32_t>(segments_.size());
    segments_.push_back(s);
    stamp_.push_back(0);
    const double len = distance(s.p, s.q);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / (kCell / 2))));
    int last = -1;
    for (int k = 0; k <= pieces; ++k) {
      const int cell = cell_of(lerp(s, static_cast<double>(k) / pieces));
      if (cell == last) continue;
      last = cell;
      auto& bucket = cells_[static_cast<std::size_t>(cell)];
      if (bucket.empty() || bucket.back() != id) bucket.push_back(id);
    }
  }

  bool empty() const { return segments_.empty(); }

  double nearest(Point x) {
    double best = std::numeric_limits<double>::infinity();
    if (segments_.size() <= kBruteForceLimit) {
      for (const auto& s : segments_) best = std::min(best, distance(x, s));
      return best;
    }
    ++query_;
    const int cx = coord(x.x), cy = coord(x.y);
    for (int r = 0; r <= kGrid; ++r) {
      for (int gx = cx - r; gx <= cx + r; ++gx) {
        if (gx < 0 || gx >= kGrid) continue;
        const bool edge_column = gx == cx - r || gx == cx + r;
        for (int gy = cy - r; gy <= cy + r; gy += (edge_column ? 1 : 2 * r)) {
          if (gy >= 0 && gy < kGrid) {
            for (auto id : cells_[static_cast<std::size_t>(gx * kGrid + gy)]) {
              if (stamp_[id] == query_) continue;
              stamp_[id] = query_;
              best = std::min(best, distance(x, segments_[id]));
            }
          }
          if (r == 0) break;
        }
      }
      if (best <= r * kCell - kCell / 2) break;
    }
    return best;
  }

private:
  static int coord(double z) { return std::clamp(static_cast<int>(std::floor((z + 1.0) / kCell)), 0, kGrid - 1); }
  static int cell_of(Point x) { return coord(x.x) * kGrid + coord(x.y); }

  std::vector<Segment> segments_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t query_ = 0;
};

// Raises `lower` to at least sup_{x in a} d(x, B) - tol. Distance to a set is
// 1-Lipschitz, so a piece of length l with end values d0, d1 cannot exceed
// (d0 + d1 + l)/2; pieces whose bound is within tol of `lower` are dropped.
void raise_directed(const Segment& a, SegmentIndex& B, double tol, double& lower) {
  struct Piece {
    double t0, t1, d0, d1;
  };
  const double length = distance(a.p, a.q);
  const double d0 = B.nearest(a.p);
  const double d1 = length > 0 ? B.nearest(a.q) : d0;
  lower = std::max({lower, d0, d1});
  std::vector<Piece> todo{{0.0, 1.0, d0, d1}};
  while (!todo.empty()) {
    const Piece piece = todo.back();
    todo.pop_back();
    const double l = length * (piece.t1 - piece.t0);
    if ((piece.d0 + piece.d1 + l) / 2 <= lower + tol) continue;
    const double tm = (piece.t0 + piece.t1) / 2;
    const double dm = B.nearest(lerp(a, tm));
    lower = std::max(lower, dm);
    todo.push_back({piece.t0, tm, piece.d0, dm});
    todo.push_back({tm, piece.t1, dm, piece.d1});
  }
}

}  // namespace

double hausdorff_distance(const std::vector<Chord>& A, const std::vector<Chord>& B, double tol) {
  if (A.empty() || B.empty()) throw std::invalid_argument("Hausdorff distance needs non-empty sets");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  SegmentIndex ia, ib;
  std::vector<Segment> sa, sb;
  for (const auto& c : A) sa.push_back(segment_of(c));
  for (const auto& c : B) sb.push_back(segment_of(c));
  for (const auto& s : sa) ia.insert(s);
  for (const auto& s : sb) ib.insert(s);
  double lower = 0;
  for (const auto& s : sa) raise_directed(s, ib, tol, lower);
  for (const auto& s : sb) raise_directed(s, ia, tol, lower);
  return lower;
}

double hausdorff_distance(const Lamination& A, const Lamination& B, double tol) {
  return hausdorff_distance(A.chords(), B.chords(), tol);
}

AlignmentBound alignment_bound(const Factorisation& f, double tol) {
  if (f.n() < 2) throw std::invalid_argument("alignment bound needs n >= 2");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const int n = f.n();
  const StepLaminationProcess process(f);
  const WalkExcursion walk(lukasiewicz_path(tree_of_decreasing_factorisation(f)));
  const auto good = enumerate_good_cords(walk);
  const auto phi = alignment_time_change(f);

  AlignmentBound result;
  result.phi_increasing = phi.strictly_increasing();
  result.time_term = to_double(phi.sup_distance_to_identity());

  // G at step i holds [[1,1]] and the good cords with u >= 1 - phi(i/n).
  // entry[g] is the first step i >= 1 at which good cord g is present.
  std::vector<Rational> threshold(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) threshold[i] = Rational(1) - phi(Rational(i, n));
  std::vector<std::vector<std::size_t>> entering(static_cast<std::size_t>(n) + 1);
  for (std::size_t g = 0; g < good.size(); ++g) {
    int first = n;
    if (result.phi_increasing) {
      // Thresholds decrease with i.
      auto it = std::partition_point(threshold.begin() + 1, threshold.end(),
                                     [&](const Rational& th) { return good[g].u < th; });
      first = static_cast<int>(it - threshold.begin());
    } else {
      for (int i = 1; i <= n; ++i) {
        if (good[g].u >= threshold[i]) {
          first = i;
          break;
        }
      }
    }
    entering[static_cast<std::size_t>(first)].push_back(g);
  }

  // Both families only grow with i (L_n = L_{n-1}), so each element's
  // distance to the other family is largest at the step it first appears.
  double lower = 0;
  const Segment anchor = segment_of(Chord());
  {
    SegmentIndex goods;
    goods.insert(anchor);
    for (int i = 1; i <= n - 1; ++i) {
      for (auto g : entering[i]) goods.insert(segment_of(good[g]));
      raise_directed(segment_of(process.chord(i)), goods, tol, lower);
    }
  }
  {
    SegmentIndex chords;
    for (int i = 1; i <= n; ++i) {
      if (i <= n - 1) chords.insert(segment_of(process.chord(i)));
      if (i == 1) raise_directed(anchor, chords, tol, lower);
      for (auto g : entering[i]) raise_directed(segment_of(good[g]), chords, tol, lower);
    }
  }
  result.hausdorff_term = lower;
  result.value = std::max(result.time_term, result.hausdorff_term);
  return result;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

}  // namespace

std::string render_svg(const Lamination& L, const SvgOptions& options) {
  const double size = options.size_px;
  const double centre = size / 2;
  const double radius = size * 0.45;
  auto px = [&](const Point& p) { return std::pair{fixed(centre + radius * p.x), fixed(centre - radius * p.y)}; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.size_px << "\" height=\""
     << options.size_px << "\" viewBox=\"0 0 " << options.size_px << ' ' << options.size_px << "\">\n"
     << "<circle cx=\"" << fixed(centre) << "\" cy=\"" << fixed(centre) << "\" r=\"" << fixed(radius)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << fixed(options.stroke_width) << "\"/>\n";
  for (const auto& c : L.chords()) {
    if (c.trivial()) {
      const auto [x, y] = px(circle_point(c.u));
      os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << fixed(options.point_radius)
         << "\" fill=\"black\"/>\n";
      continue;
    }
    const auto [x1, y1] = px(circle_point(c.u));
    const auto [x2, y2] = px(circle_point(c.v));
    os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
       << "\" stroke=\"black\" stroke-width=\"" << fixed(options.stroke_width) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mfact
