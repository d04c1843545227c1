#include "mfact/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mfact {

Transposition::Transposition(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {
  if (x == y) throw std::invalid_argument("transposition endpoints must differ");
}

Factorisation::Factorisation(int n, std::vector<Transposition> taus) : n_(n), taus_(std::move(taus)) {
  if (n < 1) throw std::invalid_argument("factorisation size must be at least 1");
  if (taus_.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("factorisation of size " + std::to_string(n) + " needs " +
                                std::to_string(n - 1) + " transpositions, got " +
                                std::to_string(taus_.size()));
  }
  for (const auto& t : taus_) {
    if (t.a < 1 || t.b > n || t.a >= t.b) {
      throw std::invalid_argument("transposition endpoint outside [1, n]");
    }
  }
}

std::vector<int> Factorisation::a_values() const {
  std::vector<int> out;
  out.reserve(taus_.size());
  for (const auto& t : taus_) out.push_back(t.a);
  return out;
}

std::vector<int> Factorisation::b_values() const {
  std::vector<int> out;
  out.reserve(taus_.size());
  for (const auto& t : taus_) out.push_back(t.b);
  return out;
}

std::string Factorisation::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < taus_.size(); ++i) {
    if (i) os << ',';
    os << '(' << taus_[i].a << ' ' << taus_[i].b << ')';
  }
  os << ')';
  return os.str();
}

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::decreasing: return "decreasing";
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::both: return "both";
    case Monotonicity::neither: return "neither";
  }
  return "neither";
}

std::vector<int> compose(const Factorisation& f) {
  const int n = f.n();
  // Track the image of every point; applying tau after the current product
  // is a relabeling of images, so keep the inverse to find who maps where.
  std::vector<int> image(n + 1), preimage(n + 1);
  std::iota(image.begin(), image.end(), 0);
  std::iota(preimage.begin(), preimage.end(), 0);
  for (const auto& t : f.taus()) {
    const int pa = preimage[t.a], pb = preimage[t.b];
    image[pa] = t.b;
    image[pb] = t.a;
    preimage[t.a] = pb;
    preimage[t.b] = pa;
  }
  return image;
}

bool is_cycle_factorisation(const Factorisation& f) {
  const auto image = compose(f);
  const int n = f.n();
  for (int x = 1; x <= n; ++x) {
    if (image[x] != x % n + 1) return false;
  }
  return true;
}

Monotonicity monotone_class(const Factorisation& f) {
  bool dec = true, inc = true;
  const auto& taus = f.taus();
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (taus[i].a > taus[i - 1].a) dec = false;
    if (taus[i].a < taus[i - 1].a) inc = false;
  }
  if (dec && inc) return Monotonicity::both;
  if (dec) return Monotonicity::decreasing;
  if (inc) return Monotonicity::increasing;
  return Monotonicity::neither;
}

std::vector<int> to_parking_word(const Factorisation& f) {
  if (!is_decreasing(f)) throw std::invalid_argument("parking word requires a decreasing factorisation");
  auto w = f.a_values();
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<int> to_231_word(const Factorisation& f) {
  if (!is_decreasing(f)) throw std::invalid_argument("231 word requires a decreasing factorisation");
  auto w = f.b_values();
  std::reverse(w.begin(), w.end());
  return w;
}

// A sequence avoids 231 iff a single stack sorts it: pop everything smaller
// than the incoming value, and the popped stream must come out increasing.
bool is_231_avoiding(std::span<const int> w) {
  {
    std::vector<int> sorted(w.begin(), w.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("is_231_avoiding: entries must be distinct");
    }
  }
  std::vector<int> stack;
  bool have_output = false;
  int last_output = 0;
  for (int x : w) {
    while (!stack.empty() && stack.back() < x) {
      if (have_output && stack.back() < last_output) return false;
      last_output = stack.back();
      have_output = true;
      stack.pop_back();
    }
    if (have_output && x < last_output) return false;
    stack.push_back(x);
  }
  return true;
}

bool is_increasing_parking_function(std::span<const int> w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 1 || w[i] > static_cast<int>(i + 1)) return false;
    if (i > 0 && w[i] < w[i - 1]) return false;
  }
  return true;
}

namespace {

// Depth-first search over transposition sequences in which every factor joins
// two distinct cycles of the running product. Non-joining factors raise the
// cycle count, so no minimal factorisation is pruned.
class MinimalSearch {
public:
  explicit MinimalSearch(int n) : n_(n), image_(n + 1), preimage_(n + 1) {
    std::iota(image_.begin(), image_.end(), 0);
    std::iota(preimage_.begin(), preimage_.end(), 0);
  }

  std::vector<Factorisation> run() {
    recurse();
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

private:
  bool same_cycle(int x, int y) const {
    for (int z = image_[x];; z = image_[z]) {
      if (z == y) return true;
      if (z == x) return false;
    }
  }

  void apply(int a, int b) {
    const int pa = preimage_[a], pb = preimage_[b];
    image_[pa] = b;
    image_[pb] = a;
    preimage_[a] = pb;
    preimage_[b] = pa;
  }

  void recurse() {
    if (static_cast<int>(seq_.size()) == n_ - 1) {
      for (int x = 1; x <= n_; ++x) {
        if (image_[x] != x % n_ + 1) return;
      }
      out_.emplace_back(n_, seq_);
      return;
    }
    for (int a = 1; a <= n_; ++a) {
      for (int b = a + 1; b <= n_; ++b) {
        if (same_cycle(a, b)) continue;
        apply(a, b);
        seq_.emplace_back(a, b);
        recurse();
        seq_.pop_back();
        apply(a, b);
      }
    }
  }

  int n_;
  std::vector<int> image_, preimage_;
  std::vector<Transposition> seq_;
  std::vector<Factorisation> out_;
};

}  // namespace

std::vector<Factorisation> enumerate_minimal_factorisations(int n) {
  if (n < 2 || n > kMaxEnumerationSize) {
    throw std::out_of_range("enumerate_minimal_factorisations supports 2 <= n <= " +
                            std::to_string(kMaxEnumerationSize));
  }
  return MinimalSearch(n).run();
}

}  // namespace mfact
