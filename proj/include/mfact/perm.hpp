#pragma once

#include <span>
#include <string>
#include <vector>

namespace mfact {

// A transposition (a b) of {1..n}, stored with a < b.
struct Transposition {
  int a = 1;
  int b = 2;

  Transposition() = default;
  // Normalizes the order of the endpoints; throws if they coincide.
  Transposition(int x, int y);

  friend bool operator==(const Transposition&, const Transposition&) = default;
  friend auto operator<=>(const Transposition&, const Transposition&) = default;
};

// A sequence of n-1 transpositions on {1..n}, intended to multiply to the
// cycle (1 2 ... n). The product is read with tau_1 applied first.
//
// n = 1 is accepted (empty sequence) so that the one-vertex tree has an image.
class Factorisation {
public:
  Factorisation() = default;
  // Throws std::invalid_argument if the length is not n-1 or an endpoint
  // falls outside [1, n].
  Factorisation(int n, std::vector<Transposition> taus);

  int n() const { return n_; }
  std::size_t size() const { return taus_.size(); }
  const std::vector<Transposition>& taus() const { return taus_; }
  // 1-based, matching the usual tau_i indexing.
  const Transposition& at(int i) const { return taus_.at(static_cast<std::size_t>(i - 1)); }

  std::vector<int> a_values() const;
  std::vector<int> b_values() const;

  std::string to_string() const;

  friend bool operator==(const Factorisation&, const Factorisation&) = default;
  friend auto operator<=>(const Factorisation&, const Factorisation&) = default;

private:
  int n_ = 1;
  std::vector<Transposition> taus_;
};

enum class Monotonicity { decreasing, increasing, both, neither };

const char* to_string(Monotonicity m);

// Images of 1..n under tau_{n-1} o ... o tau_1, as a 1-based array (index 0 unused).
std::vector<int> compose(const Factorisation& f);

bool is_cycle_factorisation(const Factorisation& f);

// Weak monotonicity of a_1..a_{n-1}; constant (or empty) sequences are `both`.
Monotonicity monotone_class(const Factorisation& f);

inline bool is_decreasing(const Factorisation& f) {
  auto m = monotone_class(f);
  return m == Monotonicity::decreasing || m == Monotonicity::both;
}
inline bool is_increasing(const Factorisation& f) {
  auto m = monotone_class(f);
  return m == Monotonicity::increasing || m == Monotonicity::both;
}

// (a_{n-1}, ..., a_1). Throws if f is not decreasing.
std::vector<int> to_parking_word(const Factorisation& f);
// (b_{n-1}, ..., b_1). Throws if f is not decreasing.
std::vector<int> to_231_word(const Factorisation& f);

// No i<j<k with w_k < w_i < w_j. Throws on repeated entries.
bool is_231_avoiding(std::span<const int> w);

// Weakly increasing with w_i <= i (1-based).
bool is_increasing_parking_function(std::span<const int> w);

constexpr int kMaxEnumerationSize = 7;

// Every minimal factorisation of (1 ... n), 2 <= n <= 7, by exhaustive search.
// Output is sorted lexicographically.
std::vector<Factorisation> enumerate_minimal_factorisations(int n);

}  // namespace mfact
