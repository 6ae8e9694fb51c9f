#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqmem/rng.hpp"

namespace seqmem {

using Word = std::uint64_t;
inline constexpr int kWordBits = 64;

constexpr int words_for(int n_neurons) { return (n_neurons + kWordBits - 1) / kWordBits; }

/// Number of positions where two packed rows differ. Padding bits are zero
/// in every row, so they never contribute.
inline int hamming(std::span<const Word> a, std::span<const Word> b) {
  int h = 0;
  for (std::size_t w = 0; w < a.size(); ++w) h += std::popcount(a[w] ^ b[w]);
  return h;
}

inline int bit_sign(std::span<const Word> row, int j) {
  return ((row[static_cast<std::size_t>(j) / kWordBits] >> (j % kWordBits)) & 1U) ? 1 : -1;
}

/// One bipolar network state, bit-packed (+1 is bit 1).
class StateVector {
 public:
  StateVector() = default;
  /// All neurons at -1.
  explicit StateVector(int n_neurons);
  StateVector(int n_neurons, std::vector<Word> words);

  static StateVector from_bipolar(std::span<const int> values);

  int size() const { return n_; }
  int value(int j) const { return bit_sign(bits_, j); }
  void set(int j, int v);
  std::span<const Word> words() const { return bits_; }

  std::vector<int> to_bipolar() const;
  StateVector negated() const;

  bool operator==(const StateVector&) const = default;

 private:
  int n_ = 0;
  std::vector<Word> bits_;
};

/// A stored sequence xi^0 ... xi^{P-1}. Indices are 0-based and periodic:
/// the successor of xi^{P-1} is xi^0. Immutable after construction.
class PatternSet {
 public:
  PatternSet() = default;
  /// `packed` holds P rows of words_for(N) words each; padding bits must be 0.
  PatternSet(int n_neurons, int n_patterns, std::vector<Word> packed);

  static PatternSet from_bipolar(int n_neurons, int n_patterns, std::span<const int> values);
  static PatternSet from_states(std::span<const StateVector> rows);

  int n_neurons() const { return n_; }
  int n_patterns() const { return p_; }
  int words_per_row() const { return wpr_; }

  int wrap(long long mu) const {
    const long long r = mu % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int next(int mu) const { return mu + 1 == p_ ? 0 : mu + 1; }

  std::span<const Word> row(int mu) const {
    return {packed_.data() + static_cast<std::size_t>(wrap(mu)) * wpr_,
            static_cast<std::size_t>(wpr_)};
  }
  /// Unpacked +-1 view of one pattern, cached at construction for the update kernels.
  std::span<const std::int8_t> signs(int mu) const {
    return {signs_.data() + static_cast<std::size_t>(wrap(mu)) * n_, static_cast<std::size_t>(n_)};
  }
  int value(int mu, int j) const { return bit_sign(row(mu), j); }
  StateVector pattern(int mu) const;

  std::span<const Word> packed() const { return packed_; }

  bool operator==(const PatternSet& o) const {
    return n_ == o.n_ && p_ == o.p_ && packed_ == o.packed_;
  }

 private:
  int n_ = 0;
  int p_ = 0;
  int wpr_ = 0;
  std::vector<Word> packed_;
  std::vector<std::int8_t> signs_;
};

struct PatternDistribution {
  enum class Kind { Rademacher, Biased, FromData };

  Kind kind = Kind::Rademacher;
  /// P(xi = +1) = (1 + epsilon) / 2; only used by Biased.
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  static PatternDistribution rademacher(std::uint64_t seed) { return {Kind::Rademacher, 0.0, seed}; }
  static PatternDistribution biased(double epsilon, std::uint64_t seed) {
    return {Kind::Biased, epsilon, seed};
  }
  std::string describe() const;
};

/// i.i.d. patterns drawn from stream 0 of `dist.seed`.
PatternSet generate_patterns(const PatternDistribution& dist, int n_neurons, int n_patterns);
/// Same, drawing from a caller-provided substream (the seed in `dist` is ignored).
PatternSet generate_patterns(const PatternDistribution& dist, int n_neurons, int n_patterns,
                             CounterRng& rng);

/// Fills `out` (words_for(n) words) with one random row.
void fill_random_row(const PatternDistribution& dist, int n_neurons, CounterRng& rng,
                     std::span<Word> out);

/// Mattis overlap (matches - mismatches) / divisor between pattern mu and s.
/// With `exclude` set, neuron `*exclude` is left out and the divisor is N-1.
double overlap(const PatternSet& ps, int mu, const StateVector& s,
               std::optional<int> exclude = std::nullopt);

/// Sum_j xi_j^mu s_j as an exact integer.
inline int agreement(std::span<const Word> a, std::span<const Word> b, int n_neurons) {
  return n_neurons - 2 * hamming(a, b);
}

/// O^{mu nu} = (1/N) sum_j xi_j^mu xi_j^nu.
Eigen::MatrixXd overlap_matrix(const PatternSet& ps);

int mismatch_count(const StateVector& a, std::span<const Word> b);
inline int mismatch_count(const StateVector& a, const StateVector& b) {
  return mismatch_count(a, b.words());
}

// Binary pattern files: "SQMEM1", two reserved zero bytes, N and P as u32
// little-endian, then P rows of words_for(N) little-endian 64-bit words.
void write_patterns(std::ostream& os, const PatternSet& ps);
PatternSet read_patterns(std::istream& is);
void write_patterns(const std::filesystem::path& path, const PatternSet& ps);
PatternSet read_patterns(const std::filesystem::path& path);

}  // namespace seqmem
