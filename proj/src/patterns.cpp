#include "seqmem/patterns.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace seqmem {
namespace {

Word padding_mask(int n_neurons) {
  const int r = n_neurons % kWordBits;
  return r == 0 ? ~Word{0} : ((Word{1} << r) - 1);
}

void check_padding(int n_neurons, std::span<const Word> row) {
  if (!row.empty() && (row.back() & ~padding_mask(n_neurons)) != 0) {
    throw std::invalid_argument("packed row has non-zero padding bits");
  }
}

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xFFU);
  os.write(b.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

constexpr std::array<char, 6> kMagic{'S', 'Q', 'M', 'E', 'M', '1'};

}  // namespace

StateVector::StateVector(int n_neurons) : n_(n_neurons), bits_(words_for(n_neurons), 0) {
  if (n_neurons < 1) throw std::invalid_argument("state needs at least one neuron");
}

StateVector::StateVector(int n_neurons, std::vector<Word> words)
    : n_(n_neurons), bits_(std::move(words)) {
  if (n_neurons < 1) throw std::invalid_argument("state needs at least one neuron");
  if (static_cast<int>(bits_.size()) != words_for(n_neurons)) {
    throw std::invalid_argument("state word count does not match neuron count");
  }
  check_padding(n_, bits_);
}

StateVector StateVector::from_bipolar(std::span<const int> values) {
  StateVector s(static_cast<int>(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j) s.set(static_cast<int>(j), values[j]);
  return s;
}

void StateVector::set(int j, int v) {
  if (v != 1 && v != -1) throw std::invalid_argument("state entries must be +1 or -1");
  const Word bit = Word{1} << (j % kWordBits);
  auto& w = bits_[static_cast<std::size_t>(j) / kWordBits];
  w = v == 1 ? (w | bit) : (w & ~bit);
}

std::vector<int> StateVector::to_bipolar() const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(j)] = value(j);
  return out;
}

StateVector StateVector::negated() const {
  StateVector s = *this;
  for (auto& w : s.bits_) w = ~w;
  s.bits_.back() &= padding_mask(n_);
  return s;
}

PatternSet::PatternSet(int n_neurons, int n_patterns, std::vector<Word> packed)
    : n_(n_neurons), p_(n_patterns), wpr_(words_for(n_neurons)), packed_(std::move(packed)) {
  if (n_ < 1 || p_ < 1) throw std::invalid_argument("pattern set needs N >= 1 and P >= 1");
  if (packed_.size() != static_cast<std::size_t>(p_) * wpr_) {
    throw std::invalid_argument("packed pattern data has the wrong size");
  }
  signs_.resize(static_cast<std::size_t>(p_) * n_);
  for (int mu = 0; mu < p_; ++mu) {
    auto r = row(mu);
    check_padding(n_, r);
    std::int8_t* dst = signs_.data() + static_cast<std::size_t>(mu) * n_;
    for (int j = 0; j < n_; ++j) {
      dst[j] = static_cast<std::int8_t>(((r[static_cast<std::size_t>(j) / kWordBits] >> (j % kWordBits)) & 1U) * 2 - 1);
    }
  }
}

PatternSet PatternSet::from_bipolar(int n_neurons, int n_patterns, std::span<const int> values) {
  if (values.size() != static_cast<std::size_t>(n_neurons) * n_patterns) {
    throw std::invalid_argument("expected N*P bipolar values");
  }
  const int wpr = words_for(n_neurons);
  std::vector<Word> packed(static_cast<std::size_t>(n_patterns) * wpr, 0);
  for (int mu = 0; mu < n_patterns; ++mu) {
    for (int j = 0; j < n_neurons; ++j) {
      const int v = values[static_cast<std::size_t>(mu) * n_neurons + j];
      if (v != 1 && v != -1) throw std::invalid_argument("pattern entries must be +1 or -1");
      if (v == 1) {
        packed[static_cast<std::size_t>(mu) * wpr + j / kWordBits] |= Word{1} << (j % kWordBits);
      }
    }
  }
  return PatternSet(n_neurons, n_patterns, std::move(packed));
}

PatternSet PatternSet::from_states(std::span<const StateVector> rows) {
  if (rows.empty()) throw std::invalid_argument("pattern set needs at least one row");
  const int n = rows.front().size();
  std::vector<Word> packed;
  packed.reserve(rows.size() * static_cast<std::size_t>(words_for(n)));
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("rows differ in length");
    packed.insert(packed.end(), r.words().begin(), r.words().end());
  }
  return PatternSet(n, static_cast<int>(rows.size()), std::move(packed));
}

StateVector PatternSet::pattern(int mu) const {
  auto r = row(mu);
  return StateVector(n_, std::vector<Word>(r.begin(), r.end()));
}

std::string PatternDistribution::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Rademacher: os << "rademacher"; break;
    case Kind::Biased: os << "biased:" << epsilon; break;
    case Kind::FromData: os << "data"; break;
  }
  return os.str();
}

void fill_random_row(const PatternDistribution& dist, int n_neurons, CounterRng& rng,
                     std::span<Word> out) {
  const int nw = words_for(n_neurons);
  if (dist.kind == PatternDistribution::Kind::Rademacher) {
    for (int w = 0; w < nw; ++w) out[w] = rng();
  } else if (dist.kind == PatternDistribution::Kind::Biased) {
    const double p_plus = 0.5 * (1.0 + dist.epsilon);
    for (int w = 0; w < nw; ++w) out[w] = 0;
    for (int j = 0; j < n_neurons; ++j) {
      if (rng.uniform() < p_plus) out[j / kWordBits] |= Word{1} << (j % kWordBits);
    }
  } else {
    throw std::invalid_argument("data-backed patterns cannot be sampled");
  }
  out[nw - 1] &= padding_mask(n_neurons);
}

PatternSet generate_patterns(const PatternDistribution& dist, int n_neurons, int n_patterns,
                             CounterRng& rng) {
  if (n_neurons < 2 || n_patterns < 2) {
    throw std::invalid_argument("generate_patterns needs N >= 2 and P >= 2");
  }
  if (dist.kind == PatternDistribution::Kind::Biased &&
      !(dist.epsilon >= 0.0 && dist.epsilon < 1.0)) {
    throw std::invalid_argument("bias epsilon must lie in [0, 1)");
  }
  const int wpr = words_for(n_neurons);
  std::vector<Word> packed(static_cast<std::size_t>(n_patterns) * wpr);
  for (int mu = 0; mu < n_patterns; ++mu) {
    fill_random_row(dist, n_neurons, rng,
                    std::span<Word>(packed.data() + static_cast<std::size_t>(mu) * wpr, wpr));
  }
  return PatternSet(n_neurons, n_patterns, std::move(packed));
}

PatternSet generate_patterns(const PatternDistribution& dist, int n_neurons, int n_patterns) {
  CounterRng rng(dist.seed, 0);
  return generate_patterns(dist, n_neurons, n_patterns, rng);
}

double overlap(const PatternSet& ps, int mu, const StateVector& s, std::optional<int> exclude) {
  const int n = ps.n_neurons();
  if (s.size() != n) throw std::invalid_argument("state and patterns differ in size");
  if (mu < 0 || mu >= ps.n_patterns()) throw std::out_of_range("pattern index out of range");
  int num = agreement(ps.row(mu), s.words(), n);
  int div = n;
  if (exclude) {
    if (*exclude < 0 || *exclude >= n) throw std::out_of_range("excluded neuron out of range");
    if (n < 2) throw std::invalid_argument("exclusion needs N >= 2");
    num -= ps.value(mu, *exclude) * s.value(*exclude);
    div = n - 1;
  }
  return static_cast<double>(num) / div;
}

Eigen::MatrixXd overlap_matrix(const PatternSet& ps) {
  const int p = ps.n_patterns();
  const int n = ps.n_neurons();
  Eigen::MatrixXd o(p, p);
  for (int mu = 0; mu < p; ++mu) {
    o(mu, mu) = 1.0;
    for (int nu = mu + 1; nu < p; ++nu) {
      const double v = static_cast<double>(agreement(ps.row(mu), ps.row(nu), n)) / n;
      o(mu, nu) = v;
      o(nu, mu) = v;
    }
  }
  return o;
}

int mismatch_count(const StateVector& a, std::span<const Word> b) {
  if (b.size() != a.words().size()) throw std::invalid_argument("rows differ in length");
  return hamming(a.words(), b);
}

void write_patterns(std::ostream& os, const PatternSet& ps) {
  os.write(kMagic.data(), kMagic.size());
  const char reserved[2] = {0, 0};
  os.write(reserved, 2);
  put_u32(os, static_cast<std::uint32_t>(ps.n_neurons()));
  put_u32(os, static_cast<std::uint32_t>(ps.n_patterns()));
  for (Word w : ps.packed()) {
    std::array<char, 8> b{};
    for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((w >> (8 * k)) & 0xFFU);
    os.write(b.data(), 8);
  }
  if (!os) throw std::runtime_error("failed writing pattern data");
}

PatternSet read_patterns(std::istream& is) {
  std::array<unsigned char, 16> header{};
  if (!is.read(reinterpret_cast<char*>(header.data()), header.size())) {
    throw std::runtime_error("pattern file truncated: missing header");
  }
  if (std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    throw std::runtime_error("not a pattern file (bad magic)");
  }
  const auto n = get_u32(header.data() + 8);
  const auto p = get_u32(header.data() + 12);
  if (n == 0 || p == 0 || n > (1U << 30) || p > (1U << 30)) {
    throw std::runtime_error("pattern file has invalid dimensions");
  }
  const std::size_t n_words = static_cast<std::size_t>(p) * words_for(static_cast<int>(n));
  std::vector<Word> packed(n_words);
  std::vector<unsigned char> buf(n_words * 8);
  if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
    throw std::runtime_error("pattern file truncated: missing rows");
  }
  for (std::size_t w = 0; w < n_words; ++w) {
    Word v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<Word>(buf[w * 8 + k]) << (8 * k);
    packed[w] = v;
  }
  return PatternSet(static_cast<int>(n), static_cast<int>(p), std::move(packed));
}

void write_patterns(const std::filesystem::path& path, const PatternSet& ps) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_patterns(os, ps);
}

PatternSet read_patterns(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_patterns(is);
}

}  // namespace seqmem
