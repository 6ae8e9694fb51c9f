#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "seqmem/datasets.hpp"
#include "seqmem/rng.hpp"

using namespace seqmem;

namespace {

void put_be32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(v >> s));
}

std::vector<std::uint8_t> image_bytes(std::uint32_t magic, std::uint32_t count, std::uint32_t rows,
                                      std::uint32_t cols, const std::vector<std::uint8_t>& px) {
  std::vector<std::uint8_t> b;
  put_be32(b, magic);
  put_be32(b, count);
  put_be32(b, rows);
  put_be32(b, cols);
  b.insert(b.end(), px.begin(), px.end());
  return b;
}

std::vector<std::uint8_t> label_bytes(const std::vector<std::uint8_t>& labels) {
  std::vector<std::uint8_t> b;
  put_be32(b, kIdxLabelMagic);
  put_be32(b, static_cast<std::uint32_t>(labels.size()));
  b.insert(b.end(), labels.begin(), labels.end());
  return b;
}

// Synthetic digits: each class has a fixed prototype with random pixel noise.
struct Synthetic {
  IdxImages images;
  std::vector<std::uint8_t> labels;
};

Synthetic synthetic(int per_digit, std::uint64_t seed) {
  Synthetic s;
  s.images.rows = 28;
  s.images.cols = 28;
  CounterRng rng(seed, 1);
  std::vector<std::vector<std::uint8_t>> proto(10, std::vector<std::uint8_t>(784));
  for (auto& pr : proto)
    for (auto& v : pr) v = (rng() & 1) ? 255 : 0;
  for (int i = 0; i < per_digit * 10; ++i) {
    const int d = static_cast<int>(rng() % 10);
    s.labels.push_back(static_cast<std::uint8_t>(d));
    for (int j = 0; j < 784; ++j) {
      const bool flip = rng.uniform() < 0.2;
      s.images.pixels.push_back(flip ? static_cast<std::uint8_t>(255 - proto[d][j]) : proto[d][j]);
    }
  }
  s.images.count = static_cast<int>(s.labels.size());
  return s;
}

}  // namespace

TEST(Datasets, ParsesHeaderDimensions) {
  const auto img = parse_idx_images(image_bytes(kIdxImageMagic, 2, 28, 28, std::vector<std::uint8_t>(2 * 784, 7)));
  EXPECT_EQ(img.count, 2);
  EXPECT_EQ(img.rows, 28);
  EXPECT_EQ(img.cols, 28);
  EXPECT_EQ(img.pixels_per_image(), 784);
  const auto labels = parse_idx_labels(label_bytes({3, 9}));
  EXPECT_EQ(labels, (std::vector<std::uint8_t>{3, 9}));
}

TEST(Datasets, RejectsBadInput) {
  EXPECT_THROW(parse_idx_images(image_bytes(kIdxLabelMagic, 1, 28, 28, std::vector<std::uint8_t>(784))), DatasetError);
  EXPECT_THROW(parse_idx_images(image_bytes(2050, 1, 28, 28, std::vector<std::uint8_t>(784))), DatasetError);
  EXPECT_THROW(parse_idx_images({}), DatasetError);
  EXPECT_THROW(parse_idx_images(image_bytes(kIdxImageMagic, 2, 28, 28, std::vector<std::uint8_t>(784))), DatasetError);
  EXPECT_THROW(parse_idx_images(image_bytes(kIdxImageMagic, 1, 0, 28, {})), DatasetError);
  auto lb = label_bytes({1, 2, 3});
  lb.pop_back();
  EXPECT_THROW(parse_idx_labels(lb), DatasetError);
  EXPECT_THROW(load_idx_images("/nonexistent/file"), DatasetError);

  const auto empty = std::filesystem::temp_directory_path() / "seqmem_empty_idx";
  std::ofstream(empty).close();
  EXPECT_THROW(load_idx_images(empty), DatasetError);
  std::filesystem::remove(empty);
}

TEST(Datasets, Binarize) {
  IdxImages img;
  img.count = 1;
  img.rows = 1;
  img.cols = 5;
  img.pixels = {0, 127, 128, 200, 255};
  EXPECT_EQ(binarize(img), (std::vector<int>{-1, -1, 1, 1, 1}));
  img.pixels.assign(5, 0);
  EXPECT_EQ(binarize(img), std::vector<int>(5, -1));
  img.pixels.assign(5, 255);
  EXPECT_EQ(binarize(img), std::vector<int>(5, 1));
}

TEST(Datasets, DigitSequenceStructure) {
  const auto syn = synthetic(40, 1);
  const auto seq = build_digit_sequence(syn.images, syn.labels, 20, 7);
  EXPECT_EQ(seq.patterns.n_patterns(), 200);
  EXPECT_EQ(seq.patterns.n_neurons(), 784);
  for (int b = 0; b < 20; ++b)
    for (int d = 0; d < 10; ++d) EXPECT_EQ(seq.labels[b * 10 + d], d);
  std::set<int> used(seq.source_index.begin(), seq.source_index.end());
  EXPECT_EQ(used.size(), 200U);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(syn.labels[seq.source_index[i]], seq.labels[i]);

  // Same seed, same sequence; the serialized form round-trips.
  EXPECT_EQ(build_digit_sequence(syn.images, syn.labels, 20, 7).patterns, seq.patterns);
  std::stringstream buf;
  write_patterns(buf, seq.patterns);
  EXPECT_EQ(read_patterns(buf), seq.patterns);

  EXPECT_THROW(build_digit_sequence(syn.images, syn.labels, 1000, 7), DatasetError);
}

TEST(Datasets, WithinClassOverlapExceedsAcrossClass) {
  const auto syn = synthetic(30, 2);
  const auto seq = build_digit_sequence(syn.images, syn.labels, 10, 3);
  const auto o = overlap_matrix(seq.patterns);
  double same = 0.0, diff = 0.0;
  int ns = 0, nd = 0;
  for (int a = 0; a < 100; ++a)
    for (int b = a + 1; b < 100; ++b) {
      if (seq.labels[a] == seq.labels[b]) {
        same += o(a, b);
        ++ns;
      } else {
        diff += o(a, b);
        ++nd;
      }
    }
  EXPECT_GT(same / ns, diff / nd);
}

TEST(Datasets, LoadsFromDisk) {
  const auto dir = std::filesystem::temp_directory_path() / "seqmem_idx_test";
  std::filesystem::create_directories(dir);
  const auto bytes = image_bytes(kIdxImageMagic, 1, 28, 28, std::vector<std::uint8_t>(784, 200));
  std::ofstream(dir / "img", std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const auto lb = label_bytes({4});
  std::ofstream(dir / "lab", std::ios::binary).write(reinterpret_cast<const char*>(lb.data()), lb.size());
  EXPECT_EQ(load_idx_images(dir / "img").count, 1);
  EXPECT_EQ(load_idx_labels(dir / "lab")[0], 4);
  std::filesystem::remove_all(dir);
}
