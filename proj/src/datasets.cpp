#include "seqmem/datasets.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>

#include "seqmem/rng.hpp"

namespace seqmem {
namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& b, std::size_t off) {
  if (b.size() < off + 4) throw DatasetError("truncated IDX header");
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) |
         (std::uint32_t{b[off + 2]} << 8) | std::uint32_t{b[off + 3]};
}

void check_magic(std::uint32_t got, std::uint32_t want) {
  if (got != want) {
    throw DatasetError("bad IDX magic " + std::to_string(got) + ", expected " +
                       std::to_string(want));
  }
}

}  // namespace

IdxImages parse_idx_images(const std::vector<std::uint8_t>& bytes) {
  check_magic(read_be32(bytes, 0), kIdxImageMagic);
  const std::uint32_t count = read_be32(bytes, 4);
  const std::uint32_t rows = read_be32(bytes, 8);
  const std::uint32_t cols = read_be32(bytes, 12);
  if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
    throw DatasetError("implausible IDX image dimensions");
  }
  const std::size_t payload = std::size_t{count} * rows * cols;
  if (bytes.size() - 16 < payload) throw DatasetError("truncated IDX image file");
  if (bytes.size() - 16 > payload) throw DatasetError("IDX image file longer than its header states");
  IdxImages out;
  out.count = static_cast<int>(count);
  out.rows = static_cast<int>(rows);
  out.cols = static_cast<int>(cols);
  out.pixels.assign(bytes.begin() + 16, bytes.end());
  return out;
}

std::vector<std::uint8_t> parse_idx_labels(const std::vector<std::uint8_t>& bytes) {
  check_magic(read_be32(bytes, 0), kIdxLabelMagic);
  const std::uint32_t count = read_be32(bytes, 4);
  if (bytes.size() - 8 < count) throw DatasetError("truncated IDX label file");
  if (bytes.size() - 8 > count) throw DatasetError("IDX label file longer than its header states");
  return {bytes.begin() + 8, bytes.end()};
}

IdxImages load_idx_images(const std::filesystem::path& path) {
  return parse_idx_images(read_file(path));
}

std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path) {
  return parse_idx_labels(read_file(path));
}

std::vector<int> binarize(const IdxImages& images, int threshold) {
  std::vector<int> out(images.pixels.size());
  std::transform(images.pixels.begin(), images.pixels.end(), out.begin(),
                 [threshold](std::uint8_t px) { return px >= threshold ? 1 : -1; });
  return out;
}

BinaryImageSequence build_digit_sequence(const IdxImages& images,
                                         const std::vector<std::uint8_t>& labels,
                                         int n_blocks, std::uint64_t seed, int threshold) {
  if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
  if (static_cast<int>(labels.size()) != images.count) {
    throw DatasetError("image and label counts differ");
  }
  std::vector<std::vector<int>> by_digit(10);
  for (int i = 0; i < images.count; ++i) {
    if (labels[i] > 9) throw DatasetError("label out of range 0..9");
    by_digit[labels[i]].push_back(i);
  }
  for (int d = 0; d < 10; ++d) {
    if (static_cast<int>(by_digit[d].size()) < n_blocks) {
      throw DatasetError("digit " + std::to_string(d) + " has only " +
                         std::to_string(by_digit[d].size()) + " images, need " +
                         std::to_string(n_blocks));
    }
    CounterRng rng(seed, 0xd161700 + static_cast<std::uint64_t>(d));
    std::shuffle(by_digit[d].begin(), by_digit[d].end(), rng);
  }

  const int n = images.pixels_per_image();
  const int p = 10 * n_blocks;
  std::vector<int> values(static_cast<std::size_t>(p) * n);
  BinaryImageSequence out;
  out.threshold = threshold;
  out.labels.reserve(p);
  out.source_index.reserve(p);
  for (int b = 0; b < n_blocks; ++b) {
    for (int d = 0; d < 10; ++d) {
      const int img = by_digit[d][b];
      const std::size_t row = out.labels.size();
      const auto* px = images.pixels.data() + static_cast<std::size_t>(img) * n;
      for (int j = 0; j < n; ++j) values[row * n + j] = px[j] >= threshold ? 1 : -1;
      out.labels.push_back(d);
      out.source_index.push_back(img);
    }
  }
  out.patterns = PatternSet::from_bipolar(n, p, values);
  return out;
}

}  // namespace seqmem
