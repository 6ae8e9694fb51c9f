#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "seqmem/patterns.hpp"

namespace seqmem {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kIdxImageMagic = 2051;
inline constexpr std::uint32_t kIdxLabelMagic = 2049;

struct IdxImages {
  int count = 0;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> pixels;  // count * rows * cols, row-major per image

  int pixels_per_image() const { return rows * cols; }
};

IdxImages load_idx_images(const std::filesystem::path& path);
std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path);
IdxImages parse_idx_images(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> parse_idx_labels(const std::vector<std::uint8_t>& bytes);

/// Pixel >= threshold maps to +1, anything else to -1. Returns count rows of N values.
std::vector<int> binarize(const IdxImages& images, int threshold = 128);

struct BinaryImageSequence {
  PatternSet patterns;
  std::vector<int> labels;         // digit of each pattern
  std::vector<int> source_index;   // index into the input image set
  int threshold = 128;
};

/// n_blocks blocks of digits 0..9 in ascending order; images are drawn per
/// digit without replacement using `seed`.
BinaryImageSequence build_digit_sequence(const IdxImages& images,
                                         const std::vector<std::uint8_t>& labels,
                                         int n_blocks = 1000, std::uint64_t seed = 0,
                                         int threshold = 128);

}  // namespace seqmem
