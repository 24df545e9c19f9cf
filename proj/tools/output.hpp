#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twist::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major grid; row 0 is the top of the image (largest y).
struct Grid {
  int nx = 0;
  int ny = 0;
  std::vector<double> values;

  double at(int i, int row) const { return values[static_cast<size_t>(row) * nx + i]; }
};

/// Comma-separated rows, shortest round-trip decimal, '.' separator.
std::string to_csv(const Grid& g);
Grid parse_csv(const std::string& text);

enum class Tone { linear, log };

/// Binary P5 graymap. Log tone maps [clip_db, 0] dB relative to the peak onto the gray range.
std::string to_pgm(const Grid& g, int bits, Tone tone, double clip_db = -20.0);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);

/// Stages files and publishes them together: nothing appears at the target
/// paths unless every file was written.
class AtomicWriter {
 public:
  void add(std::string path, std::string bytes);
  void commit();

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace twist::cli
