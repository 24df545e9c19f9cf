#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace twist::cli {

std::string to_csv(const Grid& g) {
  std::string out;
  out.reserve(g.values.size() * 12);
  char buf[32];
  for (int row = 0; row < g.ny; ++row) {
    for (int i = 0; i < g.nx; ++i) {
      const auto r = std::to_chars(buf, buf + sizeof buf, g.at(i, row));
      if (i) out += ',';
      out.append(buf, r.ptr);
    }
    out += '\n';
  }
  return out;
}

Grid parse_csv(const std::string& text) {
  Grid g;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (end > pos) {
      int count = 0;
      const char* p = text.data() + pos;
      const char* stop = text.data() + end;
      while (p < stop) {
        double v;
        const auto r = std::from_chars(p, stop, v);
        if (r.ec != std::errc()) throw IoError("malformed number in row " + std::to_string(g.ny + 1));
        g.values.push_back(v);
        ++count;
        p = r.ptr;
        if (p < stop) {
          if (*p != ',') throw IoError("expected ',' in row " + std::to_string(g.ny + 1));
          ++p;
        }
      }
      if (g.ny == 0)
        g.nx = count;
      else if (count != g.nx)
        throw IoError("row " + std::to_string(g.ny + 1) + " has " + std::to_string(count) + " values, expected " +
                      std::to_string(g.nx));
      ++g.ny;
    }
    pos = end + 1;
  }
  return g;
}

std::string to_pgm(const Grid& g, int bits, Tone tone, double clip_db) {
  const int maxval = bits == 16 ? 65535 : 255;
  std::string out = "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n" + std::to_string(maxval) + "\n";
  double peak = 0.0;
  for (double v : g.values) peak = std::max(peak, v);
  for (double v : g.values) {
    double t = 0.0;
    if (peak > 0.0 && v > 0.0) {
      if (tone == Tone::linear) {
        t = v / peak;
      } else {
        const double db = 10.0 * std::log10(v / peak);
        t = db <= clip_db ? 0.0 : 1.0 - db / clip_db;
      }
    }
    const auto q = static_cast<unsigned>(std::lround(std::clamp(t, 0.0, 1.0) * maxval));
    if (bits == 16) out += static_cast<char>(q >> 8);
    out += static_cast<char>(q & 0xff);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void AtomicWriter::add(std::string path, std::string bytes) { files_.emplace_back(std::move(path), std::move(bytes)); }

void AtomicWriter::commit() {
  namespace fs = std::filesystem;
  std::vector<std::string> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const auto& s : staged) fs::remove(s, ec);
  };
  const std::string suffix = ".tmp" + std::to_string(::getpid());
  for (const auto& [path, bytes] : files_) {
    const std::string tmp = path + suffix;
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.push_back(tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      discard();
      throw IoError("cannot write " + path);
    }
  }
  for (size_t i = 0; i < files_.size(); ++i) {
    std::error_code ec;
    fs::rename(staged[i], files_[i].first, ec);
    if (ec) {
      discard();
      throw IoError("cannot publish " + files_[i].first + ": " + ec.message());
    }
  }
  files_.clear();
}

}  // namespace twist::cli
