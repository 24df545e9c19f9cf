#include "twist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "twist/constants.hpp"
#include "twist/errors.hpp"

namespace twist {

namespace {

Vec2 grid_center(const Grid2D& g) { return {g.x(0) + 0.5 * (g.nx - 1) * g.dx, g.y(0) + 0.5 * (g.ny - 1) * g.dy}; }

}  // namespace

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw DomainError("correlation needs equally sized non-empty inputs");
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return (saa == sbb) ? 1.0 : 0.0;
  return sab / std::sqrt(saa * sbb);
}

double pearson(const IntensityMap& a, const IntensityMap& b) { return pearson(a.values, b.values); }

IntensityMap mirror_x(const IntensityMap& map) {
  IntensityMap out = map;
  const Grid2D& g = map.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) out.values[g.index(i, j)] = map.at(g.nx - 1 - i, j);
  return out;
}

IntensityMap invert(const IntensityMap& map) {
  IntensityMap out = map;
  const Grid2D& g = map.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) out.values[g.index(i, j)] = map.at(g.nx - 1 - i, g.ny - 1 - j);
  return out;
}

IntensityMap rotate(const IntensityMap& map, double angle) {
  IntensityMap out = map;
  const Grid2D& g = map.grid;
  const Vec2 c = grid_center(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 src = c + twist::rotate(Vec2{g.x(i), g.y(j)} - c, -angle);
      out.values[g.index(i, j)] = bilinear(map, src.x, src.y);
    }
  return out;
}

std::vector<Peak> find_peaks(const IntensityMap& map, double rel_threshold) {
  const Grid2D& g = map.grid;
  const double floor = rel_threshold * map.max();
  std::vector<Peak> peaks;
  for (int j = 1; j < g.ny - 1; ++j) {
    for (int i = 1; i < g.nx - 1; ++i) {
      const double v = map.at(i, j);
      if (v < floor || v <= 0.0) continue;
      bool is_max = true;
      for (int dj = -1; dj <= 1 && is_max; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const double w = map.at(i + di, j + dj);
          // ties resolved towards the first sample in raster order
          const bool before = dj < 0 || (dj == 0 && di < 0);
          if (w > v || (before && w == v)) {
            is_max = false;
            break;
          }
        }
      if (is_max) peaks.push_back({i, j, {g.x(i), g.y(j)}, v});
    }
  }
  return peaks;
}

LobeAnalysis count_lobes(const IntensityMap& map, double orientation, double rel_threshold) {
  LobeAnalysis res;
  res.peaks = find_peaks(map, rel_threshold);
  const auto& pk = res.peaks;
  if (pk.empty()) return res;
  if (pk.size() == 1) {
    res.lobes_per_side = 1;
    return res;
  }
  std::vector<double> nn;
  for (size_t a = 0; a < pk.size(); ++a) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t b = 0; b < pk.size(); ++b)
      if (a != b) best = std::min(best, norm(pk[a].position - pk[b].position));
    nn.push_back(best);
  }
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  const double tol = 0.5 * nn[nn.size() / 2];
  for (int d = 0; d < 6; ++d) {
    const double ang = orientation + d * constants::pi / 3.0;
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& p : pk) top = std::max(top, dot(p.position, dir));
    int count = 0;
    for (const auto& p : pk)
      if (dot(p.position, dir) >= top - tol) ++count;
    if (count > res.lobes_per_side) {
      res.lobes_per_side = count;
      res.side_direction = ang;
    }
  }
  return res;
}

Profile radial_profile(const IntensityMap& map, Vec2 center, Vec2 dir, double s_max, int samples, double power) {
  Profile p;
  const Vec2 u = dir / norm(dir);
  for (int n = 0; n < samples; ++n) {
    const double s = s_max * n / (samples - 1);
    const Vec2 r = center + s * u;
    p.s.push_back(s);
    p.value.push_back(bilinear(map, r.x, r.y) * std::pow(s, power));
  }
  return p;
}

std::vector<double> profile_maxima(const Profile& p, double rel_prominence) {
  const auto& v = p.value;
  const size_t n = v.size();
  const double vmax = n ? *std::max_element(v.begin(), v.end()) : 0.0;
  std::vector<double> out;
  for (size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
    double left = v[i], right = v[i];
    for (size_t a = i; a-- > 0;) {
      if (v[a] > v[i]) break;
      left = std::min(left, v[a]);
    }
    for (size_t b = i + 1; b < n; ++b) {
      if (v[b] > v[i]) break;
      right = std::min(right, v[b]);
    }
    const double prominence = v[i] - std::max(left, right);
    if (prominence >= rel_prominence * vmax) out.push_back(p.s[i]);
  }
  return out;
}

double ridge_pitch(const IntensityMap& map, Vec2 center, Vec2 dir, double s_max, int samples,
                   double rel_prominence) {
  const auto m = profile_maxima(radial_profile(map, center, dir, s_max, samples, 2.0), rel_prominence);
  if (m.size() < 5) throw PreconditionError("ridge profile has fewer than five maxima");
  return (m[4] - m[1]) / 3.0;
}

int winding_number(const ComplexField2D& field, Vec2 center, double radius, int samples) {
  double total = 0.0;
  std::complex<double> prev = bilinear(field, center.x + radius, center.y);
  for (int n = 1; n <= samples; ++n) {
    const double a = constants::two_pi * n / samples;
    const std::complex<double> cur = bilinear(field, center.x + radius * std::cos(a), center.y + radius * std::sin(a));
    total += std::arg(cur * std::conj(prev));
    prev = cur;
  }
  return static_cast<int>(std::lround(total / constants::two_pi));
}

Vec2 centroid(const IntensityMap& map) {
  const Grid2D& g = map.grid;
  double s = 0, sx = 0, sy = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double v = map.at(i, j);
      s += v;
      sx += v * g.x(i);
      sy += v * g.y(j);
    }
  if (s == 0.0) throw DomainError("centroid of an empty map");
  return {sx / s, sy / s};
}

double rms_width(const IntensityMap& map) {
  const Vec2 c = centroid(map);
  const Grid2D& g = map.grid;
  double s = 0, s2 = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double v = map.at(i, j);
      const double dx = g.x(i) - c.x, dy = g.y(j) - c.y;
      s += v;
      s2 += v * (dx * dx + dy * dy);
    }
  return std::sqrt(s2 / s);
}

}  // namespace twist
