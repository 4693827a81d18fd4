#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

int h_index(const std::vector<std::int64_t>& citations) {
  int best = 0;
  for (int h = 1; h <= static_cast<int>(citations.size()); ++h) {
    const auto at_least = std::count_if(citations.begin(), citations.end(), [h](std::int64_t c) { return c >= h; });
    if (at_least >= h) best = h;
  }
  return best;
}

std::vector<double> singular_values(Dense a) {
  // Work on columns of A (m x n): rotate pairs until mutually orthogonal.
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a[i][p] * a[i][p];
          beta += a[i][q] * a[i][q];
          gamma += a[i][p] * a[i][q];
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a[i][p];
          const double aq = a[i][q];
          a[i][p] = c * ap - s * aq;
          a[i][q] = s * ap + c * aq;
        }
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0;
    for (std::size_t i = 0; i < m; ++i) norm += a[i][j] * a[i][j];
    sv[j] = std::sqrt(norm);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

DenseTfidf tfidf(const std::vector<std::vector<std::string>>& docs) {
  DenseTfidf out;
  std::set<std::string> vocab;
  for (const auto& d : docs) vocab.insert(d.begin(), d.end());
  out.vocabulary.assign(vocab.begin(), vocab.end());
  const double n = static_cast<double>(docs.size());
  for (const auto& d : docs) {
    std::vector<double> row;
    for (const auto& term : out.vocabulary) {
      const double tf = static_cast<double>(std::count(d.begin(), d.end(), term));
      double df = 0;
      for (const auto& other : docs) df += std::count(other.begin(), other.end(), term) > 0 ? 1 : 0;
      row.push_back(tf * (std::log((1.0 + n) / (1.0 + df)) + 1.0));
    }
    double norm = 0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (double& v : row) v /= norm;
    }
    out.rows.push_back(row);
  }
  return out;
}

double one_cluster_inertia(const Dense& points) {
  if (points.empty()) return 0.0;
  const std::size_t d = points[0].size();
  std::vector<double> mean(d, 0.0);
  for (const auto& p : points) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += p[j];
  }
  for (double& v : mean) v /= static_cast<double>(points.size());
  double total = 0;
  for (const auto& p : points) {
    for (std::size_t j = 0; j < d; ++j) total += (p[j] - mean[j]) * (p[j] - mean[j]);
  }
  return total;
}

double best_two_partition_inertia(const Dense& points) {
  const std::size_t n = points.size();
  double best = INFINITY;
  // Point 0 always in the first part; the second part must be non-empty.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    Dense a{points[0]}, b;
    for (std::size_t i = 1; i < n; ++i) ((mask >> (i - 1)) & 1 ? b : a).push_back(points[i]);
    best = std::min(best, one_cluster_inertia(a) + one_cluster_inertia(b));
  }
  return best;
}

std::vector<double> stationary(const Dense& sim, double d) {
  const std::size_t n = sim.size();
  // Column-stochastic transition T[i][j] = P(j -> i).
  Dense t(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const double row = std::accumulate(sim[j].begin(), sim[j].end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) t[i][j] = row > 0 ? sim[j][i] / row : 1.0 / static_cast<double>(n);
  }
  // Solve (I - d T) p = (1 - d)/n by Gaussian elimination with pivoting.
  Dense a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - d * t[i][j];
    a[i][n] = (1.0 - d) / static_cast<double>(n);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = a[i][n] / a[i][i];
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

namespace {

using bibx::render::Rect;

double worst(const std::vector<double>& row, double w) {
  const double s = std::accumulate(row.begin(), row.end(), 0.0);
  const double hi = *std::max_element(row.begin(), row.end());
  const double lo = *std::min_element(row.begin(), row.end());
  return std::max(w * w * hi / (s * s), (s * s) / (w * w * lo));
}

// Places `row` along the shorter side of `free` and returns what is left.
Rect layout_row(const std::vector<double>& row, Rect free, std::vector<Rect>& out, bool last) {
  const double s = std::accumulate(row.begin(), row.end(), 0.0);
  if (free.w >= free.h) {
    const double width = last ? free.w : s / free.h;
    double y = free.y;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double h = i + 1 == row.size() ? free.y + free.h - y : row[i] / width;
      out.push_back({free.x, y, width, h});
      y += h;
    }
    return {free.x + width, free.y, free.w - width, free.h};
  }
  const double height = last ? free.h : s / free.w;
  double x = free.x;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const double w = i + 1 == row.size() ? free.x + free.w - x : row[i] / height;
    out.push_back({x, free.y, w, height});
    x += w;
  }
  return {free.x, free.y + height, free.w, free.h - height};
}

void recurse(std::vector<double> children, std::vector<double> row, Rect free, std::vector<Rect>& out) {
  if (children.empty()) {
    if (!row.empty()) layout_row(row, free, out, true);
    return;
  }
  const double w = std::min(free.w, free.h);
  const double c = children.front();
  std::vector<double> with = row;
  with.push_back(c);
  if (row.empty() || worst(row, w) >= worst(with, w)) {
    children.erase(children.begin());
    recurse(children, with, free, out);
  } else {
    const Rect rest = layout_row(row, free, out, false);
    recurse(children, {}, rest, out);
  }
}

}  // namespace

std::vector<Rect> squarify(const std::vector<double>& values, Rect rect) {
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  std::vector<double> scaled;
  for (double v : values) scaled.push_back(v * rect.w * rect.h / total);
  std::vector<Rect> out;
  recurse(scaled, {}, rect, out);
  return out;
}

std::vector<PairCount> shared_references(const std::vector<std::vector<std::string>>& refs) {
  std::vector<PairCount> out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (std::size_t j = i + 1; j < refs.size(); ++j) {
      std::set<std::string> a(refs[i].begin(), refs[i].end());
      std::size_t shared = 0;
      std::set<std::string> seen;
      for (const auto& r : refs[j]) {
        if (a.count(r) && seen.insert(r).second) ++shared;
      }
      if (shared > 0) out.push_back({i, j, shared});
    }
  }
  return out;
}

std::vector<int> bradford_zones(const std::vector<std::size_t>& counts) {
  const std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  // Shortest prefix (in sources) whose documents reach a third / two thirds.
  auto shortest_prefix = [&](std::size_t num) {
    std::size_t sum = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      sum += counts[k];
      if (3 * sum >= num * n) return k + 1;
    }
    return counts.size();
  };
  const std::size_t p1 = shortest_prefix(1);
  const std::size_t p2 = shortest_prefix(2);
  std::vector<int> zones;
  for (std::size_t i = 0; i < counts.size(); ++i) zones.push_back(i < p1 ? 1 : i < p2 ? 2 : 3);
  return zones;
}

}  // namespace oracle
