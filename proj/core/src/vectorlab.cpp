#include "bibx/vectorlab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "bibx/corpus_json.hpp"
#include "bibx/error.hpp"
#include "bibx/random.hpp"
#include "bibx/strings.hpp"

namespace bibx::vec {

namespace {

using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

SpMat to_eigen(const text::SparseMatrix& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.nnz());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (const auto& [c, v] : m.rows[r]) triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
  }
  SpMat out(static_cast<Eigen::Index>(m.n_rows), static_cast<Eigen::Index>(m.n_cols));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// Thin orthonormal basis for the columns of y.
Mat orthonormalize(const Mat& y) {
  Eigen::HouseholderQR<Mat> qr(y);
  return qr.householderQ() * Mat::Identity(y.rows(), y.cols());
}

DenseMatrix from_eigen(const Mat& m) {
  DenseMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

// Nearest centroid; ties go to the lower index.
std::pair<std::size_t, double> nearest(std::span<const double> point, const DenseMatrix& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows; ++c) {
    const double d = squared_distance(point, centroids.row(c));
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return {best, best_d};
}

DenseMatrix seed_plus_plus(const DenseMatrix& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.rows;
  DenseMatrix centroids(k, points.cols);
  std::vector<bool> chosen(n, false);
  auto take = [&](std::size_t c, std::size_t idx) {
    chosen[idx] = true;
    std::copy(points.row(idx).begin(), points.row(idx).end(), centroids.row(c).begin());
  };
  take(0, rng.below(n));
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), centroids.row(0));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > target) break;
      }
    }
    if (pick == n) {
      // Every point coincides with a centroid already; take the first unused one.
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    take(c, pick);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points.row(i), centroids.row(c)));
  }
  return centroids;
}

}  // namespace

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("ragged rows in dense matrix");
    std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
  }
  return out;
}

DenseMatrix DenseMatrix::from_sparse(const text::SparseMatrix& m) {
  DenseMatrix out(m.n_rows, m.n_cols);
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (const auto& [c, v] : m.rows[r]) out(r, c) = v;
  }
  return out;
}

text::SparseMatrix DenseMatrix::to_sparse() const {
  text::SparseMatrix out;
  out.n_rows = rows;
  out.n_cols = cols;
  out.rows.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if ((*this)(r, c) != 0.0) out.rows[r].emplace_back(c, (*this)(r, c));
    }
  }
  return out;
}

DenseMatrix Factorization::reconstruct() const {
  DenseMatrix out(U.rows, Vt.cols);
  for (std::size_t r = 0; r < U.rows; ++r) {
    for (std::size_t c = 0; c < Vt.cols; ++c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) sum += U(r, i) * S[i] * Vt(i, c);
      out(r, c) = sum;
    }
  }
  return out;
}

Factorization tsvd(const text::SparseMatrix& matrix, std::size_t k, std::uint64_t seed, TsvdOptions options) {
  const std::size_t limit = std::min(matrix.n_rows, matrix.n_cols);
  if (k < 1 || k > limit) {
    throw UsageError("tsvd rank " + std::to_string(k) + " outside 1.." + std::to_string(limit));
  }
  const SpMat a = to_eigen(matrix);
  const auto l = static_cast<Eigen::Index>(std::min(k + options.oversampling, limit));

  Rng rng(seed);
  Mat omega(a.cols(), l);
  for (Eigen::Index c = 0; c < l; ++c) {
    for (Eigen::Index r = 0; r < a.cols(); ++r) omega(r, c) = rng.normal();
  }
  Mat q = orthonormalize(a * omega);
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    const Mat z = orthonormalize(a.transpose() * q);
    q = orthonormalize(a * z);
  }
  const Mat b = q.transpose() * a;  // l x m
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Mat u = q * svd.matrixU();
  Mat v = svd.matrixV();
  const Eigen::VectorXd& s = svd.singularValues();

  const auto kk = static_cast<Eigen::Index>(k);
  for (Eigen::Index i = 0; i < kk; ++i) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      // Small tolerance so near-ties resolve to the first index on every platform.
      if (std::abs(u(r, i)) > best + 1e-12) {
        best = std::abs(u(r, i));
        arg = r;
      }
    }
    if (u(arg, i) < 0.0) {
      u.col(i) *= -1.0;
      v.col(i) *= -1.0;
    }
  }

  Factorization out;
  out.k = k;
  out.U = from_eigen(u.leftCols(kk));
  out.S.assign(s.data(), s.data() + kk);
  out.Vt = from_eigen(v.leftCols(kk).transpose());
  return out;
}

Factorization tsvd(const DenseMatrix& matrix, std::size_t k, std::uint64_t seed, TsvdOptions options) {
  return tsvd(matrix.to_sparse(), k, seed, options);
}

double inertia(const DenseMatrix& points, std::span<const std::size_t> labels, const DenseMatrix& centroids) {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.rows; ++i) sum += squared_distance(points.row(i), centroids.row(labels[i]));
  return sum;
}

Clustering kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed, KMeansOptions options) {
  const std::size_t n = points.rows;
  if (k == 0 || k > n) {
    throw UsageError("cluster count " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  Rng rng(seed);
  Clustering out;
  out.seed = seed;
  out.centroids = seed_plus_plus(points, k, rng);
  out.labels.assign(n, 0);
  std::vector<double> dist(n, 0.0);

  auto assign = [&] {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto [c, d] = nearest(points.row(i), out.centroids);
      out.labels[i] = c;
      dist[i] = d;
      total += d;
    }
    return total;
  };

  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    assign();
    // An empty cluster takes over the point farthest from its centroid.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t label : out.labels) ++sizes[label];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[out.labels[i]] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      --sizes[out.labels[far]];
      ++sizes[c];
      out.labels[far] = c;
      dist[far] = 0.0;
      std::copy(points.row(far).begin(), points.row(far).end(), out.centroids.row(c).begin());
    }
    double total = 0.0;
    for (double d : dist) total += d;
    out.inertia_trace.push_back(total);
    ++out.iterations;

    DenseMatrix next(k, points.cols);
    for (std::size_t i = 0; i < n; ++i) {
      auto dst = next.row(out.labels[i]);
      auto src = points.row(i);
      for (std::size_t j = 0; j < points.cols; ++j) dst[j] += src[j];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      for (double& x : next.row(c)) x /= static_cast<double>(sizes[c]);
      shift = std::max(shift, std::sqrt(squared_distance(next.row(c), out.centroids.row(c))));
    }
    out.centroids = std::move(next);
    if (shift < options.tol) break;
  }
  // Final labels agree with the returned centroids.
  assign();
  out.inertia = inertia(points, out.labels, out.centroids);
  return out;
}

Projection2D project2d(const Corpus& corpus, const DenseMatrix* external, std::size_t cluster_k, std::uint64_t seed,
                       const text::StopWords& stopwords) {
  text::SparseMatrix matrix;
  Projection2D out;
  if (external != nullptr) {
    if (external->rows != corpus.size()) {
      throw UsageError("expected " + std::to_string(corpus.size()) + " rows, found " + std::to_string(external->rows));
    }
    matrix = external->to_sparse();
    out.method = ProjectionMethod::external;
  } else {
    matrix = text::tfidf(corpus, text::TextField::abstract_text, stopwords);
    out.method = ProjectionMethod::tsvd;
  }
  const std::size_t rank = std::min<std::size_t>(2, std::min(matrix.n_rows, matrix.n_cols));
  if (rank == 0) throw UnavailableError("nothing to project");
  const Factorization f = tsvd(matrix, rank, seed);

  DenseMatrix coords(matrix.n_rows, 2);
  for (std::size_t r = 0; r < matrix.n_rows; ++r) {
    for (std::size_t c = 0; c < rank; ++c) coords(r, c) = f.U(r, c) * f.S[c];
  }
  std::optional<Clustering> clusters;
  if (cluster_k > 0) clusters = kmeans(coords, std::min(cluster_k, coords.rows), seed);

  for (std::size_t r = 0; r < coords.rows; ++r) {
    ProjectedPoint p;
    p.doc_id = corpus.documents[r].id;
    p.x = coords(r, 0);
    p.y = coords(r, 1);
    if (clusters) p.cluster = clusters->labels[r];
    p.citation = short_citation(corpus.documents[r]);
    out.points.push_back(std::move(p));
  }
  return out;
}

DenseMatrix parse_vectors(std::string_view text, std::optional<std::size_t> expected_rows) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string cleaned(line);
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::replace(cleaned.begin(), cleaned.end(), '\t', ' ');
    if (str::trim(cleaned).empty()) continue;

    std::vector<double> values;
    bool numeric = true;
    const char* p = cleaned.data();
    const char* stop = cleaned.data() + cleaned.size();
    while (p < stop) {
      while (p < stop && *p == ' ') ++p;
      if (p == stop) break;
      const char* tok_end = std::find(p, stop, ' ');
      double v = 0.0;
      const char* num = (*p == '+') ? p + 1 : p;
      auto [ptr, ec] = std::from_chars(num, tok_end, v);
      if (ec != std::errc{} || ptr != tok_end) {
        numeric = false;
        break;
      }
      values.push_back(v);
      p = tok_end;
    }
    if (!numeric) {
      if (rows.empty() && !header_seen) {
        header_seen = true;
        continue;
      }
      throw ParseError(line_no, "non-numeric value", "line");
    }
    if (rows.empty()) {
      width = values.size();
    } else if (values.size() != width) {
      throw ParseError(line_no, "expected " + std::to_string(width) + " columns, found " + std::to_string(values.size()),
                       "line");
    }
    rows.push_back(std::move(values));
  }
  if (expected_rows && rows.size() != *expected_rows) {
    throw UsageError("expected " + std::to_string(*expected_rows) + " rows, found " + std::to_string(rows.size()));
  }
  return DenseMatrix::from_rows(rows);
}

DenseMatrix load_vectors(const std::filesystem::path& path, std::optional<std::size_t> expected_rows) {
  return parse_vectors(read_file(path), expected_rows);
}

}  // namespace bibx::vec
