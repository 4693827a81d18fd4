#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibx/corpus.hpp"
#include "bibx/textkit.hpp"

// Truncated SVD, k-means and 2-D document projection.
namespace bibx::vec {

// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }

  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DenseMatrix from_sparse(const text::SparseMatrix& m);
  text::SparseMatrix to_sparse() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

// A ~= U * diag(S) * Vt with S non-increasing.
struct Factorization {
  DenseMatrix U;   // n x k
  std::vector<double> S;
  DenseMatrix Vt;  // k x m
  std::size_t k = 0;

  DenseMatrix reconstruct() const;
};

struct TsvdOptions {
  std::size_t oversampling = 10;
  std::size_t power_iterations = 7;
};

// Randomized block power iteration (Gaussian test matrix from `seed`). Each
// left singular vector is signed so its largest-magnitude entry is positive.
// Throws UsageError unless 1 <= k <= min(rows, cols).
Factorization tsvd(const text::SparseMatrix& matrix, std::size_t k, std::uint64_t seed, TsvdOptions options = {});
Factorization tsvd(const DenseMatrix& matrix, std::size_t k, std::uint64_t seed, TsvdOptions options = {});

struct Clustering {
  std::vector<std::size_t> labels;
  DenseMatrix centroids;  // k x d
  double inertia = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  // Inertia after every assignment step; non-increasing.
  std::vector<double> inertia_trace;
};

struct KMeansOptions {
  std::size_t max_iter = 300;
  double tol = 1e-6;
};

// k-means++ seeding then Lloyd iterations. Throws UsageError when k is 0 or
// exceeds the number of points.
Clustering kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed, KMeansOptions options = {});

double inertia(const DenseMatrix& points, std::span<const std::size_t> labels, const DenseMatrix& centroids);

enum class ProjectionMethod { tsvd, external };

struct ProjectedPoint {
  std::size_t doc_id = 0;
  double x = 0.0;
  double y = 0.0;
  std::optional<std::size_t> cluster;
  std::string citation;
};

struct Projection2D {
  std::vector<ProjectedPoint> points;
  ProjectionMethod method = ProjectionMethod::tsvd;
};

// Rank-2 TSVD coordinates (rows of U * diag(S)) of either the abstract TF-IDF
// matrix or `external` vectors, labelled by k-means on those coordinates.
Projection2D project2d(const Corpus& corpus, const DenseMatrix* external, std::size_t cluster_k, std::uint64_t seed,
                       const text::StopWords& stopwords = text::english_stopwords());

// CSV or whitespace-delimited rows; a non-numeric first line is a header.
// Throws UsageError on a row-count mismatch, ParseError on ragged rows.
DenseMatrix parse_vectors(std::string_view text, std::optional<std::size_t> expected_rows = std::nullopt);
DenseMatrix load_vectors(const std::filesystem::path& path, std::optional<std::size_t> expected_rows = std::nullopt);

}  // namespace bibx::vec
