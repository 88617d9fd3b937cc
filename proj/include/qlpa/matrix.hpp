#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlpa/quiver.hpp"

namespace qlpa {

/// Dense row-major integer matrix with exact (overflow-checked) arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool nonnegative() const;
  std::int64_t trace() const;
  IntMatrix transposed() const;
  IntMatrix power(unsigned n) const;
  /// Simultaneous row/column permutation: result(i,j) = this(perm[i], perm[j]).
  IntMatrix permuted(const std::vector<std::size_t>& perm) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix&) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Rows of integers; throws DimensionError on ragged input.
IntMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const IntMatrix& m);

/// Entry (u, v) counts the edges u -> v; rows and columns follow the sorted
/// vertex order of q.
IntMatrix incidence(const Quiver& q);

/// Inverse of incidence() up to isomorphism. Vertices are named
/// `<vertex_prefix><i>` and edges `<edge_prefix><i>_<j>_<k>`, zero-padded so
/// that lexicographic order matches index order; hence incidence(from_incidence(m)) == m.
Quiver from_incidence(const IntMatrix& m, const std::string& vertex_prefix = "v",
                      const std::string& edge_prefix = "e");

/// Name of vertex i / edge (i, j, k) as produced by from_incidence.
std::string incidence_vertex_name(const IntMatrix& m, const std::string& prefix,
                                  std::size_t i);
std::string incidence_edge_name(const IntMatrix& m, const std::string& prefix,
                                std::size_t i, std::size_t j, std::size_t k);

}  // namespace qlpa
