#include "qlpa/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "qlpa/error.hpp"

namespace qlpa {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("integer overflow in matrix product");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("integer overflow in matrix sum");
  return r;
}

std::string pad(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

std::size_t digits(std::size_t n) { return std::to_string(n).size(); }

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x >= 0; });
}

std::int64_t IntMatrix::trace() const {
  if (!square()) throw DimensionError("trace of a non-square matrix");
  std::int64_t t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t = checked_add(t, (*this)(i, i));
  return t;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::power(unsigned n) const {
  if (!square()) throw DimensionError("power of a non-square matrix");
  IntMatrix result = identity(rows_);
  for (unsigned i = 0; i < n; ++i) result = result * *this;
  return result;
}

IntMatrix IntMatrix::permuted(const std::vector<std::size_t>& perm) const {
  if (!square() || perm.size() != rows_) throw DimensionError("bad permutation size");
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(perm[i], perm[j]);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("cannot multiply " + std::to_string(a.rows_) + "x" +
                         std::to_string(a.cols_) + " by " + std::to_string(b.rows_) + "x" +
                         std::to_string(b.cols_));
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("cannot add matrices");
  IntMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = checked_add(a.data_[i], b.data_[i]);
  return c;
}

std::string IntMatrix::to_string() const { return matrix_to_json(*this).dump(); }

IntMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DimensionError("matrix must be an array of rows");
  std::size_t rows = j.size();
  std::size_t cols = rows ? j[0].size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw DimensionError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number_integer()) throw DimensionError("matrix entries must be integers");
      m(r, c) = j[r][c].get<std::int64_t>();
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix incidence(const Quiver& q) {
  IntMatrix m(q.vertex_count(), q.vertex_count());
  for (std::size_t e = 0; e < q.edge_count(); ++e) ++m(q.source(e), q.range(e));
  return m;
}

std::string incidence_vertex_name(const IntMatrix& m, const std::string& prefix,
                                  std::size_t i) {
  return prefix + pad(i, digits(m.rows() ? m.rows() - 1 : 0));
}

std::string incidence_edge_name(const IntMatrix& m, const std::string& prefix,
                                std::size_t i, std::size_t j, std::size_t k) {
  std::int64_t max_entry = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) max_entry = std::max(max_entry, m(r, c));
  std::size_t vw = digits(m.rows() ? m.rows() - 1 : 0);
  std::size_t kw = digits(max_entry > 0 ? static_cast<std::size_t>(max_entry - 1) : 0);
  return prefix + pad(i, vw) + "_" + pad(j, vw) + "_" + pad(k, kw);
}

Quiver from_incidence(const IntMatrix& m, const std::string& vertex_prefix,
                      const std::string& edge_prefix) {
  if (!m.square()) throw DimensionError("incidence matrix must be square");
  if (!m.nonnegative()) throw DimensionError("incidence matrix must be nonnegative");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < m.rows(); ++i)
    vertices.push_back(incidence_vertex_name(m, vertex_prefix, i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::int64_t k = 0; k < m(i, j); ++k)
        edges.push_back({incidence_edge_name(m, edge_prefix, i, j, static_cast<std::size_t>(k)),
                         vertices[i], vertices[j]});
  return Quiver(std::move(vertices), std::move(edges));
}

}  // namespace qlpa
