#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace tb {

using Int = mpz_class;
using IntVec = std::vector<Int>;

class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols);

  static IntMat identity(std::size_t n);
  // cols is used only when rows is empty.
  static IntMat from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntMat top_rows(std::size_t count) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += c * row j
  void add_row(std::size_t i, std::size_t j, const Int& c);
  // col i += c * col j
  void add_col(std::size_t i, std::size_t j, const Int& c);
  void negate_row(std::size_t i);

  friend bool operator==(const IntMat& a, const IntMat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);

struct SNFDecomposition {
  IntMat U;
  IntMat V;
  IntMat D;

  IntVec diagonal() const;
  std::size_t rank() const;
};

struct Cokernel {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  friend bool operator==(const Cokernel&, const Cokernel&) = default;
};

Int content(const IntVec& v);
bool is_primitive(const IntVec& v);

// U * A * V = D, smallest nonzero pivot first, row-major tie-break.
SNFDecomposition smith_normal_form(const IntMat& A);

// Throws DimensionMismatch when rows > cols.
bool extends_to_basis(const IntMat& A);

// Z^rows / A Z^cols.
Cokernel cokernel(const IntMat& A);

// Throws DimensionMismatch when w.size() != rows.cols().
bool gf2_in_span(const IntVec& w, const IntMat& rows);

std::string to_string(const IntVec& v);
std::string to_string(const Cokernel& c);

}  // namespace tb
