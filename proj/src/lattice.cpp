#include "tb/lattice.hpp"

#include <algorithm>
#include <utility>

#include "tb/error.hpp"

namespace tb {

IntMat::IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw Error(ErrorCode::DimensionMismatch, "matrix rows have unequal length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMat::row(std::size_t i) const {
  return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMat IntMat::top_rows(std::size_t count) const {
  IntMat m(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMat::add_row(std::size_t i, std::size_t j, const Int& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMat::add_col(std::size_t i, std::size_t j, const Int& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMat::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVec SNFDecomposition::diagonal() const {
  IntVec d;
  const std::size_t n = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < n; ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SNFDecomposition::rank() const {
  std::size_t r = 0;
  for (const Int& d : diagonal())
    if (d != 0) ++r;
  return r;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(const IntVec& v) { return content(v) == 1; }

namespace {

// Smallest |entry| among rows, cols >= t; first hit in row-major order wins ties.
bool find_pivot(const IntMat& D, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      Int a = abs(D(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

Int trunc_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMat& A) {
  SNFDecomposition s{IntMat::identity(A.rows()), IntMat::identity(A.cols()), A};
  IntMat& D = s.D;
  const std::size_t n = std::min(A.rows(), A.cols());
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(D, t, pi, pj)) break;
    for (;;) {
      D.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      s.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < D.rows(); ++i) {
        if (D(i, t) == 0) continue;
        Int q = -trunc_quotient(D(i, t), D(t, t));
        D.add_row(i, t, q);
        s.U.add_row(i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < D.cols(); ++j) {
        if (D(t, j) == 0) continue;
        Int q = -trunc_quotient(D(t, j), D(t, t));
        D.add_col(j, t, q);
        s.V.add_col(j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        find_pivot(D, t, pi, pj);
        continue;
      }

      bool divides = true;
      for (std::size_t i = t + 1; i < D.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < D.cols(); ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            D.add_row(t, i, 1);
            s.U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (!divides) {
        find_pivot(D, t, pi, pj);
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

bool extends_to_basis(const IntMat& A) {
  if (A.rows() > A.cols())
    throw Error(ErrorCode::DimensionMismatch, "more rows than columns",
                {{"rows", std::to_string(A.rows())}, {"cols", std::to_string(A.cols())}});
  const IntVec d = smith_normal_form(A).diagonal();
  for (const Int& x : d)
    if (x != 1) return false;
  return true;
}

Cokernel cokernel(const IntMat& A) {
  const SNFDecomposition s = smith_normal_form(A);
  Cokernel c;
  c.free_rank = A.rows() - s.rank();
  for (const Int& x : s.diagonal())
    if (x > 1) c.torsion.push_back(x);
  return c;
}

bool gf2_in_span(const IntVec& w, const IntMat& rows) {
  if (w.size() != rows.cols())
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from matrix width",
                {{"length", std::to_string(w.size())}, {"cols", std::to_string(rows.cols())}});
  const std::size_t n = w.size();
  auto odd = [](const Int& x) { return mpz_odd_p(x.get_mpz_t()) != 0; };

  std::vector<std::vector<char>> basis;
  std::vector<std::size_t> lead;
  auto reduce = [&](std::vector<char>& v) {
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (v[lead[b]])
        for (std::size_t j = 0; j < n; ++j) v[j] ^= basis[b][j];
  };
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    std::vector<char> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = odd(rows(i, j));
    reduce(v);
    for (std::size_t j = 0; j < n; ++j)
      if (v[j]) {
        for (std::size_t b = 0; b < basis.size(); ++b)
          if (basis[b][j])
            for (std::size_t c = 0; c < n; ++c) basis[b][c] ^= v[c];
        basis.push_back(v);
        lead.push_back(j);
        break;
      }
  }
  std::vector<char> target(n);
  for (std::size_t j = 0; j < n; ++j) target[j] = odd(w[j]);
  reduce(target);
  for (char x : target)
    if (x) return false;
  return true;
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const Cokernel& c) {
  std::string s = "Z^" + std::to_string(c.free_rank);
  for (const Int& t : c.torsion) s += " + Z/" + t.get_str();
  return s;
}

}  // namespace tb
