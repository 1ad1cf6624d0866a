#include "simpkit/zmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace sk {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  Matrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("matrix: ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::column(const std::vector<Int>& v) {
  Matrix m(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (c_ != b.r_) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix m(r_, b.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.c_; ++j)
        if (b(k, j) != 0) m(i, j) += x * b(k, j);
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix m = *this;
  for (size_t t = 0; t < a_.size(); ++t) m.a_[t] += b.a_[t];
  return m;
}

Matrix Matrix::operator-(const Matrix& b) const { return *this + (-b); }

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Matrix Matrix::scaled(const Int& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool Matrix::operator==(const Matrix& b) const { return r_ == b.r_ && c_ == b.c_ && a_ == b.a_; }

bool Matrix::is_zero() const {
  for (auto& x : a_)
    if (x != 0) return false;
  return true;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts, int rows) {
  int r = rows >= 0 ? rows : (parts.empty() ? 0 : parts[0].rows());
  int c = 0;
  for (auto& p : parts) {
    if (p.rows() != r) throw std::invalid_argument("hstack: row mismatch");
    c += p.cols();
  }
  Matrix m(r, c);
  int at = 0;
  for (auto& p : parts) {
    m.set_block(0, at, p);
    at += p.cols();
  }
  return m;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts, int cols) {
  int c = cols >= 0 ? cols : (parts.empty() ? 0 : parts[0].cols());
  int r = 0;
  for (auto& p : parts) {
    if (p.cols() != c) throw std::invalid_argument("vstack: column mismatch");
    r += p.rows();
  }
  Matrix m(r, c);
  int at = 0;
  for (auto& p : parts) {
    m.set_block(at, 0, p);
    at += p.rows();
  }
  return m;
}

void Matrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void Matrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void Matrix::add_row(int dst, int src, const Int& f) {
  if (f == 0) return;
  for (int k = 0; k < c_; ++k)
    if ((*this)(src, k) != 0) (*this)(dst, k) += f * (*this)(src, k);
}

void Matrix::add_col(int dst, int src, const Int& f) {
  if (f == 0) return;
  for (int k = 0; k < r_; ++k)
    if ((*this)(k, src) != 0) (*this)(k, dst) += f * (*this)(k, src);
}

void Matrix::negate_row(int i) {
  for (int k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void Matrix::negate_col(int j) {
  for (int k = 0; k < r_; ++k) (*this)(k, j) = -(*this)(k, j);
}

nlohmann::json Matrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < r_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < c_; ++j) {
      const Int& x = (*this)(i, j);
      if (x.fits_slong_p())
        row.push_back(x.get_si());
      else
        row.push_back(x.get_str());
    }
    rows.push_back(row);
  }
  return rows;
}

Matrix Matrix::from_json(const nlohmann::json& j, int rows, int cols) {
  Matrix m(rows, cols);
  if (!j.is_array() || static_cast<int>(j.size()) != rows) throw std::invalid_argument("matrix: wrong number of rows");
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("matrix: wrong number of columns");
    for (int c = 0; c < cols; ++c)
      m(i, c) = j[i][c].is_string() ? Int(j[i][c].get<std::string>()) : Int(j[i][c].get<long>());
  }
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << ']';
  return os.str();
}

SmithForm smith(const Matrix& a) {
  SmithForm s;
  int r = a.rows(), c = a.cols();
  s.D = a;
  s.U = Matrix::identity(r);
  s.Uinv = Matrix::identity(r);
  s.V = Matrix::identity(c);
  s.Vinv = Matrix::identity(c);
  Matrix& D = s.D;
  // Row op on D: row i += f row j  <=>  U same op, Uinv col j -= f col i.
  auto row_add = [&](int i, int j, const Int& f) {
    D.add_row(i, j, f);
    s.U.add_row(i, j, f);
    s.Uinv.add_col(j, i, -f);
  };
  auto row_swap = [&](int i, int j) {
    D.swap_rows(i, j);
    s.U.swap_rows(i, j);
    s.Uinv.swap_cols(i, j);
  };
  auto row_neg = [&](int i) {
    D.negate_row(i);
    s.U.negate_row(i);
    s.Uinv.negate_col(i);
  };
  auto col_add = [&](int i, int j, const Int& f) {
    D.add_col(i, j, f);
    s.V.add_col(i, j, f);
    s.Vinv.add_row(j, i, -f);
  };
  auto col_swap = [&](int i, int j) {
    D.swap_cols(i, j);
    s.V.swap_cols(i, j);
    s.Vinv.swap_rows(i, j);
  };
  int t = 0;
  for (; t < std::min(r, c); ++t) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j)
          if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
      if (pi < 0) break;
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (D(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < c; ++j) {
        if (D(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_add(t, bad, 1);
    }
    if (t >= r || t >= c || D(t, t) == 0) break;
    if (D(t, t) < 0) row_neg(t);
  }
  s.rank = 0;
  for (int i = 0; i < std::min(r, c); ++i)
    if (D(i, i) != 0) {
      s.diag.push_back(D(i, i));
      ++s.rank;
    }
  return s;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  SmithForm s = smith(a);
  Matrix ub = s.U * b;
  Matrix y(a.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (i < s.rank) {
        if (ub(i, j) % s.diag[i] != 0) return std::nullopt;
        y(i, j) = ub(i, j) / s.diag[i];
      } else if (ub(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.V * y;
}

Matrix kernel(const Matrix& a) {
  SmithForm s = smith(a);
  return s.V.block(0, s.rank, a.cols(), a.cols() - s.rank);
}

Matrix image_basis(const Matrix& a) {
  SmithForm s = smith(a);
  Matrix m(a.rows(), s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < a.rows(); ++i) m(i, j) = s.Uinv(i, j) * s.diag[j];
  return m;
}

bool is_saturated(const Matrix& k) {
  SmithForm s = smith(k);
  if (s.rank != k.cols()) return false;
  for (auto& d : s.diag)
    if (d != 1) return false;
  return true;
}

Matrix complement_basis(const Matrix& k) {
  SmithForm s = smith(k);
  if (s.rank != k.cols()) throw std::invalid_argument("complement_basis: columns are dependent");
  for (auto& d : s.diag)
    if (d != 1) throw std::invalid_argument("complement_basis: sublattice is not saturated");
  return s.Uinv.block(0, s.rank, k.rows(), k.rows() - s.rank);
}

bool is_unimodular(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  SmithForm s = smith(a);
  if (s.rank != a.rows()) return false;
  for (auto& d : s.diag)
    if (d != 1) return false;
  return true;
}

Matrix inverse_unimodular(const Matrix& a) {
  if (!is_unimodular(a)) throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
  SmithForm s = smith(a);
  // U A V = I  =>  A^{-1} = V U
  return s.V * s.U;
}

int rank(const Matrix& a) { return smith(a).rank; }

long long AbelianGroup::order() const {
  if (free > 0) return -1;
  long long o = 1;
  for (auto& t : torsion) o *= t.get_si();
  return o;
}

std::string AbelianGroup::str() const {
  std::string s;
  if (free > 0) s = free == 1 ? "Z" : "Z^" + std::to_string(free);
  for (auto& t : torsion) s += (s.empty() ? "" : "+") + std::string("Z/") + t.get_str();
  return s.empty() ? "0" : s;
}

AbelianGroup cokernel_group(const Matrix& a) {
  SmithForm s = smith(a);
  AbelianGroup g;
  g.free = a.rows() - s.rank;
  for (auto& d : s.diag)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

}  // namespace sk
