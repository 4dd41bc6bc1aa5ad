#include "idglow/tensor.hpp"

#include <cmath>

#include "idglow/errors.hpp"

namespace idglow {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "dot: vector sizes differ (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sq_norm(const Vec& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

double norm2(const Vec& a) { return std::sqrt(sq_norm(a)); }

Vec normalized(const Vec& a) {
  double n = norm2(a);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / n;
  return out;
}

void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void matvec_into(const Matrix& m, const Vec& x, Vec& out) {
  out.assign(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + r * m.cols;
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) s += row[c] * x[c];
    out[r] = s;
  }
}

Vec matvec(const Matrix& m, const Vec& x) {
  if (x.size() != m.cols) {
    throw Error(ErrorKind::dimension_mismatch, "matvec: size mismatch");
  }
  Vec out;
  matvec_into(m, x, out);
  return out;
}

void matvec_transpose_add(const Matrix& m, const Vec& x, Vec& out) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + r * m.cols;
    const double xr = x[r];
    for (std::size_t c = 0; c < m.cols; ++c) out[c] += row[c] * xr;
  }
}

Matrix random_matrix(std::size_t rows, std::size_t cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  for (auto& v : m.data) v = scale * rng.normal();
  return m;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix m = random_matrix(n, n, 1.0, rng);
  // modified Gram-Schmidt over columns
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      double proj = 0.0;
      for (std::size_t r = 0; r < n; ++r) proj += m.at(r, c) * m.at(r, prev);
      for (std::size_t r = 0; r < n; ++r) m.at(r, c) -= proj * m.at(r, prev);
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm += m.at(r, c) * m.at(r, c);
    nrm = std::sqrt(nrm);
    double sign = m.at(c, c) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) m.at(r, c) *= sign / nrm;
  }
  return m;
}

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace idglow
