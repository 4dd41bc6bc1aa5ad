#pragma once

#include <cstddef>
#include <vector>

#include "idglow/rng.hpp"

namespace idglow {

using Vec = std::vector<double>;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double sq_norm(const Vec& a);
Vec normalized(const Vec& a);  // caller guarantees nonzero norm

// y += alpha * x
void axpy(double alpha, const Vec& x, Vec& y);

Vec matvec(const Matrix& m, const Vec& x);
void matvec_into(const Matrix& m, const Vec& x, Vec& out);
// out += m^T * x
void matvec_transpose_add(const Matrix& m, const Vec& x, Vec& out);

// Gaussian matrix with entries scaled by `scale`.
Matrix random_matrix(std::size_t rows, std::size_t cols, double scale, Rng& rng);

// Random orthogonal matrix via Gram-Schmidt on a seeded Gaussian matrix,
// with positive diagonal sign convention.
Matrix random_orthogonal(std::size_t n, Rng& rng);

bool all_finite(const Vec& v);

}  // namespace idglow
