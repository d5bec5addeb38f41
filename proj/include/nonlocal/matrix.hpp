#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace nonlocal {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;

// Dense square complex matrix of dimension 2 or 4, row-major.
// Values are immutable in practice: every operation returns a new matrix.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4) {
      throw std::invalid_argument("ComplexMatrix: dim must be 2 or 4, got " +
                                  std::to_string(dim));
    }
    entries_.fill(Complex{0.0, 0.0});
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  Complex& at(int r, int c) { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& at(int r, int c) const {
    return entries_[static_cast<size_t>(r) * dim_ + c];
  }

  Complex trace() const {
    Complex t{0.0, 0.0};
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  ComplexMatrix dagger() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(r, c) = std::conj(at(c, r));
    return m;
  }

  // max entrywise |A - A^dagger|
  double hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }

  bool is_hermitian(double tol = kHermitianTol) const {
    return hermiticity_defect() <= tol;
  }

  double max_abs_diff(const ComplexMatrix& other) const {
    require_same_dim(other);
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        worst = std::max(worst, std::abs(at(r, c) - other.at(r, c)));
    return worst;
  }

  ComplexMatrix operator+(const ComplexMatrix& other) const {
    require_same_dim(other);
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(r, c) = at(r, c) + other.at(r, c);
    return m;
  }

  ComplexMatrix operator-(const ComplexMatrix& other) const {
    require_same_dim(other);
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(r, c) = at(r, c) - other.at(r, c);
    return m;
  }

  ComplexMatrix operator*(Complex scale) const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(r, c) = at(r, c) * scale;
    return m;
  }

  void require_same_dim(const ComplexMatrix& other) const {
    if (dim_ != other.dim_) {
      throw std::invalid_argument("matrix dimension mismatch: " +
                                  std::to_string(dim_) + " vs " +
                                  std::to_string(other.dim_));
    }
  }

 private:
  int dim_;
  // fixed storage sized for the largest supported dim
  std::array<Complex, 16> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  a.require_same_dim(b);
  const int n = a.dim();
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < n; ++k) acc += a.at(r, k) * b.at(k, c);
      m.at(r, c) = acc;
    }
  }
  return m;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

// Kronecker product of two 2x2 matrices, block order a(0,0)*b first.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("kron: both factors must be 2x2");
  }
  ComplexMatrix m(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return m;
}

// ab - ba; anti-Hermitian when a and b are Hermitian.
inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2);
  m.at(0, 1) = Complex{0.0, -1.0};
  m.at(1, 0) = Complex{0.0, 1.0};
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

}  // namespace nonlocal
