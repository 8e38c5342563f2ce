#pragma once

#include <cmath>
#include <complex>

namespace quench {

using cplx = std::complex<double>;

/// Two-component complex vector; one (k,-k) mode pair lives in this space.
struct Vec2 {
  cplx c0{};
  cplx c1{};

  double norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }
  Vec2 normalized() const {
    const double n = norm();
    return {c0 / n, c1 / n};
  }
};

/// Hermitian inner product <bra|ket>.
inline cplx dot(const Vec2& bra, const Vec2& ket) {
  return std::conj(bra.c0) * ket.c0 + std::conj(bra.c1) * ket.c1;
}

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  cplx m00{}, m01{}, m10{}, m11{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
};

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
  return {m.m00 * v.c0 + m.m01 * v.c1, m.m10 * v.c0 + m.m11 * v.c1};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Mat2 operator*(cplx s, const Mat2& m) {
  return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
}

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

/// s0*1 + sz*sigma_z + sx*sigma_x in the computational basis.
inline Mat2 sigma_combo(cplx s0, cplx sz, cplx sx) {
  return {s0 + sz, sx, sx, s0 - sz};
}

inline cplx matrix_element(const Vec2& bra, const Mat2& m, const Vec2& ket) {
  return dot(bra, m * ket);
}

inline cplx expectation(const Vec2& v, const Mat2& m) {
  return matrix_element(v, m, v);
}

inline double frobenius_norm(const Mat2& m) {
  return std::sqrt(std::norm(m.m00) + std::norm(m.m01) + std::norm(m.m10) +
                   std::norm(m.m11));
}

}  // namespace quench
