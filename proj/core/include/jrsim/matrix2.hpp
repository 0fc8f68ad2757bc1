#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace jrsim {

using cplx = std::complex<double>;

/// Dense complex 2x2 matrix, row-major.
struct Mat2 {
    cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    static constexpr Mat2 identity() { return {}; }
    static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 sigma_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
    static constexpr Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

    cplx det() const { return m11 * m22 - m12 * m21; }
    cplx trace() const { return m11 + m22; }
    Mat2 adjoint() const { return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)}; }
    double max_abs() const {
        return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
    }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
    }
    friend Mat2 operator*(cplx s, const Mat2& a) { return {s * a.m11, s * a.m12, s * a.m21, s * a.m22}; }
};

inline double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

/// Traceless matrix in Pauli form x sigma_x + y sigma_y + z sigma_z with
/// complex weights. Its square is (x^2 + y^2 + z^2) I.
struct PauliVector {
    cplx x{0.0}, y{0.0}, z{0.0};

    Mat2 matrix() const {
        const cplx i(0.0, 1.0);
        return {z, x - i * y, x + i * y, -z};
    }
    cplx square() const { return x * x + y * y + z * z; }

    static PauliVector from_matrix(const Mat2& m) {
        const cplx i(0.0, 1.0);
        return {0.5 * (m.m12 + m.m21), 0.5 * i * (m.m12 - m.m21), 0.5 * (m.m11 - m.m22)};
    }

    // Conjugation by the Hadamard matrix (sigma_x + sigma_z)/sqrt(2): swaps
    // sigma_x and sigma_z and flips sigma_y. Exact in floating point.
    PauliVector hadamard() const { return {z, -y, x}; }
};

/// Hadamard conjugation H W H of a full matrix.
inline Mat2 hadamard_conjugate(const Mat2& w) {
    return {0.5 * (w.m11 + w.m12 + w.m21 + w.m22), 0.5 * (w.m11 - w.m12 + w.m21 - w.m22),
            0.5 * (w.m11 + w.m12 - w.m21 - w.m22), 0.5 * (w.m11 - w.m12 - w.m21 + w.m22)};
}

}  // namespace jrsim
