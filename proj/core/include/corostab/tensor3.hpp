#pragma once

// Fixed-size 3x3 tensor algebra: general matrices for deformation
// gradients and velocity gradients, symmetric tensors for strains and
// stresses, a Jacobi symmetric eigensolver, primary matrix functions
// and the Sym(3) <-> R^6 identification.

#include <array>
#include <cmath>
#include <functional>

namespace corostab {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// General real 3x3 matrix, row-major.
class Mat3 {
public:
    constexpr Mat3() = default;
    constexpr explicit Mat3(const std::array<double, 9>& rowMajor) : m_(rowMajor) {}

    static constexpr Mat3 zero() { return Mat3{}; }
    static constexpr Mat3 identity() { return diag({1.0, 1.0, 1.0}); }
    static constexpr Mat3 diag(const Vec3& d) {
        return Mat3({d[0], 0.0, 0.0, 0.0, d[1], 0.0, 0.0, 0.0, d[2]});
    }
    /// Matrix whose columns are the given vectors.
    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

    constexpr double operator()(int i, int j) const { return m_[static_cast<std::size_t>(3 * i + j)]; }
    constexpr double& operator()(int i, int j) { return m_[static_cast<std::size_t>(3 * i + j)]; }

    [[nodiscard]] Vec3 column(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
    [[nodiscard]] const std::array<double, 9>& data() const { return m_; }

    Mat3& operator+=(const Mat3& o);
    Mat3& operator-=(const Mat3& o);
    Mat3& operator*=(double s);

private:
    std::array<double, 9> m_{};
};

Mat3 operator+(Mat3 a, const Mat3& b);
Mat3 operator-(Mat3 a, const Mat3& b);
Mat3 operator*(Mat3 a, double s);
Mat3 operator*(double s, Mat3 a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);

Mat3 transpose(const Mat3& a);
double trace(const Mat3& a);
double det(const Mat3& a);
/// Frobenius inner product tr(A B^T).
double inner(const Mat3& a, const Mat3& b);
double norm(const Mat3& a);
/// Throws DomainError when |det| is zero relative to the entry scale.
Mat3 inverse(const Mat3& a);
/// Cof X = det(X) X^{-T}; throws DomainError for singular X.
Mat3 cof(const Mat3& a);
Mat3 skew(const Mat3& a);
Mat3 outer(const Vec3& a, const Vec3& b);

/// Symmetric 3x3 tensor stored as its six independent entries
/// (a11, a22, a33, a12, a23, a31).
class SymTensor3 {
public:
    constexpr SymTensor3() = default;
    constexpr SymTensor3(double a11, double a22, double a33, double a12, double a23, double a31)
        : v_{a11, a22, a33, a12, a23, a31} {}

    static constexpr SymTensor3 zero() { return SymTensor3{}; }
    static constexpr SymTensor3 identity() { return SymTensor3(1.0, 1.0, 1.0, 0.0, 0.0, 0.0); }
    static constexpr SymTensor3 diag(const Vec3& d) { return SymTensor3(d[0], d[1], d[2], 0.0, 0.0, 0.0); }
    /// Symmetric part of a general matrix.
    static SymTensor3 sym(const Mat3& a);

    [[nodiscard]] double operator()(int i, int j) const;
    /// Raw storage in (11, 22, 33, 12, 23, 31) order.
    [[nodiscard]] const std::array<double, 6>& entries() const { return v_; }
    [[nodiscard]] Mat3 matrix() const;
    [[nodiscard]] bool finite() const;

    SymTensor3& operator+=(const SymTensor3& o);
    SymTensor3& operator-=(const SymTensor3& o);
    SymTensor3& operator*=(double s);

    friend bool operator==(const SymTensor3&, const SymTensor3&) = default;

private:
    std::array<double, 6> v_{};
};

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a);
SymTensor3 operator*(SymTensor3 a, double s);
SymTensor3 operator*(double s, SymTensor3 a);

double trace(const SymTensor3& a);
SymTensor3 dev(const SymTensor3& a);
double inner(const SymTensor3& a, const SymTensor3& b);
double norm(const SymTensor3& a);
double det(const SymTensor3& a);
SymTensor3 cof(const SymTensor3& a);
SymTensor3 inverse(const SymTensor3& a);
/// Q A Q^T
SymTensor3 rotate(const SymTensor3& a, const Mat3& q);

/// Spectral data of a symmetric tensor. Eigenvalues sorted descending,
/// frame columns are the matching unit eigenvectors.
struct EigenSystem3 {
    Vec3 values{};
    Mat3 frame = Mat3::identity();
};

/// Cyclic Jacobi eigensolver on the max-entry-scaled tensor. Values are in
/// descending order, frame columns are the eigenvectors and det(frame) = +1.
/// Throws InvalidInputError for non-finite entries.
EigenSystem3 eig_sym(const SymTensor3& a);

/// Q diag(values) Q^T
SymTensor3 from_spectral(const Vec3& values, const Mat3& frame);

enum class Positivity { Any, Required };

/// Primary matrix function Q diag(f(d_i)) Q^T. With Positivity::Required a
/// non-positive eigenvalue raises DomainError.
SymTensor3 primary_fn(const SymTensor3& a, const std::function<double(double)>& f,
                      Positivity positivity = Positivity::Any);

SymTensor3 log_spd(const SymTensor3& a);
SymTensor3 exp_sym(const SymTensor3& a);
SymTensor3 sqrt_spd(const SymTensor3& a);

/// Six symmetric tensors forming an orthogonal basis of Sym(3).
class Basis6 {
public:
    /// Diagonal units plus off-diagonal units scaled by 1/sqrt(2); isometric.
    static const Basis6& orthonormal();
    /// Unweighted (H11, H22, H33, H12, H23, H31) coordinates; not isometric.
    static const Basis6& voigt();

    [[nodiscard]] const SymTensor3& operator[](std::size_t k) const { return elements_[k]; }
    [[nodiscard]] bool is_orthonormal() const { return orthonormal_; }

private:
    Basis6(const std::array<SymTensor3, 6>& elements, bool orthonormal)
        : elements_(elements), orthonormal_(orthonormal) {}

    std::array<SymTensor3, 6> elements_;
    bool orthonormal_;
};

/// Coordinates of A in the basis: A = sum_k v_k E_k.
Vec6 vec6(const SymTensor3& a, const Basis6& basis = Basis6::orthonormal());
SymTensor3 unvec6(const Vec6& v, const Basis6& basis = Basis6::orthonormal());

}  // namespace corostab
