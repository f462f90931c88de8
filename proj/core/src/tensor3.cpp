#include "corostab/tensor3.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "corostab/error.hpp"

namespace corostab {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// Mat3

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return Mat3({c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]});
}

Mat3& Mat3::operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m_[i] += o.m_[i];
    return *this;
}

Mat3& Mat3::operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m_[i] -= o.m_[i];
    return *this;
}

Mat3& Mat3::operator*=(double s) {
    for (auto& x : m_) x *= s;
    return *this;
}

Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
Mat3 operator*(Mat3 a, double s) { return a *= s; }
Mat3 operator*(double s, Mat3 a) { return a *= s; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return c;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2], a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

Mat3 transpose(const Mat3& a) {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
    return t;
}

double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double inner(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) s += a.data()[i] * b.data()[i];
    return s;
}

double norm(const Mat3& a) { return std::sqrt(inner(a, a)); }

namespace {

// Adjugate transpose: cofactor matrix, Cof(X)_ij = (-1)^{i+j} minor_ij.
Mat3 cofactor_matrix(const Mat3& a) {
    Mat3 c;
    c(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    c(0, 1) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    c(0, 2) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    c(1, 0) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    c(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    c(1, 2) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    c(2, 0) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    c(2, 1) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    c(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return c;
}

void require_nonsingular(const Mat3& a, const char* op) {
    const double scale = norm(a);
    const double d = det(a);
    if (!(std::abs(d) > 1e-14 * scale * scale * scale)) {
        throw DomainError(std::string(op) + ": singular matrix (det = " + std::to_string(d) + ")");
    }
}

}  // namespace

Mat3 inverse(const Mat3& a) {
    require_nonsingular(a, "inverse");
    return transpose(cofactor_matrix(a)) * (1.0 / det(a));
}

Mat3 cof(const Mat3& a) {
    require_nonsingular(a, "cof");
    return cofactor_matrix(a);
}

Mat3 skew(const Mat3& a) { return 0.5 * (a - transpose(a)); }

Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return m;
}

// ---------------------------------------------------------------------------
// SymTensor3

SymTensor3 SymTensor3::sym(const Mat3& a) {
    return {a(0, 0), a(1, 1), a(2, 2), 0.5 * (a(0, 1) + a(1, 0)), 0.5 * (a(1, 2) + a(2, 1)),
            0.5 * (a(2, 0) + a(0, 2))};
}

double SymTensor3::operator()(int i, int j) const {
    if (i == j) return v_[static_cast<std::size_t>(i)];
    const int s = i + j;  // 1 -> 12, 3 -> 23, 2 -> 31
    return s == 1 ? v_[3] : (s == 3 ? v_[4] : v_[5]);
}

Mat3 SymTensor3::matrix() const {
    return Mat3({v_[0], v_[3], v_[5], v_[3], v_[1], v_[4], v_[5], v_[4], v_[2]});
}

bool SymTensor3::finite() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

SymTensor3& SymTensor3::operator+=(const SymTensor3& o) {
    for (std::size_t i = 0; i < 6; ++i) v_[i] += o.v_[i];
    return *this;
}

SymTensor3& SymTensor3::operator-=(const SymTensor3& o) {
    for (std::size_t i = 0; i < 6; ++i) v_[i] -= o.v_[i];
    return *this;
}

SymTensor3& SymTensor3::operator*=(double s) {
    for (auto& x : v_) x *= s;
    return *this;
}

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
SymTensor3 operator-(SymTensor3 a) { return a *= -1.0; }
SymTensor3 operator*(SymTensor3 a, double s) { return a *= s; }
SymTensor3 operator*(double s, SymTensor3 a) { return a *= s; }

double trace(const SymTensor3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

SymTensor3 dev(const SymTensor3& a) { return a - (trace(a) / 3.0) * SymTensor3::identity(); }

double inner(const SymTensor3& a, const SymTensor3& b) {
    const auto& x = a.entries();
    const auto& y = b.entries();
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + 2.0 * (x[3] * y[3] + x[4] * y[4] + x[5] * y[5]);
}

double norm(const SymTensor3& a) { return std::sqrt(inner(a, a)); }

double det(const SymTensor3& a) { return det(a.matrix()); }

SymTensor3 cof(const SymTensor3& a) { return SymTensor3::sym(cof(a.matrix())); }

SymTensor3 inverse(const SymTensor3& a) { return SymTensor3::sym(inverse(a.matrix())); }

SymTensor3 rotate(const SymTensor3& a, const Mat3& q) {
    return SymTensor3::sym(q * a.matrix() * transpose(q));
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

// Cyclic Jacobi sweeps on a 3x3 symmetric matrix. Converges quadratically and
// keeps full relative accuracy for clustered eigenvalues.
void jacobi3(double m[3][3], double v[3][3]) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i][j] = i == j ? 1.0 : 0.0;
    for (int sweep = 0; sweep < 50; ++sweep) {
        const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
        if (off == 0.0) return;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double apq = m[p][q];
                if (apq == 0.0) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p];
                    const double mkq = m[k][q];
                    m[k][p] = c * mkp - sn * mkq;
                    m[k][q] = sn * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k];
                    const double mqk = m[q][k];
                    m[p][k] = c * mpk - sn * mqk;
                    m[q][k] = sn * mpk + c * mqk;
                }
                m[p][q] = m[q][p] = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - sn * vkq;
                    v[k][q] = sn * vkp + c * vkq;
                }
            }
        }
        const double diag = m[0][0] * m[0][0] + m[1][1] * m[1][1] + m[2][2] * m[2][2];
        const double rest = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
        if (rest <= 1e-36 * diag) return;
    }
}

}  // namespace

EigenSystem3 eig_sym(const SymTensor3& a) {
    if (!a.finite()) throw InvalidInputError("eig_sym: non-finite tensor entry");

    const auto& e = a.entries();
    const double maxAbs = std::abs(*std::max_element(e.begin(), e.end(), [](double x, double y) {
        return std::abs(x) < std::abs(y);
    }));
    EigenSystem3 out;
    if (maxAbs == 0.0) return out;

    const SymTensor3 s = a * (1.0 / maxAbs);
    double m[3][3];
    double v[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = s(i, j);
    jacobi3(m, v);

    const Vec3 values{m[0][0], m[1][1], m[2][2]};
    std::array<Vec3, 3> vectors;
    for (std::size_t k = 0; k < 3; ++k) {
        const int c = static_cast<int>(k);
        vectors[k] = {v[0][c], v[1][c], v[2][c]};
    }

    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    for (std::size_t k = 0; k < 3; ++k) out.values[k] = values[order[k]] * maxAbs;
    out.frame = Mat3::from_columns(vectors[order[0]], vectors[order[1]], vectors[order[2]]);
    if (det(out.frame) < 0.0) {
        for (int i = 0; i < 3; ++i) out.frame(i, 2) = -out.frame(i, 2);
    }
    return out;
}

SymTensor3 from_spectral(const Vec3& values, const Mat3& frame) {
    Mat3 scaledFrame = frame;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scaledFrame(i, j) *= values[static_cast<std::size_t>(j)];
    return SymTensor3::sym(scaledFrame * transpose(frame));
}

SymTensor3 primary_fn(const SymTensor3& a, const std::function<double(double)>& f, Positivity positivity) {
    const EigenSystem3 es = eig_sym(a);
    if (positivity == Positivity::Required && !(es.values[2] > 0.0)) {
        throw DomainError("primary_fn: tensor is not positive definite (smallest eigenvalue " +
                          std::to_string(es.values[2]) + ")");
    }
    Vec3 mapped;
    for (std::size_t i = 0; i < 3; ++i) mapped[i] = f(es.values[i]);
    return from_spectral(mapped, es.frame);
}

SymTensor3 log_spd(const SymTensor3& a) {
    return primary_fn(a, [](double x) { return std::log(x); }, Positivity::Required);
}

SymTensor3 exp_sym(const SymTensor3& a) {
    return primary_fn(a, [](double x) { return std::exp(x); });
}

SymTensor3 sqrt_spd(const SymTensor3& a) {
    return primary_fn(a, [](double x) { return std::sqrt(x); }, Positivity::Required);
}

// ---------------------------------------------------------------------------
// Sym(3) <-> R^6

const Basis6& Basis6::orthonormal() {
    static const Basis6 basis(
        {SymTensor3(1, 0, 0, 0, 0, 0), SymTensor3(0, 1, 0, 0, 0, 0), SymTensor3(0, 0, 1, 0, 0, 0),
         SymTensor3(0, 0, 0, std::numbers::sqrt2 / 2, 0, 0), SymTensor3(0, 0, 0, 0, std::numbers::sqrt2 / 2, 0),
         SymTensor3(0, 0, 0, 0, 0, std::numbers::sqrt2 / 2)},
        true);
    return basis;
}

const Basis6& Basis6::voigt() {
    static const Basis6 basis({SymTensor3(1, 0, 0, 0, 0, 0), SymTensor3(0, 1, 0, 0, 0, 0),
                               SymTensor3(0, 0, 1, 0, 0, 0), SymTensor3(0, 0, 0, 1, 0, 0),
                               SymTensor3(0, 0, 0, 0, 1, 0), SymTensor3(0, 0, 0, 0, 0, 1)},
                              false);
    return basis;
}

// Both shipped bases are orthogonal, so coordinates are <A,E_k>/<E_k,E_k>.
Vec6 vec6(const SymTensor3& a, const Basis6& basis) {
    Vec6 v;
    for (std::size_t k = 0; k < 6; ++k) v[k] = inner(a, basis[k]) / inner(basis[k], basis[k]);
    return v;
}

SymTensor3 unvec6(const Vec6& v, const Basis6& basis) {
    SymTensor3 a;
    for (std::size_t k = 0; k < 6; ++k) a += v[k] * basis[k];
    return a;
}

}  // namespace corostab
