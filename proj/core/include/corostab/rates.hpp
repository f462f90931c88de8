#pragma once

// Homogeneous motions F(t), corotational stress rates, and the rate
// identities behind the stability postulate: the principal-stress sum
// formula for diagonal motions, the internal power identity and the
// second-order work identity.

#include <functional>
#include <optional>

#include "corostab/materials.hpp"
#include "corostab/protocols.hpp"

namespace corostab {

/// Three principal stretches as functions of time with two derivatives.
struct StretchPath {
    std::function<Vec3(double)> stretch;
    std::function<Vec3(double)> rate;
    std::function<Vec3(double)> accel;
    /// Pressure along the path; required for incompressible models.
    std::function<double(double)> pressure;
};

/// l_i(t) = l0_i exp(r_i t)
StretchPath exponential_path(const Vec3& l0, const Vec3& r);
/// l_i(t) = l0_i + c_i t
StretchPath linear_path(const Vec3& l0, const Vec3& c);
/// Protocol closure along lambda1(t) = a + b t. Lateral stretches (and the
/// pressure for incompressible models) come from lateral_closure; their time
/// derivatives from finite differences of the closure.
StretchPath closure_path(const MaterialModel& model, const Protocol& protocol, double a, double b);

/// Homogeneous motion snapshot. Requires det F > 0 (DomainError otherwise).
class MotionSample {
public:
    MotionSample(const Mat3& f, const Mat3& fdot, const Mat3& fddot);

    [[nodiscard]] const Mat3& F() const { return f_; }
    [[nodiscard]] const Mat3& Fdot() const { return fdot_; }
    [[nodiscard]] const Mat3& Fddot() const { return fddot_; }
    /// Fdot F^{-1}
    [[nodiscard]] const Mat3& L() const { return l_; }
    [[nodiscard]] SymTensor3 D() const { return SymTensor3::sym(l_); }
    [[nodiscard]] Mat3 spin() const { return skew(l_); }
    [[nodiscard]] double J() const { return det(f_); }
    /// sym(Fddot F^{-1} - L^2)
    [[nodiscard]] SymTensor3 Ddot() const;

private:
    Mat3 f_;
    Mat3 fdot_;
    Mat3 fddot_;
    Mat3 l_;
};

/// Diagonal F, Fdot, Fddot at time t. DomainError for a non-positive stretch.
MotionSample motion_from_stretch_path(const StretchPath& path, double t);

class SpinChoice {
public:
    enum class Kind { Material, ZarembaJaumann, Custom };

    static SpinChoice material() { return SpinChoice(Kind::Material, Mat3::zero()); }
    static SpinChoice zaremba_jaumann() { return SpinChoice(Kind::ZarembaJaumann, Mat3::zero()); }
    /// Throws UsageError unless omega is skew to 1e-12 (relative to max(1, |omega|)).
    static SpinChoice custom(const Mat3& omega);

    [[nodiscard]] Kind kind() const { return kind_; }
    /// The spin tensor for a given velocity gradient.
    [[nodiscard]] Mat3 omega(const Mat3& l) const;

private:
    SpinChoice(Kind kind, const Mat3& omega) : kind_(kind), omega_(omega) {}

    Kind kind_;
    Mat3 omega_;
};

/// sigma_dot + sigma Omega - Omega sigma (+ sigma tr D for the Biezeno-Hencky rate).
SymTensor3 corotational_rate(const SymTensor3& sigmaDot, const SymTensor3& sigma, const SpinChoice& spin,
                             const Mat3& l, bool biezenoHencky = false);

struct RateForm {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// lhs = <sigma_dot, D> with sigma_dot from time differences along the path;
/// rhs = sum_i d_t[sigma_i] ldot_i / l_i through d sigma_i / d l_j.
RateForm csp_rate_form(const MaterialModel& model, const StretchPath& path, double t);

/// Cauchy stress of the motion's current state (compressible models).
SymTensor3 cauchy_of_F(const MaterialModel& model, const Mat3& f);

/// S1 = D_F W(F) by five-point differences (one Richardson level) in the nine matrix directions.
Mat3 first_piola_fd(const MaterialModel& model, const Mat3& f);

struct PowerIdentity {
    double referential = 0.0;  ///< <S1, Fdot>
    double spatial = 0.0;      ///< J <sigma, D>
};

/// Compressible models only.
PowerIdentity internal_power(const MaterialModel& model, const MotionSample& motion);

struct SecondOrderWork {
    double referential = 0.0;  ///< D^2 W(F).(Fdot, Fdot) + <S1, Fddot>
    double spatial = 0.0;      ///< J (<sigma_dot, D> + <sigma, Ddot> + <sigma, D> tr D)
    double direct = 0.0;       ///< d^2/dt^2 W(F + t Fdot + t^2/2 Fddot) at 0
    double residual = 0.0;     ///< |referential - spatial|
};

/// Compressible models only (UsageError otherwise).
SecondOrderWork second_order_work_identity(const MaterialModel& model, const MotionSample& motion);

}  // namespace corostab
