#include "corostab/rates.hpp"

#include <algorithm>
#include <cmath>

#include "corostab/error.hpp"
#include "corostab/numeric.hpp"

namespace corostab {

namespace {

constexpr double kTimeStep = 1e-6;
constexpr double kClosureStep = 1e-3;
constexpr double kEnergyStep = 1e-3;

Vec3 componentwise(const std::function<double(std::size_t)>& f) { return {f(0), f(1), f(2)}; }

std::optional<double> pressure_at(const MaterialModel& model, const StretchPath& path, double t) {
    if (!model.incompressible()) {
        return std::nullopt;
    }
    if (!path.pressure) {
        throw UsageError("incompressible model '" + std::string(to_string(model.kind())) +
                         "' needs a pressure along the path");
    }
    return path.pressure(t);
}

void require_compressible(const MaterialModel& model, const char* op) {
    if (model.incompressible()) {
        throw UsageError(std::string(op) + ": model '" + std::string(to_string(model.kind())) +
                         "' is incompressible; the pressure is not determined by F");
    }
}

Mat3 unit(int a) {
    Mat3 e;
    e(a / 3, a % 3) = 1.0;
    return e;
}

}  // namespace

StretchPath exponential_path(const Vec3& l0, const Vec3& r) {
    StretchPath p;
    p.stretch = [=](double t) { return componentwise([&](std::size_t i) { return l0[i] * std::exp(r[i] * t); }); };
    p.rate = [=](double t) {
        return componentwise([&](std::size_t i) { return r[i] * l0[i] * std::exp(r[i] * t); });
    };
    p.accel = [=](double t) {
        return componentwise([&](std::size_t i) { return r[i] * r[i] * l0[i] * std::exp(r[i] * t); });
    };
    return p;
}

StretchPath linear_path(const Vec3& l0, const Vec3& c) {
    StretchPath p;
    p.stretch = [=](double t) { return componentwise([&](std::size_t i) { return l0[i] + c[i] * t; }); };
    p.rate = [=](double) { return c; };
    p.accel = [](double) { return Vec3{0.0, 0.0, 0.0}; };
    return p;
}

StretchPath closure_path(const MaterialModel& model, const Protocol& protocol, double a, double b) {
    // The closure is evaluated afresh at every time; the model is captured by value.
    const auto solve = [model, protocol, a, b](double t) { return lateral_closure(model, protocol, a + b * t); };
    const auto stretch = [solve](double t) { return solve(t).state.stretches(); };
    StretchPath p;
    p.stretch = stretch;
    p.rate = [stretch](double t) {
        return componentwise([&](std::size_t i) {
            return numeric::central5_richardson([&](double s) { return stretch(s)[i]; }, t, kClosureStep);
        });
    };
    p.accel = [stretch](double t) {
        return componentwise([&](std::size_t i) {
            return numeric::second5([&](double s) { return stretch(s)[i]; }, t, kClosureStep);
        });
    };
    if (model.incompressible()) {
        p.pressure = [solve](double t) { return *solve(t).pressure; };
    }
    return p;
}

MotionSample::MotionSample(const Mat3& f, const Mat3& fdot, const Mat3& fddot) : f_(f), fdot_(fdot), fddot_(fddot) {
    if (!(det(f) > 0.0)) {
        throw DomainError("MotionSample: det F must be positive");
    }
    l_ = fdot_ * inverse(f_);
}

SymTensor3 MotionSample::Ddot() const { return SymTensor3::sym(fddot_ * inverse(f_) - l_ * l_); }

MotionSample motion_from_stretch_path(const StretchPath& path, double t) {
    const Vec3 l = path.stretch(t);
    for (double x : l) {
        if (!(x > 0.0)) {
            throw DomainError("motion_from_stretch_path: non-positive stretch");
        }
    }
    return {Mat3::diag(l), Mat3::diag(path.rate(t)), Mat3::diag(path.accel(t))};
}

SpinChoice SpinChoice::custom(const Mat3& omega) {
    if (norm(omega + transpose(omega)) > 1e-12 * std::max(1.0, norm(omega))) {
        throw UsageError("SpinChoice: custom spin tensor is not skew-symmetric");
    }
    return SpinChoice(Kind::Custom, omega);
}

Mat3 SpinChoice::omega(const Mat3& l) const {
    switch (kind_) {
        case Kind::Material: return Mat3::zero();
        case Kind::ZarembaJaumann: return skew(l);
        case Kind::Custom: break;
    }
    return omega_;
}

SymTensor3 corotational_rate(const SymTensor3& sigmaDot, const SymTensor3& sigma, const SpinChoice& spin,
                             const Mat3& l, bool biezenoHencky) {
    const Mat3 omega = spin.omega(l);
    const Mat3 s = sigma.matrix();
    SymTensor3 rate = sigmaDot + SymTensor3::sym(s * omega - omega * s);
    if (biezenoHencky) {
        rate += sigma * trace(l);
    }
    return rate;
}

RateForm csp_rate_form(const MaterialModel& model, const StretchPath& path, double t) {
    const auto sigma = [&](double s) {
        return SymTensor3::diag(
            principal_stresses(model, StretchState(path.stretch(s)), pressure_at(model, path, s)).cauchy);
    };
    const double h = kTimeStep * std::max(1.0, std::abs(t));
    const MotionSample motion = motion_from_stretch_path(path, t);

    RateForm r;
    r.lhs = inner(numeric::central2_richardson(sigma, t, h), motion.D());

    const StretchState state(path.stretch(t));
    const Vec3 rate = path.rate(t);
    const auto tangent = cauchy_stretch_tangent(model, state);
    const double pdot = model.incompressible()
                            ? numeric::central2_richardson([&](double s) { return *pressure_at(model, path, s); }, t, h)
                            : 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        double dsigma = -pdot;
        for (std::size_t j = 0; j < 3; ++j) {
            dsigma += tangent[i][j] * rate[j];
        }
        r.rhs += dsigma * rate[i] / state[i];
    }
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

SymTensor3 cauchy_of_F(const MaterialModel& model, const Mat3& f) {
    require_compressible(model, "cauchy_of_F");
    return cauchy_from_B(model, SymTensor3::sym(f * transpose(f)));
}

Mat3 first_piola_fd(const MaterialModel& model, const Mat3& f) {
    const double h = kEnergyStep * std::max(1.0, norm(f) / std::sqrt(3.0));
    Mat3 s1;
    for (int a = 0; a < 9; ++a) {
        const Mat3 e = unit(a);
        s1(a / 3, a % 3) = numeric::central5_richardson([&](double s) { return energy_of_F(model, f + s * e); }, 0.0, h);
    }
    return s1;
}

PowerIdentity internal_power(const MaterialModel& model, const MotionSample& motion) {
    require_compressible(model, "internal_power");
    PowerIdentity p;
    p.referential = inner(first_piola_fd(model, motion.F()), motion.Fdot());
    p.spatial = motion.J() * inner(cauchy_of_F(model, motion.F()), motion.D());
    return p;
}

SecondOrderWork second_order_work_identity(const MaterialModel& model, const MotionSample& motion) {
    require_compressible(model, "second_order_work_identity");
    const Mat3& f = motion.F();
    const Mat3& fd = motion.Fdot();
    const Mat3& fdd = motion.Fddot();
    const double speed = std::max({norm(fd), std::sqrt(norm(fdd)), 1e-300});
    const double h = kEnergyStep * std::max(1.0, norm(f) / std::sqrt(3.0)) / std::max(1.0, speed);
    const auto path = [&](double s) { return f + s * fd + (0.5 * s * s) * fdd; };

    SecondOrderWork w;
    const double curvature =
        numeric::second5([&](double s) { return energy_of_F(model, f + s * fd); }, 0.0, h);
    w.referential = curvature + inner(first_piola_fd(model, f), fdd);

    const SymTensor3 sigma = cauchy_of_F(model, f);
    const SymTensor3 sigmaDot = numeric::central5([&](double s) { return cauchy_of_F(model, path(s)); }, 0.0, h);
    const SymTensor3 d = motion.D();
    w.spatial = motion.J() * (inner(sigmaDot, d) + inner(sigma, motion.Ddot()) + inner(sigma, d) * trace(d));

    w.direct = numeric::second5([&](double s) { return energy_of_F(model, path(s)); }, 0.0, h);
    w.residual = std::abs(w.referential - w.spatial);
    return w;
}

}  // namespace corostab
