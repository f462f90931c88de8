#pragma once

// Isotropic hyperelastic energies written in principal stretches,
// W(F) = g(l1, l2, l3) = g^(log l1, log l2, log l3), and the principal
// Cauchy, Kirchhoff and Biot stresses they induce.

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "corostab/tensor3.hpp"

namespace corostab {

enum class ModelKind {
    ExpHencky,
    QuadraticHencky,
    NeoHookeVolIso,
    NeoHookeIncompressible,
    ExpHenckyIncompressible,
    QuadraticHenckyIncompressible,
};

inline constexpr std::array<ModelKind, 6> kAllModelKinds{
    ModelKind::ExpHencky,
    ModelKind::QuadraticHencky,
    ModelKind::NeoHookeVolIso,
    ModelKind::NeoHookeIncompressible,
    ModelKind::ExpHenckyIncompressible,
    ModelKind::QuadraticHenckyIncompressible,
};

std::string_view to_string(ModelKind kind);
/// Throws ConfigError for unknown names.
ModelKind parse_model_kind(std::string_view name);
bool is_incompressible(ModelKind kind);

/// Linearized isotropic constants. Incompressible materials carry
/// lambda = +inf, nu = 1/2, E = 3 mu.
class ElasticConstants {
public:
    /// Requires mu > 0 and 2 mu + 3 lambda > 0.
    static ElasticConstants from_lame(double mu, double lambda);
    /// Requires E > 0 and -1 < nu < 1/2.
    static ElasticConstants from_young_poisson(double young, double poisson);
    static ElasticConstants incompressible(double mu);

    [[nodiscard]] double mu() const { return mu_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double young() const;
    [[nodiscard]] double poisson() const;
    /// (2 mu + 3 lambda) / 3
    [[nodiscard]] double bulk() const;
    [[nodiscard]] bool incompressible() const { return !std::isfinite(lambda_); }

private:
    ElasticConstants(double mu, double lambda) : mu_(mu), lambda_(lambda) {}

    double mu_;
    double lambda_;
};

/// Energy of one catalog model in log-stretch coordinates eps_i = log l_i.
/// Incompressible kernels are the pressure-free part of the energy.
class PrincipalEnergy {
public:
    virtual ~PrincipalEnergy() = default;
    /// g^(eps), shifted so that g^(0) = 0.
    [[nodiscard]] virtual double energy(const Vec3& eps) const = 0;
    /// tau_i = d g^ / d eps_i
    [[nodiscard]] virtual Vec3 kirchhoff(const Vec3& eps) const = 0;
    /// d tau_i / d eps_j (symmetric)
    [[nodiscard]] virtual std::array<Vec3, 3> kirchhoff_tangent(const Vec3& eps) const = 0;
};

using ParameterMap = std::map<std::string, double, std::less<>>;

class MaterialModel {
public:
    [[nodiscard]] ModelKind kind() const { return kind_; }
    [[nodiscard]] const ElasticConstants& constants() const { return constants_; }
    [[nodiscard]] bool incompressible() const { return is_incompressible(kind_); }
    [[nodiscard]] const ParameterMap& parameters() const { return parameters_; }
    [[nodiscard]] const PrincipalEnergy& energy() const { return *energy_; }

private:
    friend MaterialModel instantiate_model(ModelKind kind, const ParameterMap& parameters);

    MaterialModel(ModelKind kind, ElasticConstants constants, ParameterMap parameters,
                  std::shared_ptr<const PrincipalEnergy> energy)
        : kind_(kind), constants_(constants), parameters_(std::move(parameters)), energy_(std::move(energy)) {}

    ModelKind kind_;
    ElasticConstants constants_;
    ParameterMap parameters_;
    std::shared_ptr<const PrincipalEnergy> energy_;
};

/// Builds and validates a model. Recognized keys: mu, lambda, E, nu, k, khat,
/// kappa. The elastic pair is given either as (mu, lambda) or as (E, nu),
/// never mixed; incompressible kinds take mu (or E). Neo-Hooke vol-iso also
/// accepts (mu, kappa). Violations throw ConfigError naming the constraint.
MaterialModel instantiate_model(ModelKind kind, const ParameterMap& parameters);

/// Principal stretches of a diagonal deformation.
class StretchState {
public:
    StretchState(double l1, double l2, double l3);
    explicit StretchState(const Vec3& stretches) : StretchState(stretches[0], stretches[1], stretches[2]) {}

    [[nodiscard]] const Vec3& stretches() const { return l_; }
    [[nodiscard]] double operator[](std::size_t i) const { return l_[i]; }
    [[nodiscard]] double J() const { return l_[0] * l_[1] * l_[2]; }
    [[nodiscard]] Vec3 log_stretches() const;
    [[nodiscard]] Mat3 F() const { return Mat3::diag(l_); }

private:
    Vec3 l_;
};

struct EnergyDerivatives {
    double energy = 0.0;
    Vec3 gradient{};                 ///< dg/dl_i
    std::array<Vec3, 3> hessian{};   ///< d2g/dl_i dl_j, symmetrized
};

EnergyDerivatives energy_and_derivatives(const MaterialModel& model, const StretchState& s);

struct StressState {
    Vec3 cauchy{};
    Vec3 kirchhoff{};
    Vec3 biot{};
    std::optional<double> pressure;
    double energy = 0.0;
};

/// Compressible: tau_i = l_i dg/dl_i, sigma_i = tau_i / J, T^i = dg/dl_i.
/// Incompressible: sigma_i = tau_i = -p + l_i dg/dl_i, T^i = l_j l_k sigma_i.
/// The pressure must be given exactly when the model is incompressible
/// (UsageError otherwise).
StressState principal_stresses(const MaterialModel& model, const StretchState& s,
                               std::optional<double> pressure = std::nullopt);

/// d sigma_i / d l_j at fixed pressure.
std::array<Vec3, 3> cauchy_stretch_tangent(const MaterialModel& model, const StretchState& s);

/// Cauchy stress for a left Cauchy-Green tensor via the spectral route.
/// Throws DomainError when B is not SPD.
SymTensor3 cauchy_from_B(const MaterialModel& model, const SymTensor3& b,
                         std::optional<double> pressure = std::nullopt);

/// mu (det B)^{-5/6} dev B + kappa (sqrt(det B) - 1) I; Neo-Hooke vol-iso only.
SymTensor3 neo_hooke_cauchy_closed_form(const MaterialModel& model, const SymTensor3& b);

/// Stress as a function of the Hencky strain log V (pressure-free part for
/// incompressible models, where Cauchy and Kirchhoff coincide).
SymTensor3 kirchhoff_hat(const MaterialModel& model, const SymTensor3& logV);
SymTensor3 cauchy_hat(const MaterialModel& model, const SymTensor3& logV);

/// W(F) for a general deformation gradient, through the singular values of F.
double energy_of_F(const MaterialModel& model, const Mat3& f);

}  // namespace corostab
