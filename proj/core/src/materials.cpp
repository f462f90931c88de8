#include "corostab/materials.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "corostab/error.hpp"
#include "corostab/format.hpp"

namespace corostab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sum(const Vec3& v) { return v[0] + v[1] + v[2]; }
double sum_sq(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

// ---------------------------------------------------------------------------
// Catalog kernels

class ExpHenckyEnergy final : public PrincipalEnergy {
public:
    ExpHenckyEnergy(double mu, double lambda, double k, double khat) : mu_(mu), lambda_(lambda), k_(k), khat_(khat) {}

    double energy(const Vec3& eps) const override {
        const double theta = sum(eps);
        return mu_ / k_ * std::expm1(k_ * sum_sq(eps)) + lambda_ / (2.0 * khat_) * std::expm1(khat_ * theta * theta);
    }

    Vec3 kirchhoff(const Vec3& eps) const override {
        const double theta = sum(eps);
        const double dev = 2.0 * mu_ * std::exp(k_ * sum_sq(eps));
        const double vol = lambda_ * std::exp(khat_ * theta * theta) * theta;
        return {dev * eps[0] + vol, dev * eps[1] + vol, dev * eps[2] + vol};
    }

    std::array<Vec3, 3> kirchhoff_tangent(const Vec3& eps) const override {
        const double theta = sum(eps);
        const double dev = 2.0 * mu_ * std::exp(k_ * sum_sq(eps));
        const double vol = lambda_ * std::exp(khat_ * theta * theta) * (1.0 + 2.0 * khat_ * theta * theta);
        std::array<Vec3, 3> t{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                t[i][j] = dev * ((i == j ? 1.0 : 0.0) + 2.0 * k_ * eps[i] * eps[j]) + vol;
        return t;
    }

private:
    double mu_, lambda_, k_, khat_;
};

class QuadraticHenckyEnergy final : public PrincipalEnergy {
public:
    QuadraticHenckyEnergy(double mu, double lambda) : mu_(mu), lambda_(lambda) {}

    double energy(const Vec3& eps) const override {
        const double theta = sum(eps);
        return mu_ * sum_sq(eps) + 0.5 * lambda_ * theta * theta;
    }

    Vec3 kirchhoff(const Vec3& eps) const override {
        const double vol = lambda_ * sum(eps);
        return {2.0 * mu_ * eps[0] + vol, 2.0 * mu_ * eps[1] + vol, 2.0 * mu_ * eps[2] + vol};
    }

    std::array<Vec3, 3> kirchhoff_tangent(const Vec3&) const override {
        std::array<Vec3, 3> t{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t[i][j] = (i == j ? 2.0 * mu_ : 0.0) + lambda_;
        return t;
    }

private:
    double mu_, lambda_;
};

// W = mu/2 (||F||^2 / J^{2/3} - 3) + kappa/2 (J - 1)^2
class NeoHookeVolIsoEnergy final : public PrincipalEnergy {
public:
    NeoHookeVolIsoEnergy(double mu, double kappa) : mu_(mu), kappa_(kappa) {}

    double energy(const Vec3& eps) const override {
        const double j = std::exp(sum(eps));
        const double i1 = sum(squares(eps));
        return 0.5 * mu_ * (std::pow(j, -2.0 / 3.0) * i1 - 3.0) + 0.5 * kappa_ * (j - 1.0) * (j - 1.0);
    }

    Vec3 kirchhoff(const Vec3& eps) const override {
        const double j = std::exp(sum(eps));
        const Vec3 l2 = squares(eps);
        const double i1 = sum(l2);
        const double iso = mu_ * std::pow(j, -2.0 / 3.0);
        const double vol = kappa_ * j * (j - 1.0);
        return {iso * (l2[0] - i1 / 3.0) + vol, iso * (l2[1] - i1 / 3.0) + vol, iso * (l2[2] - i1 / 3.0) + vol};
    }

    std::array<Vec3, 3> kirchhoff_tangent(const Vec3& eps) const override {
        const double j = std::exp(sum(eps));
        const Vec3 l2 = squares(eps);
        const double i1 = sum(l2);
        const double iso = mu_ * std::pow(j, -2.0 / 3.0);
        const double vol = kappa_ * (2.0 * j * j - j);
        std::array<Vec3, 3> t{};
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                t[a][b] = iso * (-2.0 / 3.0 * (l2[a] - i1 / 3.0) + (a == b ? 2.0 * l2[a] : 0.0) - 2.0 / 3.0 * l2[b]) +
                          vol;
        return t;
    }

private:
    static Vec3 squares(const Vec3& eps) {
        return {std::exp(2.0 * eps[0]), std::exp(2.0 * eps[1]), std::exp(2.0 * eps[2])};
    }

    double mu_, kappa_;
};

// Pressure-free parts of the incompressible models.
class NeoHookeIncompressibleEnergy final : public PrincipalEnergy {
public:
    explicit NeoHookeIncompressibleEnergy(double mu) : mu_(mu) {}

    double energy(const Vec3& eps) const override {
        return 0.5 * mu_ * (std::expm1(2.0 * eps[0]) + std::expm1(2.0 * eps[1]) + std::expm1(2.0 * eps[2]));
    }

    Vec3 kirchhoff(const Vec3& eps) const override {
        return {mu_ * std::exp(2.0 * eps[0]), mu_ * std::exp(2.0 * eps[1]), mu_ * std::exp(2.0 * eps[2])};
    }

    std::array<Vec3, 3> kirchhoff_tangent(const Vec3& eps) const override {
        std::array<Vec3, 3> t{};
        for (std::size_t i = 0; i < 3; ++i) t[i][i] = 2.0 * mu_ * std::exp(2.0 * eps[i]);
        return t;
    }

private:
    double mu_;
};

class ExpHenckyIncompressibleEnergy final : public PrincipalEnergy {
public:
    ExpHenckyIncompressibleEnergy(double mu, double k) : mu_(mu), k_(k) {}

    double energy(const Vec3& eps) const override { return mu_ / k_ * std::expm1(k_ * sum_sq(eps)); }

    Vec3 kirchhoff(const Vec3& eps) const override {
        const double dev = 2.0 * mu_ * std::exp(k_ * sum_sq(eps));
        return {dev * eps[0], dev * eps[1], dev * eps[2]};
    }

    std::array<Vec3, 3> kirchhoff_tangent(const Vec3& eps) const override {
        const double dev = 2.0 * mu_ * std::exp(k_ * sum_sq(eps));
        std::array<Vec3, 3> t{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t[i][j] = dev * ((i == j ? 1.0 : 0.0) + 2.0 * k_ * eps[i] * eps[j]);
        return t;
    }

private:
    double mu_, k_;
};

class QuadraticHenckyIncompressibleEnergy final : public PrincipalEnergy {
public:
    explicit QuadraticHenckyIncompressibleEnergy(double mu) : mu_(mu) {}

    double energy(const Vec3& eps) const override { return mu_ * sum_sq(eps); }

    Vec3 kirchhoff(const Vec3& eps) const override {
        return {2.0 * mu_ * eps[0], 2.0 * mu_ * eps[1], 2.0 * mu_ * eps[2]};
    }

    std::array<Vec3, 3> kirchhoff_tangent(const Vec3&) const override {
        std::array<Vec3, 3> t{};
        for (std::size_t i = 0; i < 3; ++i) t[i][i] = 2.0 * mu_;
        return t;
    }

private:
    double mu_;
};

// ---------------------------------------------------------------------------
// Parameter handling

class ParameterReader {
public:
    ParameterReader(ModelKind kind, const ParameterMap& p) : kind_(kind), p_(p) {}

    bool has(std::string_view key) const { return p_.find(key) != p_.end(); }

    double get(std::string_view key) {
        const auto it = p_.find(key);
        if (it == p_.end()) fail("missing parameter '" + std::string(key) + "'");
        if (!std::isfinite(it->second)) fail("parameter '" + std::string(key) + "' is not finite");
        used_.insert(std::string(key));
        return it->second;
    }

    double positive(std::string_view key) {
        const double v = get(key);
        if (!(v > 0.0)) fail("constraint " + std::string(key) + " > 0 violated (" + std::string(key) + " = " + format_number(v) + ")");
        return v;
    }

    void reject_unused() const {
        for (const auto& [key, value] : p_) {
            if (!used_.contains(key)) fail("unexpected parameter '" + key + "'");
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(std::string(to_string(kind_)) + ": " + what);
    }

private:
    ModelKind kind_;
    const ParameterMap& p_;
    std::set<std::string, std::less<>> used_;
};

ElasticConstants read_compressible_pair(ParameterReader& r) {
    const bool lame = r.has("mu") || r.has("lambda");
    const bool engineering = r.has("E") || r.has("nu");
    if (lame && engineering) r.fail("elastic constants must be given as (mu, lambda) or (E, nu), not a mix");
    try {
        if (engineering) {
            const double e = r.get("E");
            const double nu = r.get("nu");
            return ElasticConstants::from_young_poisson(e, nu);
        }
        const double mu = r.get("mu");
        const double lambda = r.get("lambda");
        return ElasticConstants::from_lame(mu, lambda);
    } catch (const ConfigError& e) {
        r.fail(e.what());
    }
}

ElasticConstants read_incompressible(ParameterReader& r) {
    if (r.has("lambda") || r.has("kappa")) r.fail("incompressible models take no volumetric parameter");
    if (r.has("mu") && r.has("E")) r.fail("give either mu or E, not both");
    if (r.has("E")) {
        const double e = r.positive("E");
        if (r.has("nu") && r.get("nu") != 0.5) r.fail("incompressible models require nu = 0.5");
        return ElasticConstants::incompressible(e / 3.0);
    }
    if (r.has("nu") && r.get("nu") != 0.5) r.fail("incompressible models require nu = 0.5");
    return ElasticConstants::incompressible(r.positive("mu"));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::ExpHencky: return "exp_hencky";
        case ModelKind::QuadraticHencky: return "quadratic_hencky";
        case ModelKind::NeoHookeVolIso: return "neo_hooke_vol_iso";
        case ModelKind::NeoHookeIncompressible: return "neo_hooke_incompressible";
        case ModelKind::ExpHenckyIncompressible: return "exp_hencky_incompressible";
        case ModelKind::QuadraticHenckyIncompressible: return "quadratic_hencky_incompressible";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    for (const ModelKind kind : kAllModelKinds) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

bool is_incompressible(ModelKind kind) {
    return kind == ModelKind::NeoHookeIncompressible || kind == ModelKind::ExpHenckyIncompressible ||
           kind == ModelKind::QuadraticHenckyIncompressible;
}

ElasticConstants ElasticConstants::from_lame(double mu, double lambda) {
    if (!(mu > 0.0)) throw ConfigError("constraint mu > 0 violated (mu = " + format_number(mu) + ")");
    if (!(2.0 * mu + 3.0 * lambda > 0.0))
        throw ConfigError("constraint 2 mu + 3 lambda > 0 violated (lambda = " + format_number(lambda) + ")");
    return {mu, lambda};
}

ElasticConstants ElasticConstants::from_young_poisson(double young, double poisson) {
    if (!(young > 0.0)) throw ConfigError("constraint E > 0 violated (E = " + format_number(young) + ")");
    if (!(poisson > -1.0 && poisson < 0.5))
        throw ConfigError("constraint -1 < nu < 1/2 violated (nu = " + format_number(poisson) + ")");
    const double mu = young / (2.0 * (1.0 + poisson));
    const double lambda = young * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
    return {mu, lambda};
}

ElasticConstants ElasticConstants::incompressible(double mu) {
    if (!(mu > 0.0)) throw ConfigError("constraint mu > 0 violated (mu = " + format_number(mu) + ")");
    return {mu, kInf};
}

double ElasticConstants::young() const {
    if (incompressible()) return 3.0 * mu_;
    return mu_ * (2.0 * mu_ + 3.0 * lambda_) / (mu_ + lambda_);
}

double ElasticConstants::poisson() const {
    if (incompressible()) return 0.5;
    return lambda_ / (2.0 * (lambda_ + mu_));
}

double ElasticConstants::bulk() const {
    if (incompressible()) return kInf;
    return (2.0 * mu_ + 3.0 * lambda_) / 3.0;
}

MaterialModel instantiate_model(ModelKind kind, const ParameterMap& parameters) {
    ParameterReader r(kind, parameters);
    std::shared_ptr<const PrincipalEnergy> energy;
    std::optional<ElasticConstants> constants;

    switch (kind) {
        case ModelKind::ExpHencky: {
            constants = read_compressible_pair(r);
            const double k = r.positive("k");
            const double khat = r.positive("khat");
            energy = std::make_shared<ExpHenckyEnergy>(constants->mu(), constants->lambda(), k, khat);
            break;
        }
        case ModelKind::QuadraticHencky:
            constants = read_compressible_pair(r);
            energy = std::make_shared<QuadraticHenckyEnergy>(constants->mu(), constants->lambda());
            break;
        case ModelKind::NeoHookeVolIso: {
            if (r.has("kappa")) {
                if (r.has("lambda") || r.has("E") || r.has("nu")) {
                    r.fail("give kappa together with mu only");
                }
                const double mu = r.positive("mu");
                const double kappa = r.positive("kappa");
                constants = ElasticConstants::from_lame(mu, kappa - 2.0 * mu / 3.0);
            } else {
                constants = read_compressible_pair(r);
            }
            energy = std::make_shared<NeoHookeVolIsoEnergy>(constants->mu(), constants->bulk());
            break;
        }
        case ModelKind::NeoHookeIncompressible:
            constants = read_incompressible(r);
            energy = std::make_shared<NeoHookeIncompressibleEnergy>(constants->mu());
            break;
        case ModelKind::ExpHenckyIncompressible: {
            constants = read_incompressible(r);
            const double k = r.positive("k");
            energy = std::make_shared<ExpHenckyIncompressibleEnergy>(constants->mu(), k);
            break;
        }
        case ModelKind::QuadraticHenckyIncompressible:
            constants = read_incompressible(r);
            energy = std::make_shared<QuadraticHenckyIncompressibleEnergy>(constants->mu());
            break;
    }
    r.reject_unused();
    return MaterialModel(kind, *constants, parameters, std::move(energy));
}

// ---------------------------------------------------------------------------

StretchState::StretchState(double l1, double l2, double l3) : l_{l1, l2, l3} {
    for (const double l : l_) {
        if (!std::isfinite(l) || !(l > 0.0)) {
            throw DomainError("principal stretches must be positive and finite (got " + format_number(l) + ")");
        }
    }
}

Vec3 StretchState::log_stretches() const { return {std::log(l_[0]), std::log(l_[1]), std::log(l_[2])}; }

EnergyDerivatives energy_and_derivatives(const MaterialModel& model, const StretchState& s) {
    const Vec3 eps = s.log_stretches();
    const PrincipalEnergy& g = model.energy();
    const Vec3 tau = g.kirchhoff(eps);
    const auto dtau = g.kirchhoff_tangent(eps);

    EnergyDerivatives out;
    out.energy = g.energy(eps);
    for (std::size_t i = 0; i < 3; ++i) out.gradient[i] = tau[i] / s[i];
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const double sym = 0.5 * (dtau[i][j] + dtau[j][i]);
            out.hessian[i][j] = sym / (s[i] * s[j]) - (i == j ? tau[i] / (s[i] * s[i]) : 0.0);
        }
    }
    return out;
}

StressState principal_stresses(const MaterialModel& model, const StretchState& s, std::optional<double> pressure) {
    if (model.incompressible() && !pressure) {
        throw UsageError("principal_stresses: incompressible model requires a pressure");
    }
    if (!model.incompressible() && pressure) {
        throw UsageError("principal_stresses: pressure given for a compressible model");
    }
    const Vec3 eps = s.log_stretches();
    const Vec3 tauHat = model.energy().kirchhoff(eps);

    StressState out;
    out.energy = model.energy().energy(eps);
    out.pressure = pressure;
    const double j = s.J();
    for (std::size_t i = 0; i < 3; ++i) {
        if (pressure) {
            out.cauchy[i] = -*pressure + tauHat[i];
            out.kirchhoff[i] = out.cauchy[i];
        } else {
            out.kirchhoff[i] = tauHat[i];
            out.cauchy[i] = tauHat[i] / j;
        }
        out.biot[i] = out.cauchy[i] * s[(i + 1) % 3] * s[(i + 2) % 3];
    }
    return out;
}

std::array<Vec3, 3> cauchy_stretch_tangent(const MaterialModel& model, const StretchState& s) {
    const Vec3 eps = s.log_stretches();
    const Vec3 tau = model.energy().kirchhoff(eps);
    const auto dtau = model.energy().kirchhoff_tangent(eps);
    const double j = model.incompressible() ? 1.0 : s.J();
    std::array<Vec3, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            // d(tau_i / J)/d l_k = (dtau_i/deps_k - tau_i) / (J l_k); J is frozen at 1 when incompressible
            const double volumetric = model.incompressible() ? 0.0 : tau[i];
            out[i][k] = (dtau[i][k] - volumetric) / (j * s[k]);
        }
    }
    return out;
}

SymTensor3 cauchy_from_B(const MaterialModel& model, const SymTensor3& b, std::optional<double> pressure) {
    const EigenSystem3 es = eig_sym(b);
    if (!(es.values[2] > 0.0)) throw DomainError("cauchy_from_B: B is not positive definite");
    const StretchState s(std::sqrt(es.values[0]), std::sqrt(es.values[1]), std::sqrt(es.values[2]));
    return from_spectral(principal_stresses(model, s, pressure).cauchy, es.frame);
}

SymTensor3 neo_hooke_cauchy_closed_form(const MaterialModel& model, const SymTensor3& b) {
    if (model.kind() != ModelKind::NeoHookeVolIso) {
        throw UsageError("neo_hooke_cauchy_closed_form: model is not neo_hooke_vol_iso");
    }
    const double detB = det(b);
    if (!(detB > 0.0)) throw DomainError("neo_hooke_cauchy_closed_form: det B must be positive");
    const double mu = model.constants().mu();
    const double kappa = model.constants().bulk();
    return mu / std::pow(detB, 5.0 / 6.0) * dev(b) + kappa * (std::sqrt(detB) - 1.0) * SymTensor3::identity();
}

SymTensor3 kirchhoff_hat(const MaterialModel& model, const SymTensor3& logV) {
    const EigenSystem3 es = eig_sym(logV);
    return from_spectral(model.energy().kirchhoff(es.values), es.frame);
}

SymTensor3 cauchy_hat(const MaterialModel& model, const SymTensor3& logV) {
    const EigenSystem3 es = eig_sym(logV);
    Vec3 sigma = model.energy().kirchhoff(es.values);
    if (!model.incompressible()) {
        const double j = std::exp(es.values[0] + es.values[1] + es.values[2]);
        for (auto& x : sigma) x /= j;
    }
    return from_spectral(sigma, es.frame);
}

double energy_of_F(const MaterialModel& model, const Mat3& f) {
    if (!(det(f) > 0.0)) throw DomainError("energy_of_F: det F must be positive");
    const EigenSystem3 es = eig_sym(SymTensor3::sym(transpose(f) * f));
    if (!(es.values[2] > 0.0)) throw DomainError("energy_of_F: F^T F is not positive definite");
    const Vec3 eps{0.5 * std::log(es.values[0]), 0.5 * std::log(es.values[1]), 0.5 * std::log(es.values[2])};
    return model.energy().energy(eps);
}

}  // namespace corostab
