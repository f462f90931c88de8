#pragma once

// Constitutive stability checks: the log-strain tangent of the Cauchy stress
// (positive definiteness of its symmetric part), two-point monotonicity in
// log V for Cauchy and Kirchhoff stress, Baker-Ericksen, tension-extension,
// a rank-one (Legendre-Hadamard) probe, and a grid scanner.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corostab/materials.hpp"

namespace corostab {

/// Symmetric 6x6 matrix in the orthonormal Basis6 with ascending eigenvalues.
struct TangentMatrix6 {
    std::array<std::array<double, 6>, 6> matrix{};
    std::array<double, 6> eigenvalues{};

    [[nodiscard]] double min_eigenvalue() const { return eigenvalues[0]; }
    /// H : M : H for H given by its orthonormal coordinates.
    [[nodiscard]] double quadratic_form(const Vec6& h) const;
};

/// sym D_{log V} sigma^(log V), assembled column by column from central
/// differences in log V (step 1e-6, one Richardson level) and symmetrized.
/// Compressible models only (UsageError otherwise); DomainError for non-SPD V.
TangentMatrix6 tsts_tangent(const MaterialModel& model, const SymTensor3& v);

/// Kirchhoff tangent restricted to deviatoric directions, which is what the
/// Kirchhoff monotonicity condition sees on det V = 1. The volumetric
/// direction is reported with eigenvalue +inf. Valid for every model;
/// for incompressible ones it is the pressure-free tangent.
TangentMatrix6 hill_tangent(const MaterialModel& model, const SymTensor3& v);

/// tsts_tangent for compressible models, hill_tangent for incompressible ones.
TangentMatrix6 stability_tangent(const MaterialModel& model, const SymTensor3& v);

/// d/ds sigma^(log V + s H) at s = 0 (Kirchhoff when `kirchhoff` is set).
SymTensor3 directional_stress_derivative(const MaterialModel& model, const SymTensor3& v, const SymTensor3& h,
                                         bool kirchhoff = false);

enum class StressMeasure { Cauchy, Kirchhoff };

/// <s^(log V1) - s^(log V2), log V1 - log V2> with s = sigma or tau
/// (pressure-free part for incompressible models).
double two_point_monotonicity(const MaterialModel& model, const SymTensor3& v1, const SymTensor3& v2,
                              StressMeasure measure);

/// A margin "holds" above -kHoldsTol; only margins below -kWitnessTol are
/// reported as violations.
inline constexpr double kHoldsTol = 1e-9;
inline constexpr double kWitnessTol = 1e-7;

struct BeTeResult {
    bool be_ok = true;
    bool te_ok = true;
    /// min (sigma_i - sigma_j)(l_i - l_j) over pairs with distinct stretches; 0 if none.
    double be_margin = 0.0;
    /// min d sigma_i / d l_i.
    double te_margin = 0.0;
};

/// Baker-Ericksen and tension-extension inequalities. Incompressible models
/// are evaluated with zero pressure (BE is pressure independent; TE then
/// concerns the constitutive part of the stress).
BeTeResult be_te_check(const MaterialModel& model, const StretchState& s);

struct LhProbeResult {
    double min_value = 0.0;
    Vec3 xi{1.0, 0.0, 0.0};
    Vec3 eta{1.0, 0.0, 0.0};
};

/// d^2/ds^2 W(F + s xi (x) eta) at s = 0 by a five-point stencil.
double rank_one_second_derivative(const MaterialModel& model, const Mat3& f, const Vec3& xi, const Vec3& eta);

/// Searches for a rank-one direction with small second derivative of W at
/// F = diag(s). xi is sampled on a Fibonacci sphere (`samples` points); for
/// each xi the best eta is the lowest eigenvector of the acoustic tensor built
/// from a finite-difference Hessian of W. The 10 best candidates are refined by
/// coordinate descent on the spherical angles of xi (`refinement` halvings)
/// and the reported value is re-evaluated directly along xi (x) eta.
/// A non-negative result means no violation was found, not that none exists.
LhProbeResult lh_ellipticity_probe(const MaterialModel& model, const StretchState& s, int samples = 400,
                                   int refinement = 30);

/// a:b:n grid of principal stretches, n >= 1 (n = 1 means the single value a).
struct ScanGrid {
    double lo = 0.5;
    double hi = 3.0;
    int n = 11;

    void validate() const;
    [[nodiscard]] std::vector<double> values() const;
};

struct ScanOptions {
    ScanGrid grid;
    std::uint64_t seed = 0;
    /// Number of random (V1, V2) pairs for each two-point check.
    int pair_samples = 500;
    bool lh_probe = true;
    int lh_samples = 200;
    int lh_refinement = 20;
};

struct StateRecord {
    std::array<int, 3> index{};
    Vec3 stretches{1.0, 1.0, 1.0};
    double csp_min_eig = 0.0;
    /// Deviatoric Kirchhoff tangent at the unimodular projection of the state.
    double hill_min_eig = 0.0;
    BeTeResult be_te;
    double lh_min = 0.0;
};

struct Witness {
    /// csp, hill, be, te, lh, tsts_m_plus, hill_pair
    std::string check;
    Vec3 state{1.0, 1.0, 1.0};
    double margin = 0.0;
    /// Present for two-point checks.
    std::optional<std::array<SymTensor3, 2>> pair;
    /// (xi, eta) for lh witnesses.
    std::optional<std::array<Vec3, 2>> directions;
};

struct StabilityReport {
    std::string model;
    ParameterMap parameters;
    ScanGrid grid;
    std::uint64_t seed = 0;
    int pairs_checked = 0;
    std::vector<StateRecord> states;
    std::vector<Witness> witnesses;

    [[nodiscard]] std::map<std::string, int> violation_counts() const;
    /// No witnesses from the constitutive checks (everything except lh).
    [[nodiscard]] bool constitutively_stable() const;
};

/// Checks that are evaluated on grid states.
inline constexpr std::array<const char*, 5> kStateChecks{"csp", "hill", "be", "te", "lh"};

/// Compressible models: n^3 states diag(l1, l2, l3). Incompressible models:
/// n^2 states diag(l1, l2, 1/(l1 l2)) with index[2] = 0. Two-point checks on
/// seeded random pairs whose eigenvalues lie in [lo, hi]: Cauchy on general
/// pairs (compressible only), Kirchhoff on pairs scaled to det V = 1.
/// Deterministic for a given model, grid and seed.
StabilityReport region_scan(const MaterialModel& model, const ScanOptions& options);

/// Re-evaluates the margin recorded in a witness.
double replay(const MaterialModel& model, const Witness& witness);

inline constexpr const char* kScanCsvHeader = "i,j,k,lambda1,lambda2,lambda3,csp_min_eig,hill_min_eig,be_margin,te_margin,lh_min";

void write_scan_csv(std::ostream& out, const StabilityReport& report);

}  // namespace corostab
