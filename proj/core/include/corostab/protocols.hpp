#pragma once

// Homogeneous test protocols (uniaxial, equibiaxial, planar, hydrostatic)
// with traction-free lateral faces, stress-stretch sweeps and incremental
// moduli.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corostab/materials.hpp"

namespace corostab {

enum class ProtocolKind { Uniaxial, Equibiaxial, Planar, Hydrostatic };
enum class Regime { Compressible, Incompressible };

std::string_view to_string(ProtocolKind kind);
std::string_view to_string(Regime regime);
/// Throws ConfigError for unknown names.
ProtocolKind parse_protocol_kind(std::string_view name);

class Protocol {
public:
    /// Throws UsageError for hydrostatic + incompressible.
    Protocol(ProtocolKind kind, Regime regime);
    /// Protocol with the regime implied by the model.
    static Protocol for_model(const MaterialModel& model, ProtocolKind kind);

    [[nodiscard]] ProtocolKind kind() const { return kind_; }
    [[nodiscard]] Regime regime() const { return regime_; }
    /// 1, 1/2, 1, 1/3 for uniaxial, equibiaxial, planar, hydrostatic.
    [[nodiscard]] double modulus_factor() const;

private:
    ProtocolKind kind_;
    Regime regime_;
};

struct ClosureSolution {
    StretchState state{1.0, 1.0, 1.0};
    std::optional<double> pressure;
    /// lambda2 for uniaxial and planar, lambda3 for equibiaxial, lambda1 for hydrostatic.
    double lateral = 1.0;
    /// |lateral Cauchy stress| at the returned state.
    double residual = 0.0;
    /// Every root found in the bracket scan (just the chosen one for closed kinematics).
    std::vector<double> candidates;
};

/// Solves the traction-free lateral condition at the given lambda1. With a
/// guess, the candidate root closest (in log) to it is selected; without one,
/// the root closest to 1. Throws SolverError carrying the scan when no root
/// is bracketed in [1e-3, 1e3], DomainError for lambda1 <= 0.
ClosureSolution lateral_closure(const MaterialModel& model, const Protocol& protocol, double lambda1,
                                std::optional<double> guess = std::nullopt);

/// Driving stress: Cauchy sigma_1 (compressible) or Kirchhoff tau_1 (incompressible).
double driving_stress(const MaterialModel& model, const ClosureSolution& solution);

struct GridSpec {
    double lambda_min = 0.5;
    double lambda_max = 2.0;
    int steps = 2;

    /// Throws ConfigError unless 0 < lambda_min < lambda_max and steps >= 2.
    void validate() const;
    /// linspace(lambda_min, lambda_max, steps)
    [[nodiscard]] std::vector<double> points() const;
};

struct CurveRow {
    double lambda1 = 1.0;
    double lambda_lateral = 1.0;
    double stress_driving = 0.0;
    double stress_biot = 0.0;
    double energy = 0.0;
    double modulus_incr = 0.0;
    double modulus_incr_log = 0.0;

    friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

struct CurveTable {
    std::string model;
    ProtocolKind protocol = ProtocolKind::Uniaxial;
    GridSpec grid;
    std::vector<CurveRow> rows;
};

struct SweepOptions {
    /// Solve every point from scratch instead of by continuation.
    bool cold = false;
    /// Add lambda1 = 1 to the grid when it lies strictly inside and is missing.
    bool include_reference = true;
    bool with_moduli = true;
};

/// Rows are sorted by lambda1. Solver failures are rethrown as SolverError
/// naming the failing lambda1.
CurveTable sweep(const MaterialModel& model, const Protocol& protocol, const GridSpec& grid,
                 const SweepOptions& options = {});

struct Moduli {
    double incr = 0.0;
    double incr_log = 0.0;
};

/// factor * d(driving stress)/d lambda1 by a five-point stencil with one
/// Richardson level. Throws RangeError when the stencil leaves the solvable range.
Moduli incremental_moduli(const MaterialModel& model, const Protocol& protocol, double lambda1,
                          std::optional<double> guess = std::nullopt);

inline constexpr std::string_view kCurveCsvHeader =
    "lambda1,lambda_lateral,stress_driving,stress_biot,energy,modulus_incr,modulus_incr_log";

void write_curve_csv(std::ostream& out, const CurveTable& table);
/// Parses rows written by write_curve_csv; throws InvalidInputError on schema mismatch.
std::vector<CurveRow> read_curve_csv(std::istream& in);

}  // namespace corostab
