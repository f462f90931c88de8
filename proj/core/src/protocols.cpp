#include "corostab/protocols.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "corostab/error.hpp"
#include "corostab/format.hpp"
#include "corostab/numeric.hpp"

namespace corostab {

namespace {

constexpr int kScanPoints = 64;
constexpr double kScanLogMin = -3.0;  // log10 of the lateral bracket
constexpr double kScanLogMax = 3.0;
constexpr int kMaxBisections = 200;
constexpr double kResidualTol = 1e-10;

struct LateralProblem {
    const MaterialModel& model;
    ProtocolKind kind;
    double lambda1;

    [[nodiscard]] StretchState state(double x) const {
        switch (kind) {
            case ProtocolKind::Uniaxial: return {lambda1, x, x};
            case ProtocolKind::Equibiaxial: return {lambda1, lambda1, x};
            case ProtocolKind::Planar: return {lambda1, x, 1.0};
            case ProtocolKind::Hydrostatic: break;
        }
        return {lambda1, lambda1, lambda1};
    }

    [[nodiscard]] std::size_t free_index() const { return kind == ProtocolKind::Equibiaxial ? 2 : 1; }

    /// Lateral Kirchhoff stress; same roots as the Cauchy one since J > 0.
    [[nodiscard]] double residual(double x) const {
        return model.energy().kirchhoff(state(x).log_stretches())[free_index()];
    }

    [[nodiscard]] double slope(double x) const {
        const auto t = model.energy().kirchhoff_tangent(state(x).log_stretches());
        switch (kind) {
            case ProtocolKind::Uniaxial: return (t[1][1] + t[1][2]) / x;
            case ProtocolKind::Equibiaxial: return t[2][2] / x;
            default: return t[1][1] / x;
        }
    }
};

double bisect(const LateralProblem& p, double a, double b, double ra) {
    for (int it = 0; it < kMaxBisections && b - a > 1e-12 * b; ++it) {
        const double m = std::sqrt(a * b);
        if (m <= a || m >= b) {
            break;
        }
        const double rm = p.residual(m);
        if (rm == 0.0) {
            return m;
        }
        if ((rm < 0.0) == (ra < 0.0)) {
            a = m;
            ra = rm;
        } else {
            b = m;
        }
    }
    return std::abs(ra) <= std::abs(p.residual(b)) ? a : b;
}

double polish(const LateralProblem& p, double x) {
    double r = p.residual(x);
    for (int it = 0; it < 2; ++it) {
        const double d = p.slope(x);
        if (d == 0.0 || !std::isfinite(d)) {
            break;
        }
        const double next = x - r / d;
        if (!(next > 0.0) || !std::isfinite(next)) {
            break;
        }
        const double rn = p.residual(next);
        if (!(std::abs(rn) < std::abs(r))) {
            break;
        }
        x = next;
        r = rn;
    }
    return x;
}

std::vector<double> find_roots(const LateralProblem& p, std::vector<SolverError::ScanPoint>& scan) {
    scan.reserve(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        const double e = kScanLogMin + (kScanLogMax - kScanLogMin) * i / (kScanPoints - 1);
        const double x = std::pow(10.0, e);
        scan.push_back({x, p.residual(x)});
    }
    std::vector<double> roots;
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const auto& cur = scan[i];
        if (!std::isfinite(cur.residual)) {
            continue;
        }
        if (cur.residual == 0.0) {
            roots.push_back(cur.lateral);
            continue;
        }
        if (i + 1 < scan.size()) {
            const auto& next = scan[i + 1];
            if (std::isfinite(next.residual) && next.residual != 0.0 && (cur.residual < 0.0) != (next.residual < 0.0)) {
                roots.push_back(polish(p, bisect(p, cur.lateral, next.lateral, cur.residual)));
            }
        }
    }
    return roots;
}

double closest_in_log(const std::vector<double>& roots, double target) {
    return *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
        return std::abs(std::log(a / target)) < std::abs(std::log(b / target));
    });
}

}  // namespace

std::string_view to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Uniaxial: return "uniaxial";
        case ProtocolKind::Equibiaxial: return "equibiaxial";
        case ProtocolKind::Planar: return "planar";
        case ProtocolKind::Hydrostatic: return "hydrostatic";
    }
    return "unknown";
}

std::string_view to_string(Regime regime) {
    return regime == Regime::Compressible ? "compressible" : "incompressible";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
    for (auto k : {ProtocolKind::Uniaxial, ProtocolKind::Equibiaxial, ProtocolKind::Planar, ProtocolKind::Hydrostatic}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ConfigError("protocol: unknown protocol '" + std::string(name) +
                      "' (expected uniaxial, equibiaxial, planar or hydrostatic)");
}

Protocol::Protocol(ProtocolKind kind, Regime regime) : kind_(kind), regime_(regime) {
    if (kind == ProtocolKind::Hydrostatic && regime == Regime::Incompressible) {
        throw UsageError("protocol: hydrostatic tension is impossible for an incompressible material");
    }
}

Protocol Protocol::for_model(const MaterialModel& model, ProtocolKind kind) {
    return {kind, model.incompressible() ? Regime::Incompressible : Regime::Compressible};
}

double Protocol::modulus_factor() const {
    switch (kind_) {
        case ProtocolKind::Equibiaxial: return 0.5;
        case ProtocolKind::Hydrostatic: return 1.0 / 3.0;
        default: return 1.0;
    }
}

ClosureSolution lateral_closure(const MaterialModel& model, const Protocol& protocol, double lambda1,
                                std::optional<double> guess) {
    if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
        throw DomainError("lateral_closure: lambda1 must be positive and finite");
    }
    if ((protocol.regime() == Regime::Incompressible) != model.incompressible()) {
        throw UsageError("lateral_closure: protocol regime '" + std::string(to_string(protocol.regime())) +
                         "' does not match model '" + std::string(to_string(model.kind())) + "'");
    }
    const LateralProblem problem{model, protocol.kind(), lambda1};
    ClosureSolution out;

    if (protocol.kind() == ProtocolKind::Hydrostatic) {
        out.state = StretchState(lambda1, lambda1, lambda1);
        out.lateral = lambda1;
        out.candidates = {lambda1};
        return out;
    }

    if (model.incompressible()) {
        switch (protocol.kind()) {
            case ProtocolKind::Uniaxial: {
                const double l = 1.0 / std::sqrt(lambda1);
                out.state = StretchState(lambda1, l, l);
                out.lateral = l;
                break;
            }
            case ProtocolKind::Equibiaxial:
                out.state = StretchState(lambda1, lambda1, 1.0 / (lambda1 * lambda1));
                out.lateral = out.state[2];
                break;
            default:
                out.state = StretchState(lambda1, 1.0 / lambda1, 1.0);
                out.lateral = out.state[1];
                break;
        }
        const Vec3 tau = model.energy().kirchhoff(out.state.log_stretches());
        out.pressure = tau[problem.free_index()];
        out.residual = std::abs(tau[problem.free_index()] - *out.pressure);
        out.candidates = {out.lateral};
        return out;
    }

    std::vector<SolverError::ScanPoint> scan;
    std::vector<double> roots = find_roots(problem, scan);
    if (roots.empty()) {
        throw SolverError("lateral_closure: no traction-free lateral stretch bracketed in [1e-3, 1e3] at lambda1 = " +
                              format_number(lambda1),
                          lambda1, std::move(scan));
    }
    const double x = closest_in_log(roots, guess.value_or(1.0));
    out.state = problem.state(x);
    out.lateral = x;
    out.candidates = std::move(roots);

    const double j = out.state.J();
    out.residual = std::abs(problem.residual(x)) / j;
    const double scale = std::max(1.0, std::abs(model.energy().kirchhoff(out.state.log_stretches())[0] / j));
    if (out.residual > kResidualTol * scale) {
        throw SolverError("lateral_closure: residual " + format_number(out.residual) + " above tolerance at lambda1 = " +
                              format_number(lambda1),
                          lambda1, std::move(scan));
    }
    return out;
}

double driving_stress(const MaterialModel& model, const ClosureSolution& solution) {
    return principal_stresses(model, solution.state, solution.pressure).cauchy[0];
}

void GridSpec::validate() const {
    if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) {
        throw ConfigError("grid: lambda_min must be positive");
    }
    if (!(lambda_max > lambda_min) || !std::isfinite(lambda_max)) {
        throw ConfigError("grid: lambda_max must exceed lambda_min");
    }
    if (steps < 2) {
        throw ConfigError("grid: steps must be at least 2");
    }
}

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> pts(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        pts[static_cast<std::size_t>(i)] = lambda_min + (lambda_max - lambda_min) * i / (steps - 1);
    }
    pts.back() = lambda_max;
    return pts;
}

Moduli incremental_moduli(const MaterialModel& model, const Protocol& protocol, double lambda1,
                          std::optional<double> guess) {
    const double h = 1e-4 * std::max(1.0, lambda1);
    if (!(lambda1 - 2.0 * h > 0.0)) {
        throw RangeError("incremental_moduli: stencil around lambda1 = " + format_number(lambda1) +
                         " reaches non-positive stretches");
    }
    const auto stress = [&](double l) {
        try {
            return driving_stress(model, lateral_closure(model, protocol, l, guess));
        } catch (const SolverError& e) {
            throw RangeError("incremental_moduli: closure unsolvable at lambda1 = " + format_number(l) +
                             " inside the stencil around " + format_number(lambda1) + ": " + e.what());
        }
    };
    const double slope = numeric::central5_richardson(stress, lambda1, h);
    Moduli m;
    m.incr = protocol.modulus_factor() * slope;
    m.incr_log = lambda1 * m.incr;
    return m;
}

CurveTable sweep(const MaterialModel& model, const Protocol& protocol, const GridSpec& grid,
                 const SweepOptions& options) {
    std::vector<double> pts = grid.points();
    if (options.include_reference && grid.lambda_min < 1.0 && 1.0 < grid.lambda_max &&
        std::find(pts.begin(), pts.end(), 1.0) == pts.end()) {
        pts.insert(std::upper_bound(pts.begin(), pts.end(), 1.0), 1.0);
    }

    CurveTable table;
    table.model = std::string(to_string(model.kind()));
    table.protocol = protocol.kind();
    table.grid = grid;
    table.rows.resize(pts.size());

    const auto solve_row = [&](std::size_t i, std::optional<double> guess) {
        const double l1 = pts[i];
        try {
            const ClosureSolution sol = lateral_closure(model, protocol, l1, options.cold ? std::nullopt : guess);
            const StressState st = principal_stresses(model, sol.state, sol.pressure);
            CurveRow& row = table.rows[i];
            row.lambda1 = l1;
            row.lambda_lateral = sol.lateral;
            row.stress_driving = st.cauchy[0];
            row.stress_biot = st.biot[0];
            row.energy = st.energy;
            if (options.with_moduli) {
                const Moduli m = incremental_moduli(model, protocol, l1, sol.lateral);
                row.modulus_incr = m.incr;
                row.modulus_incr_log = m.incr_log;
            }
        } catch (const SolverError& e) {
            throw SolverError("sweep failed at lambda1 = " + format_number(l1) + ": " + e.what(), l1, e.scan());
        } catch (const RangeError& e) {
            throw RangeError("sweep failed at lambda1 = " + format_number(l1) + ": " + e.what());
        }
    };

    // March outward from the point closest to the reference state.
    std::size_t seed = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (std::abs(std::log(pts[i])) < std::abs(std::log(pts[seed]))) {
            seed = i;
        }
    }
    solve_row(seed, 1.0);
    for (std::size_t i = seed + 1; i < pts.size(); ++i) {
        solve_row(i, table.rows[i - 1].lambda_lateral);
    }
    for (std::size_t i = seed; i-- > 0;) {
        solve_row(i, table.rows[i + 1].lambda_lateral);
    }
    return table;
}

void write_curve_csv(std::ostream& out, const CurveTable& table) {
    out << kCurveCsvHeader << '\n';
    for (const CurveRow& r : table.rows) {
        out << format_number(r.lambda1) << ',' << format_number(r.lambda_lateral) << ','
            << format_number(r.stress_driving) << ',' << format_number(r.stress_biot) << ','
            << format_number(r.energy) << ',' << format_number(r.modulus_incr) << ','
            << format_number(r.modulus_incr_log) << '\n';
    }
}

std::vector<CurveRow> read_curve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCurveCsvHeader) {
        throw InvalidInputError("curve csv: missing or unexpected header");
    }
    std::vector<CurveRow> rows;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) {
            continue;
        }
        std::array<double, 7> v{};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto res = std::from_chars(p, end, v[k]);
            const bool last = k + 1 == v.size();
            if (res.ec != std::errc{} || (last ? res.ptr != end : (res.ptr == end || *res.ptr != ','))) {
                throw InvalidInputError("curve csv: malformed field " + std::to_string(k + 1) + " on line " +
                                        std::to_string(lineNo));
            }
            p = last ? res.ptr : res.ptr + 1;
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    return rows;
}

}  // namespace corostab
