#include "corostab/stability.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "corostab/error.hpp"
#include "corostab/format.hpp"
#include "corostab/numeric.hpp"

namespace corostab {

namespace {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

constexpr double kLogStep = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

SymTensor3 stress_hat(const MaterialModel& model, const SymTensor3& logV, bool kirchhoff) {
    return kirchhoff ? kirchhoff_hat(model, logV) : cauchy_hat(model, logV);
}

SymTensor3 derivative_at_log(const MaterialModel& model, const SymTensor3& logV, const SymTensor3& h, bool kirchhoff) {
    return numeric::central2_richardson(
        [&](double s) { return stress_hat(model, logV + s * h, kirchhoff); }, 0.0, kLogStep);
}

Matrix6 raw_tangent(const MaterialModel& model, const SymTensor3& v, bool kirchhoff) {
    const SymTensor3 logV = log_spd(v);
    const Basis6& basis = Basis6::orthonormal();
    Matrix6 m;
    for (int k = 0; k < 6; ++k) {
        const Vec6 col = vec6(derivative_at_log(model, logV, basis[static_cast<std::size_t>(k)], kirchhoff));
        for (int i = 0; i < 6; ++i) {
            m(i, k) = col[static_cast<std::size_t>(i)];
        }
    }
    return 0.5 * (m + m.transpose());
}

TangentMatrix6 to_tangent(const Matrix6& m) {
    TangentMatrix6 out;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            out.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
        }
    }
    return out;
}

// Random rotation from three uniforms (unit quaternion, Shoemake).
Mat3 random_rotation(std::mt19937_64& rng) {
    const double u1 = numeric::unit_uniform(rng);
    const double u2 = numeric::unit_uniform(rng);
    const double u3 = numeric::unit_uniform(rng);
    const double tau = 2.0 * std::numbers::pi;
    const double a = std::sqrt(1.0 - u1);
    const double b = std::sqrt(u1);
    const double x = a * std::sin(tau * u2);
    const double y = a * std::cos(tau * u2);
    const double z = b * std::sin(tau * u3);
    const double w = b * std::cos(tau * u3);
    return Mat3({1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
                 2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
                 2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)});
}

SymTensor3 random_stretch(std::mt19937_64& rng, double lo, double hi) {
    Vec3 d{};
    for (double& x : d) {
        x = numeric::uniform(rng, lo, hi);
    }
    return rotate(SymTensor3::diag(d), random_rotation(rng));
}

SymTensor3 unimodular(const SymTensor3& v) { return v * std::pow(det(v), -1.0 / 3.0); }

// 9x9 Hessian of W at F, index 3 i + j for F_ij, from five-point second differences.
std::array<std::array<double, 9>, 9> energy_hessian(const MaterialModel& model, const Mat3& f, double h) {
    const auto unit = [](int a) {
        Mat3 e;
        e(a / 3, a % 3) = 1.0;
        return e;
    };
    const auto curvature = [&](const Mat3& dir) {
        return numeric::second5([&](double s) { return energy_of_F(model, f + s * dir); }, 0.0, h);
    };
    std::array<std::array<double, 9>, 9> a{};
    for (int p = 0; p < 9; ++p) {
        a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = curvature(unit(p));
        for (int q = 0; q < p; ++q) {
            const double v = 0.25 * (curvature(unit(p) + unit(q)) - curvature(unit(p) - unit(q)));
            a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = v;
            a[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = v;
        }
    }
    return a;
}

struct AcousticMin {
    double value;
    Vec3 eta;
};

AcousticMin acoustic_min(const std::array<std::array<double, 9>, 9>& a, const Vec3& xi) {
    double q[3][3] = {};
    for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 3; ++l) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i) {
                for (int k = 0; k < 3; ++k) {
                    s += a[static_cast<std::size_t>(3 * i + j)][static_cast<std::size_t>(3 * k + l)] *
                         xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(k)];
                }
            }
            q[j][l] = s;
        }
    }
    const SymTensor3 acoustic(q[0][0], q[1][1], q[2][2], 0.5 * (q[0][1] + q[1][0]), 0.5 * (q[1][2] + q[2][1]),
                              0.5 * (q[2][0] + q[0][2]));
    const EigenSystem3 es = eig_sym(acoustic);
    return {es.values[2], es.frame.column(2)};
}

Vec3 direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

double TangentMatrix6::quadratic_form(const Vec6& h) const {
    double s = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            s += h[i] * matrix[i][j] * h[j];
        }
    }
    return s;
}

SymTensor3 directional_stress_derivative(const MaterialModel& model, const SymTensor3& v, const SymTensor3& h,
                                         bool kirchhoff) {
    return derivative_at_log(model, log_spd(v), h, kirchhoff);
}

TangentMatrix6 tsts_tangent(const MaterialModel& model, const SymTensor3& v) {
    if (model.incompressible()) {
        throw UsageError("tsts_tangent: model '" + std::string(to_string(model.kind())) +
                         "' is incompressible; use hill_tangent");
    }
    const Matrix6 m = raw_tangent(model, v, false);
    TangentMatrix6 out = to_tangent(m);
    const Eigen::SelfAdjointEigenSolver<Matrix6> solver(m, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 6; ++i) {
        out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    }
    return out;
}

TangentMatrix6 hill_tangent(const MaterialModel& model, const SymTensor3& v) {
    const Matrix6 k = raw_tangent(model, v, true);

    // Orthonormal basis of the deviatoric subspace in orthonormal coordinates.
    Eigen::Matrix<double, 6, 5> b = Eigen::Matrix<double, 6, 5>::Zero();
    b(0, 0) = 1.0 / std::sqrt(2.0);
    b(1, 0) = -1.0 / std::sqrt(2.0);
    b(0, 1) = 1.0 / std::sqrt(6.0);
    b(1, 1) = 1.0 / std::sqrt(6.0);
    b(2, 1) = -2.0 / std::sqrt(6.0);
    b(3, 2) = 1.0;
    b(4, 3) = 1.0;
    b(5, 4) = 1.0;

    const Matrix6 projector = b * b.transpose();
    TangentMatrix6 out = to_tangent(projector * k * projector);
    const Eigen::Matrix<double, 5, 5> restricted = b.transpose() * k * b;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> solver(restricted, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 5; ++i) {
        out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    }
    out.eigenvalues[5] = kInf;
    return out;
}

TangentMatrix6 stability_tangent(const MaterialModel& model, const SymTensor3& v) {
    return model.incompressible() ? hill_tangent(model, v) : tsts_tangent(model, v);
}

double two_point_monotonicity(const MaterialModel& model, const SymTensor3& v1, const SymTensor3& v2,
                              StressMeasure measure) {
    const SymTensor3 l1 = log_spd(v1);
    const SymTensor3 l2 = log_spd(v2);
    const bool kirchhoff = measure == StressMeasure::Kirchhoff;
    return inner(stress_hat(model, l1, kirchhoff) - stress_hat(model, l2, kirchhoff), l1 - l2);
}

BeTeResult be_te_check(const MaterialModel& model, const StretchState& s) {
    const std::optional<double> pressure = model.incompressible() ? std::optional<double>(0.0) : std::nullopt;
    const Vec3 sigma = principal_stresses(model, s, pressure).cauchy;
    const Vec3& l = s.stretches();

    BeTeResult r;
    bool anyPair = false;
    double be = kInf;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (l[i] != l[j]) {
                anyPair = true;
                be = std::min(be, (sigma[i] - sigma[j]) * (l[i] - l[j]));
            }
        }
    }
    r.be_margin = anyPair ? be : 0.0;

    double te = kInf;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto component = [&](double x) {
            Vec3 p = l;
            p[i] = x;
            return principal_stresses(model, StretchState(p), pressure).cauchy[i];
        };
        te = std::min(te, numeric::central2_richardson(component, l[i], 1e-6 * l[i]));
    }
    r.te_margin = te;
    r.be_ok = r.be_margin > -kHoldsTol;
    r.te_ok = r.te_margin > -kHoldsTol;
    return r;
}

double rank_one_second_derivative(const MaterialModel& model, const Mat3& f, const Vec3& xi, const Vec3& eta) {
    const Mat3 dir = outer(xi, eta);
    const double h = 1e-3 * std::max(1.0, norm(f) / std::sqrt(3.0));
    return numeric::second5([&](double s) { return energy_of_F(model, f + s * dir); }, 0.0, h);
}

LhProbeResult lh_ellipticity_probe(const MaterialModel& model, const StretchState& s, int samples, int refinement) {
    if (samples < 1) {
        throw UsageError("lh_ellipticity_probe: samples must be positive");
    }
    const Mat3 f = s.F();
    const double h = 1e-3 * std::max(1.0, norm(f) / std::sqrt(3.0));
    const auto hessian = energy_hessian(model, f, h);

    struct Candidate {
        double value;
        double theta;
        double phi;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(samples));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < samples; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / samples;
        const double theta = std::acos(z);
        const double phi = golden * i;
        candidates.push_back({acoustic_min(hessian, direction(theta, phi)).value, theta, phi});
    }
    const std::size_t keep = std::min<std::size_t>(10, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                      [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

    Candidate best = candidates.front();
    for (std::size_t c = 0; c < keep; ++c) {
        Candidate cur = candidates[c];
        double step = 0.2;
        for (int it = 0; it < refinement; ++it) {
            bool improved = false;
            for (const auto& [dt, dp] : {std::pair{step, 0.0}, std::pair{-step, 0.0}, std::pair{0.0, step},
                                         std::pair{0.0, -step}}) {
                const double value = acoustic_min(hessian, direction(cur.theta + dt, cur.phi + dp)).value;
                if (value < cur.value) {
                    cur = {value, cur.theta + dt, cur.phi + dp};
                    improved = true;
                }
            }
            if (!improved) {
                step *= 0.5;
            }
        }
        if (cur.value < best.value) {
            best = cur;
        }
    }

    LhProbeResult r;
    r.xi = direction(best.theta, best.phi);
    r.eta = acoustic_min(hessian, r.xi).eta;
    r.min_value = rank_one_second_derivative(model, f, r.xi, r.eta);
    return r;
}

void ScanGrid::validate() const {
    if (!(lo > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("grid: stretches must be positive and finite");
    }
    if (n < 1) {
        throw ConfigError("grid: point count must be at least 1");
    }
    if (n > 1 && !(hi > lo)) {
        throw ConfigError("grid: upper bound must exceed lower bound");
    }
}

std::vector<double> ScanGrid::values() const {
    validate();
    if (n == 1) {
        return {lo};
    }
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    v.back() = hi;
    return v;
}

std::map<std::string, int> StabilityReport::violation_counts() const {
    std::map<std::string, int> counts;
    for (const char* c : kStateChecks) {
        counts[c] = 0;
    }
    counts["tsts_m_plus"] = 0;
    counts["hill_pair"] = 0;
    for (const Witness& w : witnesses) {
        ++counts[w.check];
    }
    return counts;
}

bool StabilityReport::constitutively_stable() const {
    return std::none_of(witnesses.begin(), witnesses.end(), [](const Witness& w) { return w.check != "lh"; });
}

StabilityReport region_scan(const MaterialModel& model, const ScanOptions& options) {
    const std::vector<double> values = options.grid.values();
    StabilityReport report;
    report.model = std::string(to_string(model.kind()));
    report.parameters = model.parameters();
    report.grid = options.grid;
    report.seed = options.seed;

    const auto witness = [&](const char* check, const Vec3& state, double margin) {
        if (margin < -kWitnessTol) {
            report.witnesses.push_back({check, state, margin, std::nullopt, std::nullopt});
        }
    };

    const int n = static_cast<int>(values.size());
    const int nk = model.incompressible() ? 1 : n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < nk; ++k) {
                const double l1 = values[static_cast<std::size_t>(i)];
                const double l2 = values[static_cast<std::size_t>(j)];
                const double l3 = model.incompressible() ? 1.0 / (l1 * l2) : values[static_cast<std::size_t>(k)];
                StateRecord rec;
                rec.index = {i, j, k};
                rec.stretches = {l1, l2, l3};
                const SymTensor3 v = SymTensor3::diag(rec.stretches);
                rec.csp_min_eig = stability_tangent(model, v).min_eigenvalue();
                rec.hill_min_eig = hill_tangent(model, unimodular(v)).min_eigenvalue();
                rec.be_te = be_te_check(model, StretchState(rec.stretches));
                witness("csp", rec.stretches, rec.csp_min_eig);
                witness("hill", rec.stretches, rec.hill_min_eig);
                witness("be", rec.stretches, rec.be_te.be_margin);
                witness("te", rec.stretches, rec.be_te.te_margin);
                if (options.lh_probe) {
                    const LhProbeResult lh = lh_ellipticity_probe(model, StretchState(rec.stretches),
                                                                  options.lh_samples, options.lh_refinement);
                    rec.lh_min = lh.min_value;
                    if (lh.min_value < -kWitnessTol) {
                        report.witnesses.push_back(
                            {"lh", rec.stretches, lh.min_value, std::nullopt, std::array<Vec3, 2>{lh.xi, lh.eta}});
                    }
                } else {
                    rec.lh_min = std::numeric_limits<double>::quiet_NaN();
                }
                report.states.push_back(rec);
            }
        }
    }

    std::mt19937_64 rng(options.seed);
    const double lo = options.grid.lo;
    const double hi = options.grid.n > 1 ? options.grid.hi : options.grid.lo;
    for (int p = 0; p < options.pair_samples; ++p) {
        const SymTensor3 v1 = random_stretch(rng, lo, hi);
        const SymTensor3 v2 = random_stretch(rng, lo, hi);
        if (!model.incompressible()) {
            const double m = two_point_monotonicity(model, v1, v2, StressMeasure::Cauchy);
            if (m < -kWitnessTol) {
                report.witnesses.push_back({"tsts_m_plus", eig_sym(v1).values, m, std::array{v1, v2}, std::nullopt});
            }
        }
        const SymTensor3 u1 = unimodular(v1);
        const SymTensor3 u2 = unimodular(v2);
        const double m = two_point_monotonicity(model, u1, u2, StressMeasure::Kirchhoff);
        if (m < -kWitnessTol) {
            report.witnesses.push_back({"hill_pair", eig_sym(u1).values, m, std::array{u1, u2}, std::nullopt});
        }
        ++report.pairs_checked;
    }
    return report;
}

double replay(const MaterialModel& model, const Witness& w) {
    const SymTensor3 v = SymTensor3::diag(w.state);
    if (w.check == "csp") {
        return stability_tangent(model, v).min_eigenvalue();
    }
    if (w.check == "hill") {
        return hill_tangent(model, unimodular(v)).min_eigenvalue();
    }
    if (w.check == "be") {
        return be_te_check(model, StretchState(w.state)).be_margin;
    }
    if (w.check == "te") {
        return be_te_check(model, StretchState(w.state)).te_margin;
    }
    if (w.check == "lh" && w.directions) {
        return rank_one_second_derivative(model, Mat3::diag(w.state), (*w.directions)[0], (*w.directions)[1]);
    }
    if ((w.check == "tsts_m_plus" || w.check == "hill_pair") && w.pair) {
        const auto measure = w.check == "tsts_m_plus" ? StressMeasure::Cauchy : StressMeasure::Kirchhoff;
        return two_point_monotonicity(model, (*w.pair)[0], (*w.pair)[1], measure);
    }
    throw UsageError("replay: witness '" + w.check + "' lacks the data needed to re-evaluate it");
}

void write_scan_csv(std::ostream& out, const StabilityReport& report) {
    out << kScanCsvHeader << '\n';
    for (const StateRecord& r : report.states) {
        out << r.index[0] << ',' << r.index[1] << ',' << r.index[2] << ',' << format_number(r.stretches[0]) << ','
            << format_number(r.stretches[1]) << ',' << format_number(r.stretches[2]) << ','
            << format_number(r.csp_min_eig) << ',' << format_number(r.hill_min_eig) << ','
            << format_number(r.be_te.be_margin) << ',' << format_number(r.be_te.te_margin) << ','
            << format_number(r.lh_min) << '\n';
    }
}

}  // namespace corostab
