// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// quantities printed underneath. Exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "corostab/format.hpp"
#include "corostab/protocols.hpp"
#include "corostab/rates.hpp"
#include "corostab/stability.hpp"
#include "random_tensors.hpp"

using namespace corostab;

namespace {

class Report {
public:
    void detail(const std::string& line) { details_.push_back(line); }

    void check(const std::string& label, bool ok) {
        ok_ = ok_ && ok;
        detail(std::string(ok ? "ok   " : "MISS ") + label);
    }

    bool finish(int number, const std::string& title) {
        std::cout << (ok_ ? "PASS" : "FAIL") << " criterion " << number << ": " << title << '\n';
        for (const auto& d : details_) std::cout << "    " << d << '\n';
        details_.clear();
        const bool ok = ok_;
        ok_ = true;
        return ok;
    }

private:
    bool ok_ = true;
    std::vector<std::string> details_;
};

std::string num(double x) { return format_number(x); }

double rel_err(double value, double reference) {
    if (value == reference) return 0.0;
    return std::abs(value - reference) / std::abs(reference);
}

MaterialModel model(ModelKind kind, const ParameterMap& p) { return instantiate_model(kind, p); }

MaterialModel exp_hencky() { return model(ModelKind::ExpHencky, {{"mu", 1}, {"lambda", 2}, {"k", 1}, {"khat", 1}}); }
MaterialModel quad_hencky() { return model(ModelKind::QuadraticHencky, {{"E", 1}, {"nu", 0.3}}); }
MaterialModel neo_hooke() { return model(ModelKind::NeoHookeVolIso, {{"mu", 1}, {"kappa", 1}}); }

std::vector<MaterialModel> catalog() {
    return {exp_hencky(),
            quad_hencky(),
            neo_hooke(),
            model(ModelKind::NeoHookeIncompressible, {{"mu", 1}}),
            model(ModelKind::ExpHenckyIncompressible, {{"mu", 1}, {"k", 1}}),
            model(ModelKind::QuadraticHenckyIncompressible, {{"E", 3}})};
}

bool strictly_increasing(const std::vector<CurveRow>& rows, double CurveRow::*column) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].*column > rows[i - 1].*column)) return false;
    }
    return true;
}

bool criterion1(Report& r) {
    const MaterialModel m = quad_hencky();
    const CurveTable t = sweep(m, Protocol(ProtocolKind::Uniaxial, Regime::Compressible), GridSpec{0.5, 14.0, 200});
    double lateral = 0.0;
    double stress = 0.0;
    for (const CurveRow& row : t.rows) {
        const double l = row.lambda1;
        lateral = std::max(lateral, rel_err(row.lambda_lateral, std::pow(l, -0.3)));
        stress = std::max(stress, rel_err(row.stress_driving, std::pow(l, -0.4) * std::log(l)));
    }
    r.check("lambda2 = lambda1^-0.3, max rel err " + num(lateral) + " (tol 1e-8)", lateral <= 1e-8);
    r.check("sigma1 = lambda1^-0.4 log lambda1, max rel err " + num(stress) + " (tol 1e-7)", stress <= 1e-7);

    double crossing = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const CurveRow& a = t.rows[i - 1];
        const CurveRow& b = t.rows[i];
        if (a.modulus_incr > 0.0 && b.modulus_incr <= 0.0) {
            crossing = a.lambda1 + (b.lambda1 - a.lambda1) * a.modulus_incr / (a.modulus_incr - b.modulus_incr);
            break;
        }
    }
    const double target = std::exp(2.5);
    r.check("modulus zero crossing at " + num(crossing) + ", e^2.5 = " + num(target) + ", rel " +
                num(rel_err(crossing, target)) + " (tol 5e-3)",
            rel_err(crossing, target) <= 5e-3);
    return r.finish(1, "closed-form uniaxial curve of quadratic Hencky (E = 1, nu = 0.3)");
}

bool criterion2(Report& r) {
    const GridSpec grid{0.5, 3.0, 200};
    struct Case {
        const char* name;
        MaterialModel model;
        std::function<double(double)> closed;
    };
    const double mu = 1.0;
    const std::vector<Case> cases = {
        {"neo_hooke_incompressible, mu (l^2 - 1/l)", model(ModelKind::NeoHookeIncompressible, {{"mu", mu}}),
         [=](double l) { return mu * (l * l - 1 / l); }},
        {"quadratic_hencky_incompressible, E log l", model(ModelKind::QuadraticHenckyIncompressible, {{"E", 3 * mu}}),
         [=](double l) { return 3 * mu * std::log(l); }},
        {"exp_hencky_incompressible, mu log l e^{3/2 log^2 l} (sqrt l + 2/l)",
         model(ModelKind::ExpHenckyIncompressible, {{"mu", mu}, {"k", 1}}),
         [=](double l) {
             const double e = std::log(l);
             return mu * e * std::exp(1.5 * e * e) * (std::sqrt(l) + 2 / l);
         }},
    };
    std::vector<CurveTable> tables;
    for (const Case& c : cases) {
        const CurveTable t = sweep(c.model, Protocol::for_model(c.model, ProtocolKind::Uniaxial), grid);
        double worst = 0.0;
        double worstAt = 1.0;
        for (const CurveRow& row : t.rows) {
            const double e = rel_err(row.stress_driving, c.closed(row.lambda1));
            if (e > worst) {
                worst = e;
                worstAt = row.lambda1;
            }
        }
        r.check(std::string(c.name) + ": max rel err " + num(worst) + " at lambda1 = " + num(worstAt) + " (tol 1e-9)",
                worst <= 1e-9);
        r.check(std::string(c.name) + ": strictly increasing",
                strictly_increasing(t.rows, &CurveRow::stress_driving));
        tables.push_back(t);
    }

    double consistent = 0.0;
    for (const CurveRow& row : tables[2].rows) {
        const double e = std::log(row.lambda1);
        consistent = std::max(consistent, rel_err(row.stress_driving, 3 * mu * e * std::exp(1.5 * e * e)));
    }
    r.detail("info exp_hencky_incompressible against 3 mu log l e^{3/2 log^2 l} (from the energy): max rel err " +
             num(consistent));

    const std::vector<CurveRow>& qh = tables[1].rows;
    const auto peak = std::max_element(qh.begin(), qh.end(),
                                       [](const CurveRow& a, const CurveRow& b) { return a.stress_biot < b.stress_biot; });
    double biot = 0.0;
    for (const CurveRow& row : qh) biot = std::max(biot, rel_err(row.stress_biot, 3 * mu * std::log(row.lambda1) / row.lambda1));
    const double spacing = (grid.lambda_max - grid.lambda_min) / (grid.steps - 1);
    r.check("quadratic Hencky Biot column = E log l / l, max rel err " + num(biot) + " (tol 1e-9)", biot <= 1e-9);
    r.check("Biot column peaks at lambda1 = " + num(peak->lambda1) + ", e = " + num(std::exp(1.0)) +
                ", grid spacing " + num(spacing),
            std::abs(peak->lambda1 - std::exp(1.0)) <= spacing);
    return r.finish(2, "incompressible uniaxial closed forms");
}

bool criterion3(Report& r) {
    const MaterialModel m = exp_hencky();
    for (auto k : {ProtocolKind::Uniaxial, ProtocolKind::Equibiaxial, ProtocolKind::Planar, ProtocolKind::Hydrostatic}) {
        const CurveTable t = sweep(m, Protocol(k, Regime::Compressible), GridSpec{0.5, 4.0, 200});
        double minModulus = std::numeric_limits<double>::infinity();
        for (const CurveRow& row : t.rows) minModulus = std::min(minModulus, row.modulus_incr);
        r.check(std::string(to_string(k)) + ": driving stress strictly increasing over " + std::to_string(t.rows.size()) +
                    " rows",
                strictly_increasing(t.rows, &CurveRow::stress_driving));
        r.check(std::string(to_string(k)) + ": min modulus " + num(minModulus) + " > 0", minModulus > 0.0);
    }
    return r.finish(3, "exp-Hencky sweeps are monotone with positive incremental moduli");
}

bool criterion4(Report& r) {
    ScanOptions opts;
    opts.grid = {0.5, 3.0, 11};
    const auto counts = [&](const MaterialModel& m) { return region_scan(m, opts).violation_counts(); };
    const auto eh = counts(exp_hencky());
    const auto qh = counts(quad_hencky());
    const auto nh = counts(neo_hooke());
    r.check("exp_hencky csp violations: " + std::to_string(eh.at("csp")) + " (expect 0)", eh.at("csp") == 0);
    r.check("quadratic_hencky csp violations: " + std::to_string(qh.at("csp")) + " (expect > 0)", qh.at("csp") > 0);
    r.check("neo_hooke_vol_iso csp violations: " + std::to_string(nh.at("csp")) + " (expect > 0)", nh.at("csp") > 0);
    r.check("quadratic_hencky hill violations on unimodular slices: tangent " + std::to_string(qh.at("hill")) +
                ", pairs " + std::to_string(qh.at("hill_pair")) + " (expect 0)",
            qh.at("hill") == 0 && qh.at("hill_pair") == 0);
    return r.finish(4, "region scan verdicts on [0.5, 3]^3, 11^3 grid");
}

bool criterion5(Report& r) {
    for (const MaterialModel& m : catalog()) {
        const double mu = m.constants().mu();
        const double lambda = m.constants().lambda();
        const TangentMatrix6 t = stability_tangent(m, SymTensor3::identity());
        double shear = 0.0;
        for (std::size_t i = 0; i < 5; ++i) shear = std::max(shear, std::abs(t.eigenvalues[i] - 2 * mu));
        const double bulk = t.eigenvalues[5];
        const double expectedBulk = 3 * lambda + 2 * mu;
        const bool bulkOk = std::isinf(expectedBulk) ? std::isinf(bulk) && bulk > 0
                                                     : std::abs(bulk - expectedBulk) <= 1e-4;
        const std::string name(to_string(m.kind()));
        r.check(name + ": 2 mu x5 max dev " + num(shear) + ", 3 lambda + 2 mu " + num(expectedBulk) + " got " + num(bulk),
                shear <= 1e-4 && bulkOk);
        const double e = incremental_moduli(m, Protocol::for_model(m, ProtocolKind::Uniaxial), 1.0).incr;
        r.check(name + ": uniaxial modulus at 1 = " + num(e) + ", E = " + num(m.constants().young()),
                std::abs(e - m.constants().young()) <= 1e-4);
    }
    return r.finish(5, "small-strain limit of the tangent and the uniaxial modulus");
}

bool criterion6(Report& r) {
    const MaterialModel m = quad_hencky();
    const StretchState s(std::exp(1.0), std::exp(-0.3), std::exp(-0.3));
    const LhProbeResult probe = lh_ellipticity_probe(m, s);
    r.check("probe minimum " + num(probe.min_value) + " < 0 at xi = (" + num(probe.xi[0]) + ", " + num(probe.xi[1]) +
                ", " + num(probe.xi[2]) + "), eta = (" + num(probe.eta[0]) + ", " + num(probe.eta[1]) + ", " +
                num(probe.eta[2]) + ")",
            probe.min_value < 0.0);
    double first = std::numeric_limits<double>::quiet_NaN();
    const Protocol uniaxial(ProtocolKind::Uniaxial, Regime::Compressible);
    for (double l = 2.5; l <= 5.0; l += 0.05) {
        if (lh_ellipticity_probe(m, lateral_closure(m, uniaxial, l).state, 200, 20).min_value < 0.0) {
            first = l;
            break;
        }
    }
    r.detail("info along the uniaxial closure the probe first turns negative near lambda1 = " + num(first));
    return r.finish(6, "LH-ellipticity witness for quadratic Hencky at diag(e, e^-0.3, e^-0.3)");
}

bool criterion7(Report& r) {
    constexpr int kCases = 1000;
    testkit::TensorRng rng(2024);

    double logRound = 0.0;
    for (int n = 0; n < kCases; ++n) {
        const SymTensor3 v = rng.spd(0.05, 20.0);
        logRound = std::max(logRound, norm(exp_sym(log_spd(v)) - v) / norm(v));
    }
    r.check("log/exp round trip, max rel residual " + num(logRound) + " (tol 1e-10)", logRound <= 1e-10);

    double iso = 0.0;
    for (int n = 0; n < kCases; ++n) {
        const SymTensor3 a = rng.symmetric();
        const SymTensor3 b = rng.symmetric();
        const Vec6 va = vec6(a);
        const Vec6 vb = vec6(b);
        double dot = 0.0;
        for (std::size_t k = 0; k < 6; ++k) dot += va[k] * vb[k];
        iso = std::max(iso, std::abs(dot - inner(a, b)) / (norm(a) * norm(b)));
    }
    r.check("vec6 isometry, max rel residual " + num(iso) + " (tol 1e-14)", iso <= 1e-14);

    const std::vector<MaterialModel> compressible = {exp_hencky(), quad_hencky(), neo_hooke()};
    double power = 0.0;
    double work = 0.0;
    double csp = 0.0;
    for (int n = 0; n < kCases; ++n) {
        const MaterialModel& m = compressible[static_cast<std::size_t>(n) % compressible.size()];
        const MotionSample motion(rng.deformation(0.6, 1.8), rng.matrix(0.5), rng.matrix(0.5));
        const PowerIdentity p = internal_power(m, motion);
        power = std::max(power, rel_err(p.referential, p.spatial));
        const SecondOrderWork w = second_order_work_identity(m, motion);
        work = std::max({work, rel_err(w.referential, w.direct), rel_err(w.spatial, w.direct)});
        const Vec3 l0{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
        const Vec3 rate{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const RateForm f = csp_rate_form(m, exponential_path(l0, rate), rng.uniform(0.0, 0.5));
        csp = std::max(csp, rel_err(f.lhs, f.rhs));
    }
    r.check("power identity <S1, Fdot> = J <sigma, D>, max rel err " + num(power) + " (tol 1e-8)", power <= 1e-8);
    r.check("second-order work, referential/spatial vs direct, max rel err " + num(work) + " (tol 1e-5)", work <= 1e-5);
    r.check("csp rate form lhs = rhs, max rel err " + num(csp) + " (tol 1e-6)", csp <= 1e-6);

    double minMono = std::numeric_limits<double>::infinity();
    for (int n = 0; n < kCases; ++n) {
        const SymTensor3 b1 = rng.spd(0.1, 10.0);
        const SymTensor3 b2 = rng.spd(0.1, 10.0);
        minMono = std::min(minMono, inner(b1 - b2, log_spd(b1) - log_spd(b2)) / (norm(b1 - b2) * norm(b1 - b2)));
    }
    const SymTensor3 b1 = SymTensor3::diag({4, 1, 1});
    const double worked = inner(b1 - SymTensor3::identity(), log_spd(b1) - log_spd(SymTensor3::identity()));
    r.check("log monotonicity, min <B1-B2, log B1 - log B2>/|B1-B2|^2 = " + num(minMono) + " > 0", minMono > 0.0);
    r.check("worked pair diag(4,1,1) vs I: " + num(worked) + ", 3 ln 4 = " + num(3 * std::log(4.0)),
            std::abs(worked - 3 * std::log(4.0)) <= 1e-12);
    return r.finish(7, "identity suites (1000 random cases each)");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion8(Report& r) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "corostab_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string exe = COROSTAB_EXECUTABLE;
    const auto run = [&](const std::string& args) { return std::system(("\"" + exe + "\" " + args).c_str()); };

    const std::string scanArgs =
        "scan --model quadratic_hencky --E 1 --nu 0.3 --grid 0.5:3:11 --seed 17 --pairs 500 --out ";
    const std::string sweepArgs =
        "sweep --model exp_hencky --mu 1 --lambda-lame 2 --k 1 --khat 1 --protocol planar --steps 200 --out ";
    bool ran = true;
    for (const char* tag : {"a", "b"}) {
        ran = ran && run(scanArgs + "\"" + (dir / (std::string("scan_") + tag + ".csv")).string() + "\"") == 0;
        ran = ran && run(sweepArgs + "\"" + (dir / (std::string("sweep_") + tag + ".csv")).string() + "\"") == 0;
    }
    r.check("all four invocations exited 0", ran);
    for (const char* file : {"scan_%s.csv", "scan_%s.json", "sweep_%s.csv"}) {
        char a[64];
        char b[64];
        std::snprintf(a, sizeof a, file, "a");
        std::snprintf(b, sizeof b, file, "b");
        const std::string da = slurp(dir / a);
        const std::string db = slurp(dir / b);
        r.check(std::string(a) + " vs " + b + ": " + std::to_string(da.size()) + " bytes, identical",
                !da.empty() && da == db);
    }
    std::filesystem::remove_all(dir);
    return r.finish(8, "repeated scan and sweep runs are byte-identical");
}

}  // namespace

int main() {
    Report report;
    int failures = 0;
    const std::vector<std::function<bool(Report&)>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                                criterion5, criterion6, criterion7, criterion8};
    for (const auto& c : criteria) {
        try {
            if (!c(report)) ++failures;
        } catch (const std::exception& e) {
            report.check(std::string("exception: ") + e.what(), false);
            report.finish(static_cast<int>(&c - criteria.data()) + 1, "aborted");
            ++failures;
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
              << " criteria passed\n";
    return failures;
}
