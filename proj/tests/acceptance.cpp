// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "deltachannel/config.hpp"
#include "deltachannel/errors.hpp"
#include "deltachannel/greens.hpp"
#include "deltachannel/oracle.hpp"
#include "deltachannel/runner.hpp"
#include "deltachannel/transition.hpp"

using namespace deltachannel;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %d. %s: %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str());
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ScatteringModel flat_model(double k0) {
    ScatteringModel m;
    m.channel1 = potentials::Constant{0.0};
    m.coupled.push_back({potentials::Constant{0.0}, {2, 0.0, k0}});
    return m;
}

struct NamedModel {
    std::string name;
    ScatteringModel model;
    bool numeric;
};

std::vector<NamedModel> equivalence_models() {
    std::vector<NamedModel> out;
    {
        ScatteringModel m;
        m.channel1 = potentials::Constant{0.0};
        m.coupled.push_back({potentials::Constant{0.3}, {2, 0.5, 0.4}});
        out.push_back({"const N=2", m, false});
    }
    {
        ScatteringModel m;
        m.channel1 = potentials::Constant{0.0};
        m.coupled.push_back({potentials::Constant{-0.2}, {2, -1.0, 0.3}});
        m.coupled.push_back({potentials::Constant{0.7}, {3, 1.5, 0.5}});
        out.push_back({"const N=3", m, false});
    }
    {
        ScatteringModel m;
        m.channel1 = potentials::Constant{0.1};
        m.coupled.push_back({potentials::Constant{0.0}, {2, -2.0, 0.2}});
        m.coupled.push_back({potentials::Constant{0.45}, {3, -0.5, 0.35}});
        m.coupled.push_back({potentials::Constant{1.1}, {4, 0.0, 0.6}});
        m.coupled.push_back({potentials::Constant{-0.5}, {5, 0.0, 0.25}});
        out.push_back({"const N=5", m, false});
    }
    const Box box{-10.0, 20.0};
    {
        ScatteringModel m;
        m.box = box;
        m.channel1 = potentials::Step{0.0, -0.2, 1.0};
        m.coupled.push_back({potentials::Morse{1.0, 0.7, -2.0, 0.2}, {2, 2.5, 0.3}});
        out.push_back({"numeric N=2", m, true});
    }
    {
        ScatteringModel m;
        m.box = box;
        m.channel1 = potentials::Linear{-0.1, 0.0, -2.0, 2.0};
        m.coupled.push_back({potentials::Harmonic{1.0, 0.5, 2.5}, {2, 0.0, 0.4}});
        m.coupled.push_back({potentials::Tabulated{{{-2, 0.3}, {0, 0.1}, {2, 0.4}}}, {3, 0.8, 0.4}});
        out.push_back({"numeric N=3", m, true});
    }
    {
        ScatteringModel m;
        m.box = box;
        m.channel1 = potentials::Constant{0.0};
        m.coupled.push_back({potentials::Exponential{0.5, 0.6, -0.1}, {2, -1.5, 0.3}});
        m.coupled.push_back({potentials::Step{0.15, 0.65, 0.5}, {3, 0.0, 0.25}});
        m.coupled.push_back({potentials::Morse{1.0, 0.7, -2.0, 0.2}, {4, 1.0, 0.3}});
        m.coupled.push_back({potentials::Tabulated{{{-2, 0.3}, {0, 0.1}, {2, 0.4}}}, {5, 1.0, 0.2}});
        out.push_back({"numeric N=5", m, true});
    }
    return out;
}

std::vector<fs::path> shipped_configs() {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(DELTACHANNEL_CONFIG_DIR)) {
        if (entry.path().extension() == ".ini") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

int main() {
    const IntegratorConfig quad;

    report(1, "flat two-channel benchmark", [&] {
        const auto model = flat_model(0.5);
        const auto t0 = Clock::now();
        const auto r = compute_point(model, 0.5, {}, quad);
        const double elapsed = seconds_since(t0);
        const double err = std::max({std::abs(r.transition(2) - 0.32), std::abs(r.R - 0.04),
                                     std::abs(r.T_elastic - 0.64)});
        return Outcome{err < 1e-10 && elapsed < 1e-3,
                       "max error " + sci(err) + " (tol 1e-10), runtime " + sci(elapsed) + " s (< 1e-3)"};
    });

    report(2, "reduction equivalence (N = 2, 3, 5)", [&] {
        const EnergyGrid grid{0.23, 2.0, 200};
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& nm : equivalence_models()) {
            const double tol = nm.numeric ? 1e-4 : 1e-6;
            double worst = 0.0;
            int bad_points = 0;
            for (double e : grid.points()) {
                const auto pipe = compute_point(nm.model, e, {}, quad);
                const auto orc = oracle::solve_coupled_exact(nm.model, e, quad);
                for (const auto& p : pipe.T_1n) {
                    const double d = std::abs(p.value - orc.transition(p.channel));
                    if (!(d < tol)) ++bad_points;
                    worst = std::max(worst, d);
                }
            }
            ok = ok && bad_points == 0;
            detail += nm.name + " max " + sci(worst) + " (tol " + sci(tol) + "); ";
        }
        const double elapsed = seconds_since(t0);
        ok = ok && elapsed < 10.0;
        return Outcome{ok, detail + "runtime " + sci(elapsed) + " s (< 10)"};
    });

    report(3, "flux conservation over shipped configs", [&] {
        bool ok = true;
        std::string detail;
        for (const auto& path : shipped_configs()) {
            const auto cfg = load_config(path.string());
            SweepOptions opt;
            opt.point.mode = SolveMode::exact;
            const auto results = energy_sweep(cfg.model, cfg.grid, opt, cfg.quad);
            double worst = 0.0;
            for (const auto& r : results) {
                if (r.status != PointStatus::ok || !(r.unitarity_defect < 1e-8)) ok = false;
                worst = std::max(worst, r.unitarity_defect);
            }
            detail += path.filename().string() + " " + sci(worst) + "; ";
        }
        return Outcome{ok, detail + "tol 1e-8"};
    });

    report(4, "closed-channel nullity", [&] {
        // channel 3 is closed on both sides: Constant (analytic) in one model,
        // a raised oscillator (numeric, levels >= 3) in the other.
        bool ok = true;
        std::string detail;
        for (bool numeric : {false, true}) {
            ScatteringModel m;
            m.box = {-10.0, 10.0};
            m.channel1 = potentials::Constant{0.0};
            m.coupled.push_back({potentials::Constant{0.0}, {2, -0.7, 0.4}});
            m.coupled.push_back({numeric ? PotentialSpec{potentials::Harmonic{1.0, 0.0, 2.5}}
                                         : PotentialSpec{potentials::Constant{1.0}},
                                 {3, 0.6, 0.5}});
            double worst_t = 0.0, worst_ledger = 0.0;
            for (double e : EnergyGrid{0.1, 0.9, 17}.points()) {
                const auto r = compute_point(m, e, {}, quad);
                worst_t = std::max(worst_t, std::abs(r.transition(3)));
                worst_ledger = std::max(worst_ledger, std::abs(r.R + r.T_elastic + r.transition(2) - 1.0));
            }
            ok = ok && worst_t < 1e-10 && worst_ledger < 1e-8;
            detail += std::string(numeric ? "harmonic" : "constant") + " T_13 " + sci(worst_t) +
                      " ledger " + sci(worst_ledger) + "; ";
        }
        return Outcome{ok, detail + "tol 1e-10 / 1e-8"};
    });

    report(5, "Green's engine calibration", [&] {
        const UnitSystem units;
        const Box box;
        double worst = 0.0, drift = 0.0;
        for (double v0 : {0.0, 2.5}) {
            // 50 energies per case: all open for v0 = 0, all closed for v0 = 2.5
            for (double e : EnergyGrid{0.05, 2.0, 50}.points()) {
                const auto a = greens_constant(v0, e, units);
                const auto n = greens_point_numeric(potentials::Constant{v0}, 0.4, e, units, box, quad);
                worst = std::max(worst, std::abs(n.value - a.value) / std::abs(a.value));
                drift = std::max(drift, n.wronskian_drift);
            }
        }
        return Outcome{worst < 1e-8 && drift < 1e-8,
                       "max relative error " + sci(worst) + ", Wronskian drift " + sci(drift) + " (tol 1e-8)"};
    });

    report(6, "Born scaling", [&] {
        const double k0 = 1e-3;
        PointOptions born;
        born.mode = SolveMode::born;
        const double t1 = compute_point(flat_model(k0), 0.5, {}, quad).transition(2);
        const double t2 = compute_point(flat_model(2 * k0), 0.5, {}, quad).transition(2);
        const double b1 = compute_point(flat_model(k0), 0.5, born, quad).transition(2);
        const double ratio = t2 / t1;
        const double gap = std::abs(t1 - b1) / t1;
        return Outcome{ratio >= 3.96 && ratio <= 4.04 && gap < 1e-2,
                       "T(2K0)/T(K0) = " + sci(ratio) + " in [3.96, 4.04], |exact - born|/exact = " +
                           sci(gap) + " (< 1e-2)"};
    });

    report(7, "deterministic output", [&] {
        bool ok = true;
        std::string detail;
        for (const auto& path : shipped_configs()) {
            auto cfg = load_config(path.string());
            cfg.compare_oracle = true;
            std::ostringstream a, b, ea, eb;
            run(cfg, a, ea);
            run(cfg, b, eb);
            const bool same = a.str() == b.str() && !a.str().empty();
            ok = ok && same;
            detail += path.filename().string() + (same ? " identical; " : " DIFFERS; ");
        }
        return Outcome{ok, detail};
    });

    std::printf("%s\n", failures == 0 ? "all acceptance criteria passed"
                                      : (std::to_string(failures) + " criteria failed").c_str());
    return failures == 0 ? 0 : 1;
}
