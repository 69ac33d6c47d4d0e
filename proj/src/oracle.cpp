#include "deltachannel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deltachannel/errors.hpp"

namespace deltachannel::oracle {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double min_rcond = 1e-12;

// Basis function sampled at a matching point: true value = exp(log_amp) * (value, deriv).
struct Sampled {
    cplx value;
    cplx deriv;
    double log_amp = 0.0;
};

Sampled normalized(const WaveState& s) {
    const double norm = std::max(std::abs(s.psi), std::abs(s.dpsi));
    return {s.psi / norm, s.dpsi / norm, s.log_scale + std::log(norm)};
}

cplx true_value(const WaveState& s) { return s.psi * std::exp(s.log_scale); }
cplx true_deriv(const WaveState& s) { return s.dpsi * std::exp(s.log_scale); }

Openness classify(const PotentialSpec& p, double energy, Side side, const ScatteringModel& model,
                  int channel) {
    try {
        return channel_openness(p, energy, side, model.units, model.box);
    } catch (const ThresholdSingularity& e) {
        rethrow_for_channel(e, channel);
    }
}

// Outgoing/decaying solutions of one coupled channel around its crossing.
// Each carries unit plane-wave amplitude at its own box edge (open case).
struct ChannelBasis {
    Openness left, right;
    Sampled u_left, u_right;
};

ChannelBasis channel_basis(const CoupledChannel& ch, double energy, const ScatteringModel& model,
                           const IntegratorConfig& quad) {
    const int n = ch.coupling.channel_index;
    const double x = ch.coupling.crossing_point;
    ChannelBasis b;
    b.left = classify(ch.potential, energy, Side::left, model, n);
    b.right = classify(ch.potential, energy, Side::right, model, n);

    const cplx dl = b.left.is_open() ? -I * b.left.wavenumber : cplx{b.left.wavenumber};
    const cplx dr = b.right.is_open() ? I * b.right.wavenumber : cplx{-b.right.wavenumber};

    if (std::holds_alternative<potentials::Constant>(ch.potential)) {
        // exp(-ik(x - x_n)), exp(+ik(x - x_n)) or the decaying analogues.
        b.u_left = {1.0, dl, 0.0};
        b.u_right = {1.0, dr, 0.0};
        return b;
    }
    try {
        b.u_left = normalized(
            propagate(ch.potential, energy, model.units, model.box.x_min, x, {1.0, dl, 0.0}, quad));
        b.u_right = normalized(
            propagate(ch.potential, energy, model.units, model.box.x_max, x, {1.0, dr, 0.0}, quad));
    } catch (const IntegrationFailure& e) {
        rethrow_for_channel(e, n);
    }
    return b;
}

struct Crossing {
    double position;
    std::vector<std::size_t> channels;  // indices into model.coupled
};

}  // namespace

CoupledSolution solve_coupled_system(const ScatteringModel& model, double energy,
                                     const IntegratorConfig& quad) {
    const auto& units = model.units;
    const double kf = units.kinetic_factor();

    const Openness in = classify(model.channel1, energy, Side::left, model, 1);
    const Openness out = classify(model.channel1, energy, Side::right, model, 1);
    if (!in.is_open()) {
        throw PreconditionError("channel 1 is closed on the incidence side", 1);
    }
    const double k_in = in.wavenumber;

    std::vector<Crossing> crossings;
    for (std::size_t c = 0; c < model.coupled.size(); ++c) {
        const double x = model.coupled[c].coupling.crossing_point;
        auto it = std::find_if(crossings.begin(), crossings.end(),
                               [x](const Crossing& k) { return k.position == x; });
        if (it == crossings.end()) {
            crossings.push_back({x, {c}});
        } else {
            it->channels.push_back(c);
        }
    }
    if (crossings.empty()) {
        // No couplings: match channel 1 across an empty point.
        crossings.push_back({0.5 * (model.box.x_min + model.box.x_max), {}});
    }
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.position < b.position; });
    const std::size_t M = crossings.size();

    std::vector<ChannelBasis> bases;
    bases.reserve(model.coupled.size());
    for (const auto& ch : model.coupled) bases.push_back(channel_basis(ch, energy, model, quad));

    // Channel-1 free solutions f_in ~ exp(+ik x), f_out ~ exp(-ik x) launched
    // from the left edge, and u_out ~ outgoing/decaying launched from the right.
    std::vector<WaveState> f_in(M), f_out(M);
    WaveState u_out;
    {
        const bool analytic = std::holds_alternative<potentials::Constant>(model.channel1);
        if (analytic) {
            for (std::size_t m = 0; m < M; ++m) {
                const double x = crossings[m].position;
                const cplx e = std::exp(I * k_in * x);
                f_in[m] = {e, I * k_in * e, 0.0};
                f_out[m] = {1.0 / e, -I * k_in / e, 0.0};
            }
            const double x = crossings.back().position;
            const cplx e = std::exp(I * out.wavenumber * x);
            u_out = {e, I * out.wavenumber * e, 0.0};
        } else {
            const double x0 = model.box.x_min;
            const cplx e = std::exp(I * k_in * x0);
            WaveState a{e, I * k_in * e, 0.0};
            WaveState b{1.0 / e, -I * k_in / e, 0.0};
            double at = x0;
            for (std::size_t m = 0; m < M; ++m) {
                const double x = crossings[m].position;
                a = propagate(model.channel1, energy, units, at, x, a, quad);
                b = propagate(model.channel1, energy, units, at, x, b, quad);
                f_in[m] = a;
                f_out[m] = b;
                at = x;
            }
            const double x1 = model.box.x_max;
            WaveState start;
            if (out.is_open()) {
                const cplx e1 = std::exp(I * out.wavenumber * x1);
                start = {e1, I * out.wavenumber * e1, 0.0};
            } else {
                start = {1.0, -out.wavenumber, -out.wavenumber * x1};
            }
            u_out = propagate(model.channel1, energy, units, x1, crossings.back().position, start,
                              quad);
        }
    }

    // Unknown layout.
    const std::size_t n_channels = model.coupled.size();
    const std::size_t size = 2 * M + 2 * n_channels;
    const std::size_t col_r = 0;
    auto col_alpha = [](std::size_t region) { return 1 + 2 * (region - 1); };
    auto col_beta = [](std::size_t region) { return 2 + 2 * (region - 1); };
    const std::size_t col_t = 2 * M - 1;
    const std::size_t channel_base = 2 * M;
    auto col_a = [&](std::size_t c) { return channel_base + 2 * c; };
    auto col_b = [&](std::size_t c) { return channel_base + 2 * c + 1; };

    MatchingSystem sys;
    sys.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    sys.rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size));
    sys.unknowns.resize(size);
    sys.unknowns[col_r] = "r";
    for (std::size_t j = 1; j < M; ++j) {
        sys.unknowns[col_alpha(j)] = "alpha_" + std::to_string(j);
        sys.unknowns[col_beta(j)] = "beta_" + std::to_string(j);
    }
    sys.unknowns[col_t] = "t";
    for (std::size_t c = 0; c < n_channels; ++c) {
        const std::string n = std::to_string(model.coupled[c].coupling.channel_index);
        sys.unknowns[col_a(c)] = "a_" + n;
        sys.unknowns[col_b(c)] = "b_" + n;
    }

    struct Term {
        std::size_t col;
        cplx value;
        cplx deriv;
    };
    // Channel-1 expansion in `region` evaluated at crossing m. Region 0 also
    // carries the fixed incident wave, returned separately.
    auto region_terms = [&](std::size_t region, std::size_t m, cplx& fixed_v, cplx& fixed_d) {
        std::vector<Term> terms;
        fixed_v = fixed_d = 0.0;
        if (region == 0) {
            fixed_v = true_value(f_in[m]);
            fixed_d = true_deriv(f_in[m]);
            terms.push_back({col_r, true_value(f_out[m]), true_deriv(f_out[m])});
        } else if (region == M) {
            terms.push_back({col_t, true_value(u_out), true_deriv(u_out)});
        } else {
            terms.push_back({col_alpha(region), true_value(f_in[m]), true_deriv(f_in[m])});
            terms.push_back({col_beta(region), true_value(f_out[m]), true_deriv(f_out[m])});
        }
        return terms;
    };

    auto& A = sys.matrix;
    auto& rhs = sys.rhs;
    Eigen::Index row = 0;
    for (std::size_t m = 0; m < M; ++m) {
        cplx lv, ld, rv, rd;
        const auto left = region_terms(m, m, lv, ld);
        const auto right = region_terms(m + 1, m, rv, rd);

        const Eigen::Index cont = row++;
        const Eigen::Index jump = row++;
        for (const auto& t : right) {
            A(cont, t.col) += t.value;
            A(jump, t.col) += t.deriv;
        }
        for (const auto& t : left) {
            A(cont, t.col) -= t.value;
            A(jump, t.col) -= t.deriv;
        }
        rhs(cont) = lv - rv;
        rhs(jump) = ld - rd;

        for (std::size_t c : crossings[m].channels) {
            const double k0 = model.coupled[c].coupling.bare_strength;
            const auto& b = bases[c];
            A(jump, col_a(c)) -= kf * k0 * b.u_left.value;

            const Eigen::Index cn = row++;
            const Eigen::Index jn = row++;
            A(cn, col_a(c)) = b.u_left.value;
            A(cn, col_b(c)) = -b.u_right.value;
            A(jn, col_b(c)) = b.u_right.deriv;
            A(jn, col_a(c)) = -b.u_left.deriv;
            for (const auto& t : left) A(jn, t.col) -= kf * k0 * t.value;
            rhs(jn) = kf * k0 * lv;
        }
    }

    sys.column_scale = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(size));
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
        const double mx = A.col(c).cwiseAbs().maxCoeff();
        if (mx > 0.0) {
            sys.column_scale(c) = 1.0 / mx;
            A.col(c) *= sys.column_scale(c);
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    sys.rcond = lu.rcond();
    if (!(sys.rcond >= min_rcond)) {
        throw NumericalBreakdown("coupled matching system is ill-conditioned (rcond = " +
                                 std::to_string(sys.rcond) + ")");
    }
    Eigen::VectorXcd x = lu.solve(rhs);
    for (Eigen::Index c = 0; c < x.size(); ++c) x(c) *= sys.column_scale(c);

    TransitionResult res;
    res.energy = energy;
    res.mode = SolveMode::exact;
    res.R = std::norm(x(col_r));
    res.T_elastic = out.is_open() ? out.wavenumber / k_in * std::norm(x(col_t)) : 0.0;
    for (std::size_t c = 0; c < n_channels; ++c) {
        const auto& b = bases[c];
        double flux = 0.0;
        if (b.left.is_open()) {
            flux += b.left.wavenumber * std::norm(x(col_a(c))) * std::exp(-2.0 * b.u_left.log_amp);
        }
        if (b.right.is_open()) {
            flux += b.right.wavenumber * std::norm(x(col_b(c))) * std::exp(-2.0 * b.u_right.log_amp);
        }
        res.T_1n.push_back({model.coupled[c].coupling.channel_index, flux / k_in});
    }
    std::sort(res.T_1n.begin(), res.T_1n.end(),
              [](const auto& a, const auto& b) { return a.channel < b.channel; });
    res.unitarity_defect = unitarity_defect(res.R, res.T_elastic, res.T_1n);
    return {std::move(res), std::move(sys)};
}

TransitionResult solve_coupled_exact(const ScatteringModel& model, double energy,
                                     const IntegratorConfig& quad) {
    return solve_coupled_system(model, energy, quad).result;
}

double oracle_unitarity(const TransitionResult& result) {
    return unitarity_defect(result.R, result.T_elastic, result.T_1n);
}

}  // namespace deltachannel::oracle
