#include "deltachannel/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deltachannel/errors.hpp"

namespace deltachannel {

namespace {

constexpr cplx I{0.0, 1.0};

WaveState left_edge_state(const Openness& o) {
    return o.is_open() ? WaveState{1.0, -I * o.wavenumber, 0.0}
                       : WaveState{1.0, o.wavenumber, 0.0};
}

WaveState right_edge_state(const Openness& o) {
    return o.is_open() ? WaveState{1.0, I * o.wavenumber, 0.0}
                       : WaveState{1.0, -o.wavenumber, 0.0};
}

// W(u1, u2) relative to W_ref, with both log scales accounted for.
double relative_change(cplx w, double log_w, cplx w_ref, double log_ref) {
    return std::abs(w / w_ref * std::exp(log_w - log_ref) - 1.0);
}

}  // namespace

GreensPointValue greens_constant(double v0, double energy, const UnitSystem& units) {
    const Openness o = classify_asymptote(v0, energy, units);
    const double scale = units.mass / (units.hbar * units.hbar * o.wavenumber);
    GreensPointValue g;
    g.value = o.is_open() ? cplx{0.0, -scale} : cplx{-scale, 0.0};
    g.left = o;
    g.right = o;
    g.method = GreensMethod::analytic;
    return g;
}

BasisSolutionPair basis_pair(const PotentialSpec& p, double x_pt, double energy,
                             const UnitSystem& units, const Box& box,
                             const IntegratorConfig& quad) {
    const Openness left = channel_openness(p, energy, Side::left, units, box);
    const Openness right = channel_openness(p, energy, Side::right, units, box);

    const WaveState left_edge = left_edge_state(left);
    const WaveState right_edge = right_edge_state(right);

    BasisSolutionPair pair;
    pair.u_left = propagate(p, energy, units, box.x_min, x_pt, left_edge, quad);
    pair.u_right = propagate(p, energy, units, box.x_max, x_pt, right_edge, quad);
    pair.wronskian = raw_wronskian(pair.u_left, pair.u_right);

    const auto& ul = pair.u_left;
    const auto& ur = pair.u_right;
    const double size = std::abs(ul.psi) * std::abs(ur.dpsi) + std::abs(ul.dpsi) * std::abs(ur.psi);
    if (!(std::abs(pair.wronskian) >= quad.pole_tol * size)) {
        throw PoleProximity("energy " + std::to_string(energy) +
                            " is at or near a bound state of the uncoupled channel");
    }

    // Carry each solution on to the opposite edge and compare Wronskians.
    const double log_pt = ul.log_scale + ur.log_scale;
    const WaveState ul_far = propagate(p, energy, units, x_pt, box.x_max, ul, quad);
    const WaveState ur_far = propagate(p, energy, units, x_pt, box.x_min, ur, quad);
    const double at_right = relative_change(raw_wronskian(ul_far, right_edge), ul_far.log_scale,
                                            pair.wronskian, log_pt);
    const double at_left = relative_change(raw_wronskian(left_edge, ur_far), ur_far.log_scale,
                                           pair.wronskian, log_pt);
    pair.wronskian_drift = std::max(at_left, at_right);
    return pair;
}

GreensPointValue greens_point_numeric(const PotentialSpec& p, double x_pt, double energy,
                                      const UnitSystem& units, const Box& box,
                                      const IntegratorConfig& quad) {
    if (!(x_pt > box.x_min && x_pt < box.x_max)) {
        throw PreconditionError("Green's function point " + std::to_string(x_pt) +
                                " is not strictly inside the box");
    }
    const BasisSolutionPair pair = basis_pair(p, x_pt, energy, units, box, quad);

    // G(x, x) = (2m/hbar^2) u_left(x) u_right(x) / W; scale factors cancel.
    GreensPointValue g;
    g.value = units.kinetic_factor() * pair.u_left.psi * pair.u_right.psi / pair.wronskian;
    g.left = channel_openness(p, energy, Side::left, units, box);
    g.right = channel_openness(p, energy, Side::right, units, box);
    g.method = GreensMethod::numeric;
    g.wronskian_drift = pair.wronskian_drift;
    return g;
}

GreensPointValue greens_point(const PotentialSpec& p, double x_pt, double energy,
                              const UnitSystem& units, const Box& box,
                              const IntegratorConfig& quad) {
    if (const auto* c = std::get_if<potentials::Constant>(&p)) {
        return greens_constant(c->v0, energy, units);
    }
    return greens_point_numeric(p, x_pt, energy, units, box, quad);
}

}  // namespace deltachannel
