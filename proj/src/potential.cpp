#include "deltachannel/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deltachannel/errors.hpp"

namespace deltachannel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double tabulated_value(const potentials::Tabulated& tab, double x) {
    const auto& s = tab.samples;
    if (s.empty()) return 0.0;
    if (x <= s.front().x) return s.front().v;
    if (x >= s.back().x) return s.back().v;
    auto hi = std::upper_bound(s.begin(), s.end(), x,
                               [](double lhs, const potentials::Sample& rhs) { return lhs < rhs.x; });
    auto lo = hi - 1;
    const double w = (x - lo->x) / (hi->x - lo->x);
    return lo->v + w * (hi->v - lo->v);
}

}  // namespace

const char* kind_name(const PotentialSpec& p) {
    return std::visit(overloaded{
                          [](const potentials::Constant&) { return "constant"; },
                          [](const potentials::Step&) { return "step"; },
                          [](const potentials::Linear&) { return "linear"; },
                          [](const potentials::Harmonic&) { return "harmonic"; },
                          [](const potentials::Morse&) { return "morse"; },
                          [](const potentials::Exponential&) { return "exponential"; },
                          [](const potentials::Tabulated&) { return "tabulated"; },
                      },
                      p);
}

double potential_value(const PotentialSpec& p, double x) {
    return std::visit(
        overloaded{
            [](const potentials::Constant& c) { return c.v0; },
            [x](const potentials::Step& s) { return x < s.x_step ? s.v_left : s.v_right; },
            [x](const potentials::Linear& l) {
                return l.slope * std::clamp(x, l.x_lo, l.x_hi) + l.v_at_origin;
            },
            [x](const potentials::Harmonic& h) {
                const double d = x - h.center;
                return 0.5 * h.force_const * d * d + h.v_min;
            },
            [x](const potentials::Morse& m) {
                const double f = 1.0 - std::exp(-m.width_param * (x - m.center));
                return m.depth * f * f + m.v_offset;
            },
            [x](const potentials::Exponential& e) {
                return e.amplitude * std::exp(-e.decay * x) + e.v_offset;
            },
            [x](const potentials::Tabulated& t) { return tabulated_value(t, x); },
        },
        p);
}

double asymptote(const PotentialSpec& p, Side side, const Box& box) {
    const bool left = side == Side::left;
    return std::visit(
        overloaded{
            [](const potentials::Constant& c) { return c.v0; },
            [left](const potentials::Step& s) { return left ? s.v_left : s.v_right; },
            [left](const potentials::Linear& l) {
                return l.slope * (left ? l.x_lo : l.x_hi) + l.v_at_origin;
            },
            [left](const potentials::Tabulated& t) {
                if (t.samples.empty()) return 0.0;
                return left ? t.samples.front().v : t.samples.back().v;
            },
            [&](const auto&) { return potential_value(p, left ? box.x_min : box.x_max); },
        },
        p);
}

std::optional<double> intrinsic_limit(const PotentialSpec& p, Side side) {
    const bool left = side == Side::left;
    return std::visit(
        overloaded{
            [](const potentials::Constant& c) -> std::optional<double> { return c.v0; },
            [left](const potentials::Step& s) -> std::optional<double> {
                return left ? s.v_left : s.v_right;
            },
            [left](const potentials::Linear& l) -> std::optional<double> {
                return l.slope * (left ? l.x_lo : l.x_hi) + l.v_at_origin;
            },
            [left](const potentials::Tabulated& t) -> std::optional<double> {
                if (t.samples.empty()) return std::nullopt;
                return left ? t.samples.front().v : t.samples.back().v;
            },
            [](const potentials::Harmonic&) -> std::optional<double> { return std::nullopt; },
            [left](const potentials::Morse& m) -> std::optional<double> {
                if (m.depth == 0.0 || m.width_param == 0.0) return m.depth + m.v_offset;
                // exp(-a (x - c)) vanishes on the right for a > 0
                if ((m.width_param > 0.0) != left) return m.depth + m.v_offset;
                return std::nullopt;
            },
            [left](const potentials::Exponential& e) -> std::optional<double> {
                if (e.amplitude == 0.0) return e.v_offset;
                if (e.decay == 0.0) return e.amplitude + e.v_offset;
                if ((e.decay > 0.0) != left) return e.v_offset;
                return std::nullopt;
            },
        },
        p);
}

std::vector<double> breakpoints(const PotentialSpec& p) {
    return std::visit(overloaded{
                          [](const potentials::Step& s) { return std::vector<double>{s.x_step}; },
                          [](const potentials::Linear& l) {
                              return std::vector<double>{l.x_lo, l.x_hi};
                          },
                          [](const potentials::Tabulated& t) {
                              std::vector<double> xs;
                              xs.reserve(t.samples.size());
                              for (const auto& s : t.samples) xs.push_back(s.x);
                              return xs;
                          },
                          [](const auto&) { return std::vector<double>{}; },
                      },
                      p);
}

bool is_piecewise_constant(const PotentialSpec& p) {
    return std::holds_alternative<potentials::Constant>(p) ||
           std::holds_alternative<potentials::Step>(p);
}

Openness classify_asymptote(double v_asym, double energy, const UnitSystem& units) {
    const double gap = energy - v_asym;
    if (std::abs(gap) <= threshold_epsilon) {
        throw ThresholdSingularity("energy " + std::to_string(energy) +
                                   " is at the asymptotic threshold " + std::to_string(v_asym));
    }
    const double wavenumber = std::sqrt(2.0 * units.mass * std::abs(gap)) / units.hbar;
    return {gap > 0.0 ? Openness::Kind::open : Openness::Kind::closed, wavenumber};
}

Openness channel_openness(const PotentialSpec& p, double energy, Side side,
                          const UnitSystem& units, const Box& box) {
    return classify_asymptote(asymptote(p, side, box), energy, units);
}

}  // namespace deltachannel
