#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace deltachannel {

/// Reduced units by default.
struct UnitSystem {
    double hbar = 1.0;
    double mass = 1.0;

    /// 2m/hbar^2, the factor between (V - E) and psi''/psi.
    double kinetic_factor() const { return 2.0 * mass / (hbar * hbar); }
};

/// Computational box. Potentials are treated as constant beyond it.
struct Box {
    double x_min = -20.0;
    double x_max = 20.0;
};

enum class Side { left, right };

namespace potentials {

struct Constant {
    double v0 = 0.0;
};

/// v_left for x < x_step, v_right for x >= x_step.
struct Step {
    double v_left = 0.0;
    double v_right = 0.0;
    double x_step = 0.0;
};

/// slope * x + v_at_origin inside [x_lo, x_hi], held at the window-edge values outside.
struct Linear {
    double slope = 0.0;
    double v_at_origin = 0.0;
    double x_lo = -1.0;
    double x_hi = 1.0;
};

/// 0.5 * force_const * (x - center)^2 + v_min
struct Harmonic {
    double force_const = 1.0;
    double center = 0.0;
    double v_min = 0.0;
};

/// depth * (1 - exp(-width_param * (x - center)))^2 + v_offset
struct Morse {
    double depth = 1.0;
    double width_param = 1.0;
    double center = 0.0;
    double v_offset = 0.0;
};

/// amplitude * exp(-decay * x) + v_offset
struct Exponential {
    double amplitude = 1.0;
    double decay = 1.0;
    double v_offset = 0.0;
};

struct Sample {
    double x;
    double v;
};

/// Piecewise-linear through the samples, clamped to the end values outside.
struct Tabulated {
    std::vector<Sample> samples;
};

}  // namespace potentials

using PotentialSpec = std::variant<potentials::Constant, potentials::Step, potentials::Linear,
                                   potentials::Harmonic, potentials::Morse,
                                   potentials::Exponential, potentials::Tabulated>;

const char* kind_name(const PotentialSpec& p);

double potential_value(const PotentialSpec& p, double x);

/// Asymptotic value on `side`. Variants with a built-in plateau (Constant,
/// Step, Linear, Tabulated) report it; Harmonic, Morse and Exponential are
/// flattened at the box edge and report the edge value.
double asymptote(const PotentialSpec& p, Side side, const Box& box);

/// The analytic limit x -> +-inf when it is finite, nullopt when the variant
/// diverges on that side or is box-flattened by construction (Harmonic).
std::optional<double> intrinsic_limit(const PotentialSpec& p, Side side);

/// Points where the potential or its derivative is discontinuous.
std::vector<double> breakpoints(const PotentialSpec& p);

bool is_piecewise_constant(const PotentialSpec& p);

/// Threshold tolerance for |E - v_asym|.
inline constexpr double threshold_epsilon = 1e-9;

struct Openness {
    enum class Kind { open, closed };
    Kind kind;
    /// k when open, kappa when closed.
    double wavenumber;

    bool is_open() const { return kind == Kind::open; }
};

/// Classifies the asymptotic wave at `side`. Throws ThresholdSingularity
/// within threshold_epsilon of the asymptotic value.
Openness channel_openness(const PotentialSpec& p, double energy, Side side,
                          const UnitSystem& units, const Box& box);

/// Same classification for a bare asymptotic potential value.
Openness classify_asymptote(double v_asym, double energy, const UnitSystem& units);

}  // namespace deltachannel
