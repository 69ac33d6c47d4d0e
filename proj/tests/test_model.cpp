#include <doctest.h>

#include <cmath>
#include <random>

#include "deltachannel/errors.hpp"
#include "deltachannel/model.hpp"

using namespace deltachannel;

namespace {

ScatteringModel flat_pair() {
    ScatteringModel m;
    m.channel1 = potentials::Constant{0.0};
    m.coupled.push_back({potentials::Constant{0.0}, {2, 0.0, 0.5}});
    return m;
}

bool mentions(const std::vector<std::string>& msgs, const std::string& what) {
    for (const auto& m : msgs) {
        if (m.find(what) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("potential_value across the catalog") {
    CHECK(potential_value(potentials::Constant{0.5}, 3.0) == 0.5);
    CHECK(potential_value(potentials::Step{0.0, 1.0, 0.0}, -1.0) == 0.0);
    CHECK(potential_value(potentials::Step{0.0, 1.0, 0.0}, 1.0) == 1.0);
    CHECK(potential_value(potentials::Tabulated{{{0, 0}, {1, 2}}}, 0.5) == doctest::Approx(1.0));
    CHECK(potential_value(potentials::Tabulated{{{0, 0}, {1, 2}}}, -4.0) == 0.0);
    CHECK(potential_value(potentials::Tabulated{{{0, 0}, {1, 2}}}, 9.0) == 2.0);

    const potentials::Linear lin{2.0, 1.0, -1.0, 3.0};
    CHECK(potential_value(lin, 0.5) == doctest::Approx(2.0));
    CHECK(potential_value(lin, -5.0) == doctest::Approx(-1.0));
    CHECK(potential_value(lin, 5.0) == doctest::Approx(7.0));

    CHECK(potential_value(potentials::Harmonic{2.0, 1.0, 0.5}, 3.0) == doctest::Approx(4.5));
    CHECK(potential_value(potentials::Morse{1.0, 1.0, 0.0, 0.2}, 0.0) == doctest::Approx(0.2));
    CHECK(potential_value(potentials::Exponential{2.0, 1.0, 0.1}, 0.0) == doctest::Approx(2.1));
}

TEST_CASE("edge values match reported asymptotes") {
    const Box box{-15.0, 25.0};
    const std::vector<PotentialSpec> catalog{
        potentials::Constant{0.3},
        potentials::Step{0.1, -0.4, 2.0},
        potentials::Linear{0.5, 0.0, -2.0, 2.0},
        potentials::Harmonic{1.0, 0.0, 0.0},
        potentials::Morse{1.0, 0.7, 0.0, 0.1},
        potentials::Exponential{1.0, 0.5, 0.2},
        potentials::Tabulated{{{-3, 0.0}, {0, 0.8}, {3, 0.2}}},
    };
    for (const auto& p : catalog) {
        CAPTURE(kind_name(p));
        CHECK(std::abs(potential_value(p, box.x_min) - asymptote(p, Side::left, box)) < 1e-12);
        CHECK(std::abs(potential_value(p, box.x_max) - asymptote(p, Side::right, box)) < 1e-12);
    }
}

TEST_CASE("intrinsic limits") {
    CHECK(!intrinsic_limit(potentials::Harmonic{}, Side::left));
    CHECK(*intrinsic_limit(potentials::Morse{2.0, 1.0, 0.0, 0.5}, Side::right) == 2.5);
    CHECK(!intrinsic_limit(potentials::Morse{2.0, 1.0, 0.0, 0.5}, Side::left));
    CHECK(*intrinsic_limit(potentials::Exponential{2.0, 1.0, 0.5}, Side::right) == 0.5);
    CHECK(!intrinsic_limit(potentials::Exponential{2.0, 1.0, 0.5}, Side::left));
}

TEST_CASE("channel_openness") {
    const UnitSystem u;
    const Box box;
    const auto open = channel_openness(potentials::Constant{0.0}, 0.5, Side::left, u, box);
    CHECK(open.is_open());
    CHECK(open.wavenumber == doctest::Approx(1.0));

    const auto closed = channel_openness(potentials::Constant{1.0}, 0.5, Side::left, u, box);
    CHECK(!closed.is_open());
    CHECK(closed.wavenumber == doctest::Approx(1.0));

    CHECK_THROWS_AS(channel_openness(potentials::Constant{0.5}, 0.5, Side::left, u, box),
                    ThresholdSingularity);

    const UnitSystem heavy{2.0, 8.0};
    // k = sqrt(2 m (E - V)) / hbar = sqrt(16 * 0.5) / 2
    CHECK(channel_openness(potentials::Constant{0.0}, 0.5, Side::left, heavy, box).wavenumber ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("openness is monotone in energy") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> e(-3.0, 3.0);
    const UnitSystem u;
    const Box box;
    const PotentialSpec p = potentials::Step{0.4, -0.7, 0.0};
    for (int i = 0; i < 500; ++i) {
        double a = e(rng), b = e(rng);
        if (a > b) std::swap(a, b);
        for (Side side : {Side::left, Side::right}) {
            try {
                const bool lo = channel_openness(p, a, side, u, box).is_open();
                const bool hi = channel_openness(p, b, side, u, box).is_open();
                CHECK(!(lo && !hi));
            } catch (const ThresholdSingularity&) {
            }
        }
    }
}

TEST_CASE("validate_model") {
    CHECK(validate_model(flat_pair()).ok());

    auto edge = flat_pair();
    edge.coupled[0].coupling.crossing_point = edge.box.x_max;
    CHECK(mentions(validate_model(edge).violations, "crossing at box edge"));

    auto outside = flat_pair();
    outside.coupled[0].coupling.crossing_point = 100.0;
    CHECK(mentions(validate_model(outside).violations, "outside box"));

    auto one_sample = flat_pair();
    one_sample.channel1 = potentials::Tabulated{{{0.0, 1.0}}};
    CHECK(mentions(validate_model(one_sample).violations, "at least 2 samples"));

    auto unsorted = flat_pair();
    unsorted.channel1 = potentials::Tabulated{{{0.0, 1.0}, {0.0, 2.0}}};
    CHECK(mentions(validate_model(unsorted).violations, "strictly increasing"));

    auto units = flat_pair();
    units.units.mass = 0.0;
    CHECK(mentions(validate_model(units).violations, "mass"));

    auto dup = flat_pair();
    dup.coupled.push_back(dup.coupled[0]);
    CHECK(mentions(validate_model(dup).violations, "duplicate"));

    auto negative = flat_pair();
    negative.coupled[0].coupling.bare_strength = -1.0;
    CHECK(!validate_model(negative).ok());
}

TEST_CASE("validate_model warns about a shallow box") {
    auto m = flat_pair();
    m.coupled[0].potential = potentials::Morse{1.0, 0.1, 0.0, 0.0};  // tail ~ exp(-2) at x_max
    const auto report = validate_model(m);
    CHECK(report.ok());
    CHECK(mentions(report.warnings, "not in the asymptotic region"));

    auto step = flat_pair();
    step.channel1 = potentials::Step{0.0, 1.0, 50.0};
    CHECK(mentions(validate_model(step).warnings, "differs from the right asymptote"));
}

TEST_CASE("energy grid") {
    CHECK(EnergyGrid{0.5, 0.5, 1}.points() == std::vector<double>{0.5});
    const auto pts = EnergyGrid{0.0, 1.0, 5}.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 0.0);
    CHECK(pts[2] == doctest::Approx(0.5));
    CHECK(pts.back() == 1.0);
    CHECK(!validate_grid({2.0, 1.0, 3}).empty());
    CHECK(!validate_grid({0.0, 1.0, 0}).empty());
}
