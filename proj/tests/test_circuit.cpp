#include <doctest.h>

#include <cmath>

#include "kljn/circuit.hpp"
#include "kljn/errors.hpp"
#include "support.hpp"

using namespace kljn;
namespace kt = kljn::testing;

namespace {

Waveform constant(double v, std::size_t n = 8) { return Waveform(std::vector<double>(n, v), 4.0); }

LoopState loop(double ra, double rb) { return LoopState{0, 1, ra, rb}; }

} // namespace

TEST_SUITE("circuit") {

TEST_CASE("generator psd")
{
    CHECK(generator_psd(2.0, PhysicsConstants::normalized_units()) == 2.0);
    CHECK_THROWS_AS(generator_psd(0.0, PhysicsConstants::normalized_units()), ConfigError);
    CHECK_THROWS_AS(generator_psd(-1.0, PhysicsConstants::normalized_units()), ConfigError);
    // 4 * 1.380649e-23 * 1e18 * 1e4 = 0.5522596
    CHECK(generator_psd(1e4, PhysicsConstants::si(1e18)) == doctest::Approx(0.5522596).epsilon(1e-12));
    CHECK_THROWS_AS(generator_psd(1.0, PhysicsConstants::si(0.0)), ConfigError);
}

TEST_CASE("channel waveforms from the loop equations")
{
    SUBCASE("voltage divider")
    {
        const auto ch = channel_waveforms(constant(1.0), constant(0.0), loop(1.0, 1.0));
        for (double i : ch.current.samples())
            CHECK(i == doctest::Approx(0.5));
        for (double u : ch.voltage.samples())
            CHECK(u == doctest::Approx(0.5));
    }
    SUBCASE("no loop emf")
    {
        const auto ch = channel_waveforms(constant(0.7), constant(0.7), loop(3.0, 5.0));
        for (double i : ch.current.samples())
            CHECK(i == doctest::Approx(0.0));
        for (double u : ch.voltage.samples())
            CHECK(u == doctest::Approx(0.7));
    }
    SUBCASE("asymmetric loop")
    {
        const auto ch = channel_waveforms(constant(0.0), constant(1.0), loop(3.0, 1.0));
        for (double i : ch.current.samples())
            CHECK(i == doctest::Approx(-0.25));
        for (double u : ch.voltage.samples())
            CHECK(u == doctest::Approx(0.75));
    }
    SUBCASE("length and rate mismatch")
    {
        CHECK_THROWS_AS(channel_waveforms(constant(0.0, 4), constant(0.0, 5), loop(1, 1)), ConfigError);
        CHECK_THROWS_AS(channel_waveforms(Waveform({1.0}, 2.0), Waveform({1.0}, 4.0), loop(1, 1)), ConfigError);
    }
}

TEST_CASE("channel waveforms are linear in the generator voltages")
{
    auto rng = make_stream(3, StreamTag::test, 0);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a1(16), b1(16), a2(16), b2(16), as(16), bs(16);
        const double ka = u(rng), kb = u(rng);
        for (std::size_t t = 0; t < 16; ++t) {
            a1[t] = u(rng), b1[t] = u(rng), a2[t] = u(rng), b2[t] = u(rng);
            as[t] = ka * a1[t] + kb * a2[t];
            bs[t] = ka * b1[t] + kb * b2[t];
        }
        const auto st = loop(0.5 + std::abs(u(rng)), 0.5 + std::abs(u(rng)));
        const auto c1 = channel_waveforms(Waveform(a1, 1.0), Waveform(b1, 1.0), st);
        const auto c2 = channel_waveforms(Waveform(a2, 1.0), Waveform(b2, 1.0), st);
        const auto cs = channel_waveforms(Waveform(as, 1.0), Waveform(bs, 1.0), st);
        for (std::size_t t = 0; t < 16; ++t) {
            CHECK(cs.current.samples()[t] ==
                  doctest::Approx(ka * c1.current.samples()[t] + kb * c2.current.samples()[t]));
            CHECK(cs.voltage.samples()[t] ==
                  doctest::Approx(ka * c1.voltage.samples()[t] + kb * c2.voltage.samples()[t]));
        }
    }
}

TEST_CASE("theoretical levels, normalized R=1 alpha=10 B=1")
{
    const auto lv = theoretical_levels(ResistorSet{1.0, 10.0}, PhysicsConstants::normalized_units(), 1.0);
    CHECK(lv.i(BitState::b11) == doctest::Approx(0.05));
    CHECK(lv.i(BitState::b0110) == doctest::Approx(1.0 / 11.0));
    CHECK(lv.i(BitState::b00) == doctest::Approx(0.5));
    CHECK(lv.v(BitState::b00) == doctest::Approx(0.5));
    CHECK(lv.v(BitState::b0110) == doctest::Approx(10.0 / 11.0));
    CHECK(lv.v(BitState::b11) == doctest::Approx(5.0));
    CHECK(lv.warnings.empty());
    CHECK(current_11_one_plus_alpha_loop(ResistorSet{1.0, 10.0}, PhysicsConstants::normalized_units(), 1.0) ==
          doctest::Approx(1.0 / 11.0));
}

TEST_CASE("level orderings hold for random parameters; small alpha warns")
{
    auto rng = make_stream(4, StreamTag::test, 0);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const ResistorSet rs{std::pow(10.0, logu(rng)), 1.0 + std::pow(10.0, logu(rng))};
        const auto lv = theoretical_levels(rs, PhysicsConstants::normalized_units(), std::pow(10.0, logu(rng)));
        CHECK(lv.v(BitState::b00) < lv.v(BitState::b0110));
        CHECK(lv.v(BitState::b0110) < lv.v(BitState::b11));
        CHECK(lv.i(BitState::b11) < lv.i(BitState::b0110));
        CHECK(lv.i(BitState::b0110) < lv.i(BitState::b00));
        CHECK(lv.warnings.empty() == (rs.alpha >= 10.0));
    }
}

TEST_CASE("near-degenerate alpha collapses the levels but keeps them ordered")
{
    const auto lv = theoretical_levels(ResistorSet{1.0, 1.0 + 1e-6}, PhysicsConstants::normalized_units(), 1.0);
    CHECK(lv.v(BitState::b00) < lv.v(BitState::b0110));
    CHECK(lv.v(BitState::b0110) < lv.v(BitState::b11));
    CHECK(lv.v(BitState::b11) / lv.v(BitState::b00) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK_FALSE(lv.warnings.empty());
    CHECK_THROWS_AS(theoretical_levels(ResistorSet{1.0, 1.0}, PhysicsConstants::normalized_units(), 1.0),
                    ConfigError);
}

TEST_CASE("secure-state voltage and current are uncorrelated")
{
    auto rng = make_stream(8, StreamTag::test, 1);
    const ResistorSet rs{1.0, 10.0};
    const auto st = LoopState::from_bits(0, 1, rs);
    const std::size_t n = 1u << 16;
    std::vector<double> cross_means;
    for (int block = 0; block < 64; ++block) {
        const auto ua = synth_band_limited(NoiseSpec{st.r_alice, 1.0, 4.0, n}, rng);
        const auto ub = synth_band_limited(NoiseSpec{st.r_bob, 1.0, 4.0, n}, rng);
        const auto ch = channel_waveforms(ua, ub, st);
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t)
            s += ch.voltage.samples()[t] * ch.current.samples()[t];
        cross_means.push_back(s / static_cast<double>(n));
    }
    const double se = kt::stddev(cross_means) / std::sqrt(64.0);
    CHECK(std::abs(kt::mean(cross_means)) < 4.0 * se);
}

}
