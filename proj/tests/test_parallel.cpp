#include <doctest.h>

#include "kljn/protocol.hpp"

using namespace kljn;

TEST_SUITE("parallel") {

TEST_CASE("OpenMP period kernel matches the serial reference bit for bit")
{
    SystemConfig cfg;
    cfg.alpha = 100.0;
    cfg.gamma = 30.0;
    PeriodOptions opt;
    opt.force_state = BitState::b11;
    for (const PeriodOptions& use : {PeriodOptions{}, opt}) {
        const auto par = simulate_periods(cfg, 3000, 11, use);
        const auto ser = simulate_periods_serial(cfg, 3000, 11, use);
        REQUIRE(par.size() == ser.size());
        CHECK(par == ser);
    }
}

TEST_CASE("OpenMP calibration kernel matches the serial reference")
{
    SystemConfig cfg;
    cfg.alpha = 10.0;
    const auto par = calibrate_levels(cfg, BitState::b0110, 1u << 18, 5, 1u << 14);
    const auto ser = calibrate_levels_serial(cfg, BitState::b0110, 1u << 18, 5, 1u << 14);
    CHECK(par.n_samples == ser.n_samples);
    CHECK(par.msv == ser.msv);
    CHECK(par.msi == ser.msi);
    CHECK(par.cross == ser.cross);
    CHECK(par.cross_se == ser.cross_se);
}

}
