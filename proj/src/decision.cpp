#include "kljn/decision.hpp"

#include "kljn/errors.hpp"

namespace kljn {

std::string_view to_string(Interpretation v) noexcept
{
    switch (v) {
    case Interpretation::b00: return "00";
    case Interpretation::b11: return "11";
    case Interpretation::secure_0110: return "01/10";
    }
    return "?";
}

std::string_view to_string(CombinedOutcome v) noexcept
{
    switch (v) {
    case CombinedOutcome::keep_secure: return "KEEP_SECURE";
    case CombinedOutcome::discard_insecure_00: return "DISCARD_INSECURE_00";
    case CombinedOutcome::discard_insecure_11: return "DISCARD_INSECURE_11";
    case CombinedOutcome::discard_mixed: return "DISCARD_MIXED";
    case CombinedOutcome::alarm_conflict: return "ALARM_CONFLICT";
    }
    return "?";
}

DecisionBands make_bands(const LevelTable& levels, const ThresholdFractions& fracs)
{
    fracs.validate();
    DecisionBands bands;
    bands.i_low_cut = levels.i(BitState::b11) * (1.0 + fracs.lambda);
    bands.i_high_cut = levels.i(BitState::b00) * (1.0 - fracs.rho);
    bands.v_low_cut = levels.v(BitState::b00) * (1.0 + fracs.beta);
    bands.v_high_cut = levels.v(BitState::b11) * (1.0 - fracs.delta);

    if (!(bands.i_low_cut < bands.i_high_cut))
        throw EmptySecureBandError("current", bands.i_low_cut, bands.i_high_cut);
    if (!(bands.v_low_cut < bands.v_high_cut))
        throw EmptySecureBandError("voltage", bands.v_low_cut, bands.v_high_cut);
    return bands;
}

Interpretation interpret_current(double msi, const DecisionBands& bands) noexcept
{
    if (msi < bands.i_low_cut)
        return Interpretation::b11;
    if (msi > bands.i_high_cut)
        return Interpretation::b00;
    return Interpretation::secure_0110;
}

Interpretation interpret_voltage(double msv, const DecisionBands& bands) noexcept
{
    if (msv < bands.v_low_cut)
        return Interpretation::b00;
    if (msv > bands.v_high_cut)
        return Interpretation::b11;
    return Interpretation::secure_0110;
}

CombinedOutcome combine(Interpretation voltage, Interpretation current) noexcept
{
    using I = Interpretation;
    if (voltage == I::secure_0110 && current == I::secure_0110)
        return CombinedOutcome::keep_secure;
    if ((voltage == I::b00 && current == I::b11) || (voltage == I::b11 && current == I::b00))
        return CombinedOutcome::alarm_conflict;
    if (voltage == I::b00 || current == I::b00)
        return CombinedOutcome::discard_insecure_00;
    return CombinedOutcome::discard_insecure_11;
}

} // namespace kljn
