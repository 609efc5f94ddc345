#include "kljn/errors.hpp"

#include "kljn/config.hpp"

namespace kljn {

EmptySecureBandError::EmptySecureBandError(const std::string& quantity, double low_cut, double high_cut)
    : RuntimeFailure("EMPTY_SECURE_BAND: " + quantity + " low cut " + format_number(low_cut) +
                     " is above high cut " + format_number(high_cut)),
      quantity_(quantity), low_cut_(low_cut), high_cut_(high_cut)
{
}

} // namespace kljn
