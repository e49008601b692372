#ifndef CHIBAG_SPECIALFN_HPP
#define CHIBAG_SPECIALFN_HPP

#include "chibag/specialfn/bessel.hpp"
#include "chibag/specialfn/erf.hpp"
#include "chibag/specialfn/gamma.hpp"
#include "chibag/specialfn/hypergeometric.hpp"
#include "chibag/specialfn/zeta.hpp"

#endif  // CHIBAG_SPECIALFN_HPP
