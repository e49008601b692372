#ifndef CHIBAG_HPP
#define CHIBAG_HPP

#include "chibag/ball_spectrum.hpp"
#include "chibag/clifford.hpp"
#include "chibag/coefficients.hpp"
#include "chibag/config.hpp"
#include "chibag/cylinder.hpp"
#include "chibag/errors.hpp"
#include "chibag/identities.hpp"
#include "chibag/quadrature.hpp"
#include "chibag/specialfn.hpp"
#include "chibag/summation.hpp"

#endif  // CHIBAG_HPP
