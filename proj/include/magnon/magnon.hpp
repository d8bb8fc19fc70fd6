#pragma once

#include "magnon/classical.hpp"
#include "magnon/error.hpp"
#include "magnon/harper.hpp"
#include "magnon/kicked.hpp"
#include "magnon/numerics/bessel.hpp"
#include "magnon/numerics/dft.hpp"
#include "magnon/numerics/eigen.hpp"
#include "magnon/numerics/ks.hpp"
#include "magnon/numerics/matrix.hpp"
#include "magnon/numerics/parallel.hpp"
#include "magnon/numerics/quadrature.hpp"
#include "magnon/numerics/random.hpp"
#include "magnon/onepstate.hpp"
#include "magnon/rmt.hpp"
#include "magnon/spectral.hpp"
