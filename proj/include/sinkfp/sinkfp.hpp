#ifndef SINKFP_SINKFP_HPP
#define SINKFP_SINKFP_HPP

#include "sinkfp/bertalanffy.hpp"
#include "sinkfp/density.hpp"
#include "sinkfp/eigenfunctions.hpp"
#include "sinkfp/errors.hpp"
#include "sinkfp/models.hpp"
#include "sinkfp/oracles.hpp"
#include "sinkfp/quadrature.hpp"
#include "sinkfp/specfun.hpp"
#include "sinkfp/spectrum.hpp"

#endif // SINKFP_SINKFP_HPP
