#pragma once

#include "optokerr/coefficients.hpp"
#include "optokerr/convolution.hpp"
#include "optokerr/discrete_oracle.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/greens.hpp"
#include "optokerr/grid.hpp"
#include "optokerr/nonlinearity.hpp"
#include "optokerr/parallel.hpp"
#include "optokerr/spectra.hpp"
#include "optokerr/version.hpp"
