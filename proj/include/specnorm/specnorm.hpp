#pragma once

#include "specnorm/circle.hpp"
#include "specnorm/combinatorics.hpp"
#include "specnorm/distributions.hpp"
#include "specnorm/errors.hpp"
#include "specnorm/extension.hpp"
#include "specnorm/linalg.hpp"
#include "specnorm/majorization.hpp"
#include "specnorm/matrix_io.hpp"
#include "specnorm/norms.hpp"
#include "specnorm/numeric.hpp"
#include "specnorm/oracles.hpp"
#include "specnorm/verify.hpp"
