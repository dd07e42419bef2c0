#pragma once

#include "errors.hpp"
#include "scaled.hpp"
#include "gamma.hpp"
#include "hypergeometric.hpp"
#include "quadrature.hpp"
#include "jacobi.hpp"
#include "ode_oracle.hpp"
#include "space.hpp"
#include "spherical.hpp"
#include "measures.hpp"
#include "parallel.hpp"
#include "zeros.hpp"
#include "asymptotics.hpp"
#include "validation.hpp"
#include "config.hpp"
#include "experiment.hpp"
