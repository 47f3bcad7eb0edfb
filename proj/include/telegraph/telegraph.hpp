#pragma once

#include "telegraph/config.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/format.hpp"
#include "telegraph/fracepd.hpp"
#include "telegraph/harness.hpp"
#include "telegraph/io.hpp"
#include "telegraph/parallel.hpp"
#include "telegraph/planar.hpp"
#include "telegraph/quadrature.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/specialfun.hpp"
#include "telegraph/suites.hpp"
#include "telegraph/telegraph1d.hpp"
#include "telegraph/velocity.hpp"
