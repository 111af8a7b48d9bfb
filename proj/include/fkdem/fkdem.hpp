#pragma once

#include "fkdem/adomian.hpp"
#include "fkdem/config.hpp"
#include "fkdem/csv.hpp"
#include "fkdem/decay.hpp"
#include "fkdem/fraccalc.hpp"
#include "fkdem/polynomial.hpp"
#include "fkdem/process.hpp"
#include "fkdem/rng.hpp"
#include "fkdem/specfun.hpp"
