#pragma once

#include "cauchy/error.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/funcspec.hpp"
#include "cauchy/integrate.hpp"
#include "cauchy/formulas.hpp"
#include "cauchy/winding.hpp"
#include "cauchy/cover.hpp"
#include "cauchy/roots.hpp"
