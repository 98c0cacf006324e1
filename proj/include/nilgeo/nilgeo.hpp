#pragma once

#include "rational.hpp"
#include "linalg.hpp"
#include "errors.hpp"
#include "algebra.hpp"
#include "decomposition.hpp"
#include "curvature.hpp"
#include "geodesic.hpp"
#include "lattice.hpp"
#include "isometry.hpp"
#include "phbuild.hpp"
#include "fixtures.hpp"
#include "io.hpp"
