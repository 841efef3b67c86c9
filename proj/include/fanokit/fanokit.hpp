#pragma once

#include "fanokit/errors.hpp"
#include "fanokit/rational.hpp"
#include "fanokit/linalg.hpp"
#include "fanokit/polytope.hpp"
#include "fanokit/piecewise.hpp"
#include "fanokit/slicing.hpp"
#include "fanokit/toric_model.hpp"
#include "fanokit/monomial_ideal.hpp"
#include "fanokit/volumes.hpp"
#include "fanokit/lct.hpp"
#include "fanokit/filtration.hpp"
#include "fanokit/parallel.hpp"
#include "fanokit/stability.hpp"
