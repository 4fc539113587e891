/// @file starshape.hpp
/// @brief Umbrella header.
#pragma once

#include "starshape/exact_math.hpp"
#include "starshape/gin.hpp"
#include "starshape/invariants.hpp"
#include "starshape/io.hpp"
#include "starshape/monomial.hpp"
#include "starshape/scheme.hpp"
#include "starshape/shape.hpp"
