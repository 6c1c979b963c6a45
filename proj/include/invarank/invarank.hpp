#pragma once

#include "invarank/field.hpp"
#include "invarank/matrix.hpp"
#include "invarank/matrix_io.hpp"
#include "invarank/poly.hpp"
#include "invarank/lie.hpp"
#include "invarank/rep.hpp"
#include "invarank/bound.hpp"
#include "invarank/invariants.hpp"
