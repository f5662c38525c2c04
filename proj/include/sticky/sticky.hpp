#pragma once

#include "sticky/combinatorics.hpp"
#include "sticky/expr.hpp"
#include "sticky/ito_algebra.hpp"
#include "sticky/moments.hpp"
#include "sticky/rational.hpp"
#include "sticky/scalar.hpp"
#include "sticky/serialize.hpp"
#include "sticky/tensor.hpp"
