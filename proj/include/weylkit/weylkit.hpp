#pragma once

#include "weylkit/curve.hpp"
#include "weylkit/error.hpp"
#include "weylkit/exact_linear.hpp"
#include "weylkit/idealizer.hpp"
#include "weylkit/poly.hpp"
#include "weylkit/rational.hpp"
#include "weylkit/text.hpp"
#include "weylkit/torsion.hpp"
#include "weylkit/weyl.hpp"
