#pragma once

#include "hhmat/error.hpp"
#include "hhmat/matrix.hpp"
#include "hhmat/quad_rule.hpp"
#include "hhmat/scalarfn.hpp"
#include "hhmat/spectral.hpp"
#include "hhmat/norms.hpp"
#include "hhmat/quadrature.hpp"
#include "hhmat/random.hpp"
#include "hhmat/majorize.hpp"
#include "hhmat/theorems.hpp"
#include "hhmat/counterexample.hpp"
#include "hhmat/io.hpp"
#include "hhmat/harness.hpp"
