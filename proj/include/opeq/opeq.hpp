#pragma once

#include "opeq/errors.hpp"
#include "opeq/kernel.hpp"
#include "opeq/random.hpp"
#include "opeq/projections.hpp"
#include "opeq/module_algebra.hpp"
#include "opeq/douglas.hpp"
#include "opeq/sylvester.hpp"
#include "opeq/congruence.hpp"
#include "opeq/harness.hpp"
#include "opeq/matrix_file.hpp"
#include "opeq/shift_demo.hpp"
