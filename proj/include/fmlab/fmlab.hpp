#pragma once

#include "fmlab/rational.hpp"
#include "fmlab/finite_field.hpp"
#include "fmlab/number_field.hpp"
#include "fmlab/pi_fraction.hpp"
#include "fmlab/coefficients.hpp"
#include "fmlab/graded_poly.hpp"
#include "fmlab/linear_algebra.hpp"
#include "fmlab/generators.hpp"
#include "fmlab/truncated_series.hpp"
#include "fmlab/formal_module.hpp"
#include "fmlab/basechange.hpp"
#include "fmlab/stabilizer.hpp"
#include "fmlab/json_io.hpp"
