#pragma once

// Semi-classical signal analysis toolkit: signals on uniform grids are read
// as Schrodinger potentials, reconstructed from the operator's negative
// eigenpairs, and the semi-classical parameter h is chosen from residual
// curves without access to the clean signal.

#include "scsa/butterworth.hpp"
#include "scsa/dense_matrix.hpp"
#include "scsa/diff_operators.hpp"
#include "scsa/eigen_solver.hpp"
#include "scsa/errors.hpp"
#include "scsa/grid.hpp"
#include "scsa/io.hpp"
#include "scsa/noise_bounds.hpp"
#include "scsa/random.hpp"
#include "scsa/schrodinger.hpp"
#include "scsa/signal_ops.hpp"
#include "scsa/sweep.hpp"
#include "scsa/version.hpp"
