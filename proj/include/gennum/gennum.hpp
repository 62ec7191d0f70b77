#ifndef GENNUM_GENNUM_HPP
#define GENNUM_GENNUM_HPP

// Everything except the MPFR instantiation (gennum/multiprecision.hpp) and
// the oracles (gennum/oracle.hpp).

#include "gennum/causal.hpp"
#include "gennum/charts.hpp"
#include "gennum/expr.hpp"
#include "gennum/gen_linalg.hpp"

#endif  // GENNUM_GENNUM_HPP
