#pragma once

// Euclidean Fourier transform of sampled data in global coordinates.
//
//   forward:  F(lambda_j) = sum_k f(x_k) exp(-i <lambda_j, x_k>) prod h
//   inverse:  f(x_k)      = sum_j F(lambda_j) exp(+i <lambda_j, x_k>) prod dlambda / (2 pi)
//
// Both are exact inverses and satisfy discrete Parseval to rounding.

#include "nilharm/grid.hpp"

namespace nilharm {

GridFunction fourier_forward(const GridFunction& f);
GridFunction fourier_inverse(const GridFunction& F);

/// Sum of |samples|^2 times the cell volume of the sample's domain.
double norm_sq(const GridFunction& g);

}  // namespace nilharm
