#pragma once

#include <vector>

#include "bandspec/symbol.hpp"

namespace bandspec {

// Roots of p(z) = c[0] + c[1] z + ... + c[d] z^d (ascending order), with multiplicity.
// Aberth-Ehrlich iteration started on Newton-polygon circles; falls back to companion
// matrix eigenvalues when the iteration stalls. tol scales the residual acceptance test.
std::vector<cplx> roots(const std::vector<cplx>& c, double tol = 1e-12);

struct RootsByModulus {
    cplx lambda;
    std::vector<cplx> roots;  // |z_1| <= ... <= |z_{r+s}|
    double defect = 0.0;      // |z_{r+1}| - |z_r|
    // rough root-accuracy estimate for z_r and z_{r+1}; large near multiple roots
    double condition = 0.0;
    int r = 0;
};

// coefficients (ascending) of z^r (b(z) - lambda)
std::vector<cplx> shifted_poly(const Symbol& b, cplx lambda);

RootsByModulus roots_by_modulus(const Symbol& b, cplx lambda);
double defect(const Symbol& b, cplx lambda);

cplx poly_eval(const std::vector<cplx>& c, cplx z);

}  // namespace bandspec
