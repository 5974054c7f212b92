#pragma once
// The limiting eigenvalue set as a point cloud of zero root-modulus defect.

#include <optional>
#include <utility>
#include <vector>

#include "bandspec/symbol.hpp"

namespace bandspec {

struct Region {
    double re_min, re_max, im_min, im_max;
};

struct LimitingSetCloud {
    std::vector<cplx> points;     // sorted by (Re, Im)
    std::vector<double> defects;  // relative defect per point
    double grid_step = 0.0;
    double tol = 0.0;
};

// Default region: the square around the disk |lambda| <= norm_bound(b).
Region default_region(const Symbol& b);

// Grid scan of the relative defect (|z_{r+1}| - |z_r|) / (1 + |z_r|). Grid points that are
// local minima along a row or a column are refined by golden section along that line and kept
// when the refined defect is <= tol. Exceptional points with small defect are added.
LimitingSetCloud limiting_set_scan(const Symbol& b, std::optional<Region> region = std::nullopt,
                                   int resolution = 512, double tol = 1e-6, int threads = 1);

struct ExceptionalPoint {
    cplx lambda;
    int multiplicity = 1;
    double residual = 0.0;  // min distance between two roots of z^r (b - lambda), relative
};

// Roots of the discriminant of z^r (b(z) - lambda) in lambda, obtained by interpolating
// numeric Sylvester resultants at r+s+1 points on |lambda| = norm_bound + 1.
std::vector<ExceptionalPoint> exceptional_points(const Symbol& b);

// [alpha, beta] from the partition of the traced curve; throws when no curve is found.
std::pair<double, double> support_interval(const Symbol& b);

}  // namespace bandspec
