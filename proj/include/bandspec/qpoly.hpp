#pragma once
// Dense univariate polynomials over Q, ascending coefficients.

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bandspec {

using QPoly = std::vector<mpq_class>;

int degree(const QPoly& p);  // -1 for the zero polynomial
void trim(QPoly& p);
QPoly derivative(const QPoly& p);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic
QPoly sub(const QPoly& a, const QPoly& b);

// Yun's algorithm: p = c * prod f_i^{i}; returns (f_i, i) with deg f_i >= 1
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

// Determinant of a square rational matrix by fraction-free (Bareiss) elimination with row pivoting.
mpq_class exact_determinant(std::vector<std::vector<mpq_class>> a);

// Polynomial of degree <= n through (x_i, y_i), i = 0..n (Newton divided differences).
QPoly interpolate(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y);

}  // namespace bandspec
