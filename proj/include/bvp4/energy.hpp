#pragma once

#include <vector>

#include "bvp4/grid.hpp"
#include "bvp4/matrix.hpp"

namespace bvp4 {

/// The three pieces of the energy
///   J(y) = 1/2 sum p(k) (D2 y(k-2))^2 - 1/2 sum q(k) (D y(k-1))^2
///          + sum F(k, y(k))
/// with total = p_term - q_term + f_term. Sums run ascending in k.
struct EnergyBreakdown {
  double p_term = 0.0;
  double q_term = 0.0;
  double f_term = 0.0;
  double total = 0.0;
};

/// F(k, s): exact antiderivative of f(k, .) with F(k, 0) = 0.
double antiderivative_F(const PolyNonlinearity& f, int k, double s);

EnergyBreakdown energy(const Problem& problem, const GridFunction& y);

/// Assembles the stiffness part W^T P W - V^T Q V (P = diag p, Q = diag q)
/// from the difference matrices. Symmetric, size N x N.
Matrix quadratic_form_matrix(const Problem& problem);

/// Gradient of J in matrix form: (W^T P W - V^T Q V) y~ + f(k, y(k)).
/// This is the reference implementation the stencil form is checked against.
std::vector<double> gradient_quadratic_form(const Problem& problem, const GridFunction& y);

/// Same gradient with the stiffness matrix precomputed; used by solver loops.
std::vector<double> gradient_from_matrix(const Matrix& stiffness, const Problem& problem,
                                         const GridFunction& y);

/// Left-hand side of the difference equation evaluated directly from the
/// nested-difference stencils at k = 1..N. Coincides with the matrix-form
/// gradient; y solves the problem iff this vanishes.
std::vector<double> residual_stencil(const Problem& problem, const GridFunction& y);

/// Hessian of J: stiffness + diag(df/ds(k, y(k))). Symmetric by construction.
Matrix hessian(const Problem& problem, const GridFunction& y);
Matrix hessian_from_matrix(const Matrix& stiffness, const Problem& problem,
                           const GridFunction& y);

}  // namespace bvp4
