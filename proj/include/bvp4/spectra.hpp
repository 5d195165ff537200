#pragma once

#include "bvp4/matrix.hpp"

namespace bvp4 {

/// Smallest eigenvalues of the Gram matrices of the first- and
/// second-difference maps on the zero-boundary space of size n. These are
/// the lower-bound constants used by the hypothesis checkers.
struct SpectralBounds {
  int n = 0;
  double lambda1 = 0.0;               // smallest eigenvalue of V^T V
  double lambda2 = 0.0;               // smallest eigenvalue of W^T W
  double lambda1_closed_form = 0.0;   // 4 sin^2(pi / (2(n+1)))
};

/// Matrix of the first-difference map on interior values: (V y~)(row) runs
/// through y(k+1) - y(k) for k = 0..n under zero boundaries. Size (n+1) x n,
/// ones on the diagonal and -1 below.
Matrix build_V(int n);

/// Matrix of the second-difference map: (W y~)(row) runs through the
/// 1, -2, 1 stencil for k = -1..n under zero boundaries. Size (n+2) x n.
Matrix build_W(int n);

/// M^T M with the upper triangle computed once and mirrored, so the result
/// is symmetric to the last bit.
Matrix gram(const Matrix& m);

struct Eigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns in the same order; empty unless requested
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a dense symmetric matrix, iterated until the
/// off-diagonal Frobenius norm drops below 1e-14 times the matrix norm.
/// Rejects inputs whose asymmetry exceeds 1e-12.
Eigensystem jacobi_eigensystem(const Matrix& s, bool want_vectors = false);

double smallest_eigenvalue(const Matrix& s);

/// Closed-form eigenvalues of the tridiagonal (2, -1) matrix of size n:
/// 4 sin^2(k pi / (2(n+1))), k = 1..n.
double laplacian_gram_eigenvalue(int n, int k);

/// Computes lambda1 and lambda2 for size n and cross-checks lambda1 against
/// the closed form (tolerance 1e-9).
SpectralBounds spectral_bounds(int n);

/// Positive definiteness via a square-root-free triangular factorization;
/// true iff every pivot exceeds 1e-12 times the largest entry magnitude.
bool is_positive_definite(const Matrix& s);

}  // namespace bvp4
