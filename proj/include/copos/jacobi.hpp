#pragma once

#include "copos/symspace.hpp"

namespace copos {

struct EigenSym {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]; orthonormal
};

// Symmetric eigendecomposition for orders 2..4: closed form for order 2,
// cyclic Jacobi for 3 and 4 (off-diagonal norm driven below 1e-13 relative
// to the matrix scale; unconditionally convergent).
EigenSym sym_eigen(const SymMat& A);

double min_eigenvalue(const SymMat& A);

// Nearest PSD matrix in Frobenius norm: clip negative eigenvalues to zero.
SymMat psd_project(const SymMat& A);

}  // namespace copos
