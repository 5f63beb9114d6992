#pragma once

#include <Eigen/Dense>
#include <complex>

namespace rml {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Kronecker product A (x) B.
Mat kron(const Mat& A, const Mat& B);

/// N x N elementary matrix E_ij.
Mat elem(int i, int j, int N);

/// flip operator P on C^N (x) C^N:  P (x (x) y) = y (x) x.
Mat flip_op(int N);

/// R21 = P R P.
Mat r21(const Mat& R, int N);

/// partial transpose on tensor factor 1 or 2 of an N^2 x N^2 matrix.
Mat partial_transpose(const Mat& R, int factor, int N);

/// embed a two-site operator into C^N^3 on the given pair of sites (1-based: 12, 13, 23).
Mat embed_pair(const Mat& R, int site_a, int site_b, int N);

/// max-absolute-entry norm.
double max_abs(const Mat& M);

/// Frobenius-fit scalar k minimizing || A - k B ||_F.
cplx fit_scalar(const Mat& A, const Mat& B);

} // namespace rml
