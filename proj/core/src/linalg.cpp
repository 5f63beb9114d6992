#include "rmatrixlab/linalg.hpp"

#include "rmatrixlab/errors.hpp"

namespace rml {

Mat kron(const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Mat elem(int i, int j, int N) {
    Mat M = Mat::Zero(N, N);
    M(i, j) = 1.0;
    return M;
}

Mat flip_op(int N) {
    Mat P = Mat::Zero(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) P(a * N + b, b * N + a) = 1.0;
    return P;
}

Mat r21(const Mat& R, int N) {
    Mat P = flip_op(N);
    return P * R * P;
}

Mat partial_transpose(const Mat& R, int factor, int N) {
    if (R.rows() != N * N || R.cols() != N * N) throw shape_error("partial_transpose dimension");
    Mat M(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) {
                    if (factor == 1)
                        M(a * N + b, c * N + d) = R(c * N + b, a * N + d);
                    else
                        M(a * N + b, c * N + d) = R(a * N + d, c * N + b);
                }
    return M;
}

Mat embed_pair(const Mat& R, int site_a, int site_b, int N) {
    if (R.rows() != N * N) throw shape_error("embed_pair expects an N^2 x N^2 matrix");
    const int dim = N * N * N;
    Mat M = Mat::Zero(dim, dim);
    auto idx = [&](int i, int j, int k) { return (i * N + j) * N + k; };
    if (site_a == 1 && site_b == 2) {
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int ap = 0; ap < N; ++ap)
                    for (int bp = 0; bp < N; ++bp)
                        for (int c = 0; c < N; ++c)
                            M(idx(a, b, c), idx(ap, bp, c)) += R(a * N + b, ap * N + bp);
    } else if (site_a == 2 && site_b == 3) {
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int ap = 0; ap < N; ++ap)
                    for (int bp = 0; bp < N; ++bp)
                        for (int c = 0; c < N; ++c)
                            M(idx(c, a, b), idx(c, ap, bp)) += R(a * N + b, ap * N + bp);
    } else if (site_a == 1 && site_b == 3) {
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int ap = 0; ap < N; ++ap)
                    for (int bp = 0; bp < N; ++bp)
                        for (int c = 0; c < N; ++c)
                            M(idx(a, c, b), idx(ap, c, bp)) += R(a * N + b, ap * N + bp);
    } else {
        throw shape_error("embed_pair sites must be 12, 23 or 13");
    }
    return M;
}

double max_abs(const Mat& M) { return M.cwiseAbs().maxCoeff(); }

cplx fit_scalar(const Mat& A, const Mat& B) {
    cplx num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            num += std::conj(B(i, j)) * A(i, j);
            den += std::conj(B(i, j)) * B(i, j);
        }
    if (den == cplx(0.0)) return 0.0;
    return num / den;
}

} // namespace rml
