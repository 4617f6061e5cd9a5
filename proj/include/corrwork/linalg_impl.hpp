#pragma once

#include <algorithm>
#include <cmath>

namespace corrwork::linalg {

template <std::size_t N>
EigenResult<N> jacobi_eigenvalues(Matrix<N> a, double tolerance, int max_sweeps) {
    EigenResult<N> result;
    auto off_diagonal_small = [&] {
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q)
                if (std::abs(a[p][q]) >= tolerance) return false;
        return true;
    };

    while (!(result.converged = off_diagonal_small()) && result.sweeps < max_sweeps) {
        ++result.sweeps;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                // Rotation angle that zeroes a[p][q] (Golub & Van Loan, sym.schur2).
                const double tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    for (std::size_t i = 0; i < N; ++i) result.values[i] = a[i][i];
    std::sort(result.values.begin(), result.values.end());
    return result;
}

template <std::size_t N>
double spectral_norm_symmetric(const Matrix<N>& a) {
    const auto eig = jacobi_eigenvalues<N>(a);
    return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b) {
    Matrix<N> c{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t j = 0; j < N; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

template <std::size_t N, std::size_t M>
Matrix<N * M> kronecker(const Matrix<N>& a, const Matrix<M>& b) {
    Matrix<N * M> c{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < M; ++k)
                for (std::size_t l = 0; l < M; ++l) c[i * M + k][j * M + l] = a[i][j] * b[k][l];
    return c;
}

}  // namespace corrwork::linalg
