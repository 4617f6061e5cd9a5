#pragma once

#include <array>
#include <cstddef>

namespace corrwork::linalg {

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

template <std::size_t N>
struct EigenResult {
    std::array<double, N> values{};
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic Jacobi eigenvalues of a real symmetric matrix. Iterates until every
/// off-diagonal magnitude is below `tolerance` or `max_sweeps` is reached.
/// Values are returned in ascending order.
template <std::size_t N>
EigenResult<N> jacobi_eigenvalues(Matrix<N> a, double tolerance = 1e-12, int max_sweeps = 100);

/// max |lambda| of a real symmetric matrix.
template <std::size_t N>
double spectral_norm_symmetric(const Matrix<N>& a);

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b);

template <std::size_t N, std::size_t M>
Matrix<N * M> kronecker(const Matrix<N>& a, const Matrix<M>& b);

}  // namespace corrwork::linalg

#include "corrwork/linalg_impl.hpp"
