#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eit4 {

using real = double;
using complex = std::complex<double>;

inline constexpr int kLevels = 5;
inline constexpr int kLiouvilleDim = kLevels * kLevels;

/**
 * Fixed basis ordering shared by every matrix in the library.
 * Index 1 (L1p) is the degenerate partner |1'> of |1>.
 */
enum Level : int { L1 = 0, L1p = 1, L2 = 2, L3 = 3, L4 = 4 };

using Matrix5 = Eigen::Matrix<complex, kLevels, kLevels>;
using Vector5 = Eigen::Matrix<complex, kLevels, 1>;
using Matrix25 = Eigen::Matrix<complex, kLiouvilleDim, kLiouvilleDim>;
using Vector25 = Eigen::Matrix<complex, kLiouvilleDim, 1>;

/// Column-major slot of element (row, col) in a vectorized 5x5 matrix.
constexpr int vec_index(int row, int col) { return row + kLevels * col; }

inline Vector25 vectorize(const Matrix5& m)
{
    return Eigen::Map<const Vector25>(m.data());
}

inline Matrix5 unvectorize(const Vector25& v)
{
    return Eigen::Map<const Matrix5>(v.data());
}

/// Bad user input: non-finite numbers, violated preconditions, malformed config.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical solve failed or produced a result outside its contract.
class SolverError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Largest elementwise modulus.
inline real max_abs(const Matrix5& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix5& m, real tol)
{
    return max_abs(m - m.adjoint()) <= tol;
}

} // namespace eit4
