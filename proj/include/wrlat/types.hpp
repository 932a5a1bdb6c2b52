#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wrlat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Relative band within which a vector counts as minimal.
inline constexpr double kSystoleBand = 1e-9;
// Looser band used right after a flow event, where the new vectors sit at a near-tie.
inline constexpr double kEventBand = 1e-7;
inline constexpr double kLllDelta = 0.99;
inline constexpr std::size_t kEnumerationCap = 1'000'000;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

struct NotPositiveDefiniteError : Error {
  using Error::Error;
};

struct CapacityError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

inline Matrix to_real(const IntMatrix& m) { return m.cast<double>(); }

}  // namespace wrlat
