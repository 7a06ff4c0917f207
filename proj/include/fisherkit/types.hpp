#pragma once

#include <cstdint>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace fisher {

using Int = std::int64_t;
using Index = Eigen::Index;

// Exact arithmetic backends. Every quantity that feeds a strict inequality
// (s^m, (m*s)^n, both sides of the Siegel bound) overflows 64 bits already at
// desk scale, so counting arithmetic is BigInt and fractional state is
// Rational. No floating point anywhere in the library.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<Int>;
using IntVector = DenseVector<Int>;
using BigIntVector = DenseVector<BigInt>;
using RationalVector = DenseVector<Rational>;

// Rows index sets, columns index elements, entries in {0,1}.
using IncidenceMatrix = IntMatrix;

// Per-element weighted column sums of a weight vector over the rows.
using Profile = IntVector;

// Nonzero integer vector tau with tau^T X = 0 columnwise.
using KernelVector = IntVector;

}  // namespace fisher
