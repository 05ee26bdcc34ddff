#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace blockpar {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact non-negative count. Never truncated.
using ExactCount = BigInt;

} // namespace blockpar
