#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace stopred {

// Exact arithmetic everywhere a bound value flows; no floating point ever
// influences a returned bound.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

}  // namespace stopred
