#ifndef L2_COMMON_HPP
#define L2_COMMON_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace l2 {

/// Exact rational scalar used throughout the algebraic layer. Floating point
/// enters only when a compression matrix is assembled.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: spec mismatches, invalid complexes,
/// unparsable files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Work would exceed a configured limit (dimension cap).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Numerical-pipeline failure: zero operators, support collisions at a
/// quotient level, eigensolver trouble.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace l2

#endif  // L2_COMMON_HPP
