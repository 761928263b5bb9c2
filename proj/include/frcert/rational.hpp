#ifndef FRCERT_RATIONAL_HPP
#define FRCERT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frcert {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator; zero is 0/1.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rat>;
using RatVector = Vector<Rat>;
using Index = Eigen::Index;

/// Symmetric matrices are stored densely; the symmetry invariant is checked
/// wherever one enters the library (parsing, instance construction).
using SymRatMatrix = RatMatrix;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p", "p/q", or a decimal with optional exponent ("-1.25e-3").
/// Throws std::invalid_argument on malformed input or zero denominator.
Rat parse_rat(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rat& value);

/// Exact decimal if the expansion terminates, else an empty string.
std::string terminating_decimal(const Rat& value);

/// 17 significant digits (lossy).
std::string approx_decimal(const Rat& value);

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

RatMatrix identity(Index n);
RatMatrix zeros(Index rows, Index cols);

/// Builds a symmetric matrix from row-major upper-triangle entries.
RatMatrix sym_from_upper(Index n, const std::vector<Rat>& upper);

/// Row-major upper-triangle entries (the packed form).
std::vector<Rat> upper_entries(const RatMatrix& a);

/// Builds a matrix from nested initializer rows of integers / rationals.
RatMatrix make_matrix(std::initializer_list<std::initializer_list<Rat>> rows);
RatVector make_vector(std::initializer_list<Rat> entries);

Matrix<double> to_double(const RatMatrix& a);

BigInt lcm_of_denominators(const RatVector& v);

}  // namespace frcert

#endif  // FRCERT_RATIONAL_HPP
