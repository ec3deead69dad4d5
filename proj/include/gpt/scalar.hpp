#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace gpt {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class UnboundedError : public Error {
public:
    using Error::Error;
};

class SingularMap : public Error {
public:
    using Error::Error;
};

class InvalidRestriction : public Error {
public:
    using Error::Error;
};

class InvalidEffect : public Error {
public:
    using Error::Error;
};

/// Raised when an enumeration would produce more rays than allowed.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Knobs shared by every geometric operation. `eps` only matters for the
/// floating-point instantiation; exact arithmetic ignores it.
struct Settings {
    double eps = 1e-9;
    std::size_t vertex_budget = 50000;
};

enum class Mode { Exact, Approx };

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr Mode mode = Mode::Exact;
    /// Ring used for the fraction-free inner loops of the enumerator.
    using Ring = Integer;

    static int sign(const Rational& x, double /*eps*/ = 0.0) { return x.sign(); }
    static bool is_zero(const Rational& x, double /*eps*/ = 0.0) { return x.is_zero(); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }

    static std::string format(const Rational& x) { return x.str(); }
    static Rational parse(std::string_view text);
};

template <>
struct NumTraits<double> {
    static constexpr bool exact = false;
    static constexpr Mode mode = Mode::Approx;
    using Ring = double;

    static int sign(double x, double eps) { return x > eps ? 1 : (x < -eps ? -1 : 0); }
    static bool is_zero(double x, double eps) { return std::abs(x) <= eps; }
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::abs(x); }

    static std::string format(double x);
    static double parse(std::string_view text);
};

template <class T>
inline constexpr bool is_exact_v = NumTraits<T>::exact;

/// Parses "p/q", integers and finite decimals ("0.75", "-1e-3") into an exact rational.
Rational parse_rational(std::string_view text);

template <class To, class From>
To convert_scalar(const From& x)
{
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else if constexpr (std::is_same_v<To, double>) {
        return NumTraits<From>::to_double(x);
    } else {
        return Rational(x);
    }
}

}  // namespace gpt
