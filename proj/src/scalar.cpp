#include "gpt/scalar.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace gpt {
namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw InvalidInput("not an integer: '" + std::string(s) + "'");
    }
    Integer v{std::string(s)};
    if (negative) {
        v = -v;
    }
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.empty()) {
        throw InvalidInput("empty number");
    }
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(s.substr(0, slash));
        const Integer den = parse_integer(s.substr(slash + 1));
        if (den.is_zero()) {
            throw InvalidInput("zero denominator in '" + std::string(s) + "'");
        }
        return Rational(num, den);
    }

    // Decimal: [sign] digits [. digits] [e [sign] digits]
    std::string_view rest = s;
    bool negative = false;
    if (rest.front() == '-' || rest.front() == '+') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    std::string_view mantissa = rest;
    long exponent = 0;
    if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = rest.substr(0, e);
        std::string_view ex = rest.substr(e + 1);
        const bool ex_neg = !ex.empty() && ex.front() == '-';
        if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) {
            throw InvalidInput("bad exponent in '" + std::string(s) + "'");
        }
        exponent = std::stol(std::string(ex));
        if (ex_neg) {
            exponent = -exponent;
        }
    }
    std::string digits;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto ip = mantissa.substr(0, dot);
        const auto fp = mantissa.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
            throw InvalidInput("not a number: '" + std::string(s) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(mantissa)) {
            throw InvalidInput("not a number: '" + std::string(s) + "'");
        }
        digits = std::string(mantissa);
    }
    Rational v{Integer{digits}};
    Integer p10 = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
        v /= Rational(p10);
    } else {
        v *= Rational(p10);
    }
    return negative ? Rational(-v) : v;
}

Rational NumTraits<Rational>::parse(std::string_view text) { return parse_rational(text); }

std::string NumTraits<double>::format(double x)
{
    if (x == 0.0) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double NumTraits<double>::parse(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.find('/') != std::string_view::npos) {
        return parse_rational(s).convert_to<double>();
    }
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidInput("not a number: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace gpt
