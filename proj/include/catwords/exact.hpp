#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace catwords {

using big_int = boost::multiprecision::mpz_int;
using rational = boost::multiprecision::mpq_rational;

// Raised when a computation that must be exact (an integer division, an
// integral extraction) is not. Signals a bug, never a user error.
class invariant_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline big_int exact_div(const big_int& num, const big_int& den)
{
    if (den == 0) {
        throw invariant_error("exact_div: division by zero");
    }
    big_int q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) {
        throw invariant_error("exact_div: " + num.str() + " is not divisible by " + den.str());
    }
    return q;
}

inline bool is_integral(const rational& r)
{
    return boost::multiprecision::denominator(r) == 1;
}

inline big_int to_integer(const rational& r)
{
    if (!is_integral(r)) {
        throw invariant_error("non-integral coefficient " + r.str());
    }
    return boost::multiprecision::numerator(r);
}

inline std::string to_string(const big_int& v) { return v.str(); }
inline std::string to_string(const rational& v) { return v.str(); }

} // namespace catwords
