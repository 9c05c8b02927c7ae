#pragma once

// Truncated formal power series in x, w, v, q with exact rational
// coefficients, and truncated Laurent series in y (y^2 = x) whose
// coefficients are polynomials in w, v, q.
//
// Both types use a sparse sorted term list. Exponents are packed into a
// 64-bit key whose integer order is the lexicographic order of (e0, w, v, q),
// where e0 is the x exponent or the (signed) y exponent.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "catwords/exact.hpp"

namespace catwords {

enum class var : int { x = 0, w = 1, v = 2, q = 3 };

using exponents = std::array<int, 4>;

class non_invertible_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class parity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline constexpr int key_bias = 32768;
inline constexpr int max_exponent = 65535;

struct term {
    std::uint64_t key;
    rational coeff;
};

std::uint64_t pack(const exponents& e);
exponents unpack(std::uint64_t key);

} // namespace detail

/// Per-variable truncation orders: a coefficient is tracked iff every
/// exponent is at most its cap.
struct series_caps {
    int x = 0;
    int w = 0;
    int v = 0;
    int q = 0;

    // x-cap n with w, v and q capped at n as well.
    static series_caps uniform(int n) { return {n, n, n, n}; }

    int operator[](var which) const;
    int& operator[](var which);

    friend bool operator==(const series_caps&, const series_caps&) = default;
};

series_caps min_caps(const series_caps& a, const series_caps& b);

class multi_series {
public:
    explicit multi_series(series_caps caps);

    static multi_series constant(const rational& c, series_caps caps);
    static multi_series monomial(const rational& c, const exponents& e, series_caps caps);
    static multi_series variable(var which, series_caps caps);

    const series_caps& caps() const noexcept { return caps_; }
    const std::vector<detail::term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    rational coeff(const exponents& e) const;
    rational constant_term() const { return coeff({0, 0, 0, 0}); }

    // Adds c to the coefficient of e; ignored when e lies beyond the caps.
    void add_term(const exponents& e, const rational& c);

    // Same series with caps lowered to min(caps(), caps).
    multi_series truncated(const series_caps& caps) const;

    multi_series operator-() const;
    multi_series& operator+=(const multi_series& rhs);
    multi_series& operator-=(const multi_series& rhs);
    multi_series& operator*=(const rational& c);

    friend multi_series operator+(multi_series a, const multi_series& b) { return a += b; }
    friend multi_series operator-(multi_series a, const multi_series& b) { return a -= b; }
    friend multi_series operator*(const multi_series& a, const multi_series& b);
    friend multi_series operator*(multi_series a, const rational& c) { return a *= c; }
    friend multi_series operator*(const rational& c, multi_series a) { return a *= c; }

    // Equal caps and equal coefficients.
    friend bool operator==(const multi_series& a, const multi_series& b);

private:
    friend class laurent_series;
    friend multi_series ms_substitute(const multi_series&, var, const multi_series&);
    friend multi_series ms_shift_x(const multi_series&, int);
    multi_series(series_caps caps, std::vector<detail::term> terms);

    series_caps caps_;
    std::vector<detail::term> terms_;
};

multi_series ms_add(const multi_series& a, const multi_series& b);
multi_series ms_mul(const multi_series& a, const multi_series& b);
multi_series ms_scale(const multi_series& a, const rational& c);

/// Multiplicative inverse up to the caps. Throws non_invertible_error when
/// the constant term is zero.
multi_series ms_invert(const multi_series& a);

/// Replaces `which` by `s`. When `s` is not divisible by `which`, every
/// monomial of `a` containing which^m must have x-degree >= m (checked on
/// the stored terms; std::domain_error otherwise), and the result x-cap is
/// lowered to the cap of `which` in `a`.
multi_series ms_substitute(const multi_series& a, var which, const multi_series& s);

/// x^k * a, with the x-cap raised by k.
multi_series ms_shift_x(const multi_series& a, int k);

/// Sum_{n<=N} C_n x^n.
multi_series catalan_series(int order);
multi_series catalan_series(const series_caps& caps);

struct coefficient_mismatch {
    exponents at;
    rational left;
    rational right;
};

/// First coefficient (lexicographic in (x, w, v, q)) where a and b differ
/// after truncating both to their common caps.
std::optional<coefficient_mismatch> first_mismatch(const multi_series& a, const multi_series& b);

// Canonical JSON: [{"exponents":[x,w,v,q],"num":"..","den":".."}, ...].
nlohmann::json to_json(const multi_series& s);
multi_series multi_series_from_json(const nlohmann::json& j, const series_caps& caps);

std::string format_exponents(const exponents& e);

/// Laurent series in y with y^2 = x. Exponent e0 is the y exponent and may be
/// negative; w, v, q exponents are non-negative. A series either is exact
/// (a Laurent polynomial) or is known through a finite y-cap.
class laurent_series {
public:
    static constexpr int unbounded = detail::max_exponent;

    laurent_series() = default;

    static laurent_series constant(const rational& c);
    static laurent_series monomial(const rational& c, const exponents& e);
    static laurent_series from_x_series(const multi_series& s);

    const std::vector<detail::term>& terms() const noexcept { return terms_; }
    bool is_exact() const noexcept { return !cap_.has_value(); }
    std::optional<int> cap() const noexcept { return cap_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    // Lowest y exponent carrying a nonzero coefficient.
    std::optional<int> valuation() const;

    rational coeff(const exponents& e) const;

    // Lowers the y-cap (makes an exact series inexact).
    laurent_series truncated(int cap) const;

    laurent_series operator-() const;
    laurent_series& operator+=(const laurent_series& rhs);
    laurent_series& operator-=(const laurent_series& rhs);
    laurent_series& operator*=(const rational& c);

    friend laurent_series operator+(laurent_series a, const laurent_series& b) { return a += b; }
    friend laurent_series operator-(laurent_series a, const laurent_series& b) { return a -= b; }
    friend laurent_series operator*(const laurent_series& a, const laurent_series& b);
    friend laurent_series operator*(laurent_series a, const rational& c) { return a *= c; }

    friend bool operator==(const laurent_series& a, const laurent_series& b);

private:
    laurent_series(std::optional<int> cap, std::vector<detail::term> terms);
    friend laurent_series ls_invert(const laurent_series& a, std::optional<int> cap);
    friend multi_series to_x_series(const laurent_series& a, const series_caps& caps);

    std::optional<int> cap_; // nullopt: exact
    std::vector<detail::term> terms_;
};

laurent_series ls_mul(const laurent_series& a, const laurent_series& b);

/// Inverse known through y^cap (or through the natural precision of an
/// inexact input, whichever is lower). An exact input needs an explicit cap.
/// The lowest-order coefficient must be a nonzero rational constant.
laurent_series ls_invert(const laurent_series& a, std::optional<int> cap);

/// num / den known through y^cap.
laurent_series ls_divide(const laurent_series& num, const laurent_series& den, int cap);

rational ls_coeff(const laurent_series& a, const exponents& e);

/// Maps y^(2k) to x^k. Throws parity_error if an odd y power survives and
/// std::domain_error on a negative power. Result caps are `caps`, lowered to
/// what the input actually determines.
multi_series to_x_series(const laurent_series& a, const series_caps& caps);

/// U_j(t) at t = 1/(2y), as a Laurent polynomial in y. Valid for j >= -3.
laurent_series cheb_u(int j);

/// L_{-1} = seed, L_j = 1/(1 - x L_{j-1}), truncated at x-order `order`.
multi_series l_family(int j, const multi_series& seed, int order);

/// L_j from its Chebyshev closed form with seed variable `seed` (v or w),
/// evaluated in the Laurent ring and converted back to an x-series.
multi_series l_closed(int j, var seed, int order);

} // namespace catwords
