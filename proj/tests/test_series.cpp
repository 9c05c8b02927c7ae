#include <doctest.h>

#include <random>

#include "catwords/counting.hpp"
#include "catwords/series.hpp"

using namespace catwords;

namespace {

const series_caps caps5 = series_caps::uniform(5);

multi_series x_(const series_caps& c = caps5) { return multi_series::variable(var::x, c); }
multi_series v_(const series_caps& c = caps5) { return multi_series::variable(var::v, c); }
multi_series w_(const series_caps& c = caps5) { return multi_series::variable(var::w, c); }
multi_series one_(const series_caps& c = caps5) { return multi_series::constant(1, c); }

laurent_series y_pow(int k, const rational& c = 1) { return laurent_series::monomial(c, {k, 0, 0, 0}); }

multi_series random_series(std::mt19937& rng, const series_caps& caps, bool unit)
{
    multi_series s(caps);
    const int terms = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < terms; ++k) {
        const exponents e{static_cast<int>(rng() % (caps.x + 1)), static_cast<int>(rng() % (caps.w + 1)),
                          static_cast<int>(rng() % (caps.v + 1)), static_cast<int>(rng() % (caps.q + 1))};
        s.add_term(e, rational(static_cast<int>(rng() % 11) - 5, 1 + static_cast<int>(rng() % 3)));
    }
    if (unit) {
        s.add_term({0, 0, 0, 0}, rational(1) - s.constant_term() + rational(static_cast<int>(rng() % 3)));
    }
    return s;
}

} // namespace

TEST_CASE("key packing preserves lexicographic order")
{
    const exponents a{-3, 0, 2, 1};
    const exponents b{-3, 1, 0, 0};
    const exponents c{2, 0, 0, 0};
    CHECK(detail::unpack(detail::pack(a)) == a);
    CHECK(detail::pack(a) < detail::pack(b));
    CHECK(detail::pack(b) < detail::pack(c));
}

TEST_CASE("basic products")
{
    CHECK((one_() + x_()) * (one_() - x_()) == one_() - x_() * x_());
    CHECK((x_() * multi_series(caps5)).is_zero());
    const multi_series c = catalan_series(caps5);
    CHECK((c * c).coeff({2, 0, 0, 0}) == 5);
    CHECK(multi_series::monomial(3, {6, 0, 0, 0}, caps5).is_zero());
}

TEST_CASE("caps of a product are the componentwise minimum")
{
    const series_caps a{5, 2, 3, 1};
    const series_caps b{4, 3, 1, 2};
    const multi_series p = multi_series::constant(1, a) * multi_series::constant(1, b);
    CHECK(p.caps() == series_caps{4, 2, 1, 1});
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937 rng(7);
    const series_caps caps{6, 3, 3, 2};
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = random_series(rng, caps, false);
        const auto b = random_series(rng, caps, false);
        const auto c = random_series(rng, caps, false);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == multi_series(caps));
        CHECK(a * rational(3, 2) == ms_scale(a, rational(3, 2)));
        CHECK(ms_mul(a, b) == a * b);
        CHECK(ms_add(a, b) == a + b);
    }
}

TEST_CASE("inversion")
{
    multi_series geometric(caps5);
    multi_series diagonal(caps5);
    for (int n = 0; n <= 5; ++n) {
        geometric.add_term({n, 0, 0, 0}, 1);
        diagonal.add_term({n, n, 0, 0}, 1);
    }
    CHECK(ms_invert(one_() - x_()) == geometric);
    CHECK(ms_invert(one_() - x_() * w_()) == diagonal);

    const multi_series c = catalan_series(caps5);
    const multi_series inv = ms_invert(one_() - x_() * v_() * c);
    for (int n = 0; n <= 5; ++n) {
        for (int k = 0; k <= n; ++k) {
            CHECK(inv.coeff({n, 0, k, 0}) == rational(coeff_C_power(n - k, k)));
        }
    }
    CHECK_THROWS_AS(ms_invert(x_()), non_invertible_error);

    std::mt19937 rng(11);
    const series_caps caps{5, 3, 2, 2};
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_series(rng, caps, true);
        CHECK(a * ms_invert(a) == multi_series::constant(1, caps));
    }
}

TEST_CASE("substitution")
{
    const multi_series xv = x_() * v_();
    const multi_series lhs = ms_substitute(xv * ms_invert(one_() - xv), var::v, one_());
    CHECK(lhs == x_() * ms_invert(one_() - x_()));

    const multi_series zero = ms_substitute(ms_invert(one_() - x_() * w_()), var::w, multi_series(caps5));
    CHECK(zero == one_());

    // v := x v doubles the x-degree of every v power.
    const multi_series shifted = ms_substitute(ms_invert(one_() - v_()), var::v, x_() * v_());
    CHECK(shifted == ms_invert(one_() - x_() * v_()));

    CHECK_THROWS_AS(ms_substitute(ms_invert(one_() - v_()), var::v, one_()), std::domain_error);
}

TEST_CASE("shift by powers of x")
{
    const multi_series a = one_() + v_();
    const multi_series b = ms_shift_x(a, 2);
    CHECK(b.caps().x == 7);
    CHECK(b.coeff({2, 0, 1, 0}) == 1);
    CHECK(b.coeff({0, 0, 0, 0}) == 0);
}

TEST_CASE("Catalan series")
{
    const multi_series c = catalan_series(5);
    const std::vector<int> expected{1, 1, 2, 5, 14, 42};
    for (int n = 0; n <= 5; ++n) {
        CHECK(c.coeff({n, 0, 0, 0}) == expected[static_cast<std::size_t>(n)]);
    }
    CHECK(c.constant_term() == 1);
    const series_caps caps = series_caps::uniform(50);
    const multi_series big = catalan_series(caps);
    const multi_series x = multi_series::variable(var::x, caps);
    CHECK((big - multi_series::constant(1, caps) - x * big * big).is_zero());
}

TEST_CASE("first mismatch and JSON round trip")
{
    const multi_series a = catalan_series(caps5);
    multi_series b = a;
    b.add_term({3, 0, 0, 0}, 1);
    const auto mm = first_mismatch(a, b);
    REQUIRE(mm);
    CHECK(mm->at == exponents{3, 0, 0, 0});
    CHECK(mm->left == 5);
    CHECK(mm->right == 6);
    CHECK_FALSE(first_mismatch(a, a));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_series(rng, caps5, false);
        const auto text = to_json(s).dump();
        CHECK(multi_series_from_json(nlohmann::json::parse(text), caps5) == s);
    }
    CHECK(format_exponents({1, 2, 3, 4}) == "(1,2,3,4)");
}

TEST_CASE("Chebyshev values at t = 1/(2y)")
{
    CHECK(cheb_u(0) == laurent_series::constant(1));
    CHECK(cheb_u(1) == y_pow(-1));
    CHECK(cheb_u(2) == y_pow(-2) - laurent_series::constant(1));
    CHECK(cheb_u(3) == y_pow(-3) - y_pow(-1, 2));
    CHECK(cheb_u(-1).is_zero());
    CHECK(cheb_u(-2) == laurent_series::constant(-1));
    CHECK(cheb_u(-3) == -y_pow(-1));
    CHECK_THROWS(cheb_u(-4));
    for (int j = 0; j <= 30; ++j) {
        CHECK(cheb_u(j - 2) * cheb_u(j) - cheb_u(j - 1) * cheb_u(j - 1) == laurent_series::constant(-1));
        CHECK(cheb_u(j) - y_pow(1) * cheb_u(j - 1) == y_pow(1) * cheb_u(j + 1));
    }
}

TEST_CASE("Laurent inversion and conversion")
{
    const laurent_series inv = ls_invert(y_pow(-1), 12);
    CHECK(inv.truncated(12) == y_pow(1).truncated(12));
    CHECK_THROWS(ls_invert(y_pow(-1), std::nullopt));

    const laurent_series den = y_pow(1) * cheb_u(1) * cheb_u(2);
    const multi_series s = to_x_series(ls_divide(laurent_series::constant(1), den, 13), series_caps::uniform(6));
    multi_series expected(series_caps::uniform(6));
    for (int n = 1; n <= 6; ++n) {
        expected.add_term({n, 0, 0, 0}, 1);
    }
    CHECK(first_mismatch(s, expected) == std::nullopt);
    CHECK(s.caps().x == 6);

    CHECK_THROWS_AS(to_x_series(y_pow(-1), caps5), parity_error);
    CHECK_THROWS_AS(to_x_series(y_pow(1), caps5), parity_error);
    CHECK_THROWS_AS(to_x_series(y_pow(-2), caps5), std::domain_error);
    CHECK(ls_coeff(cheb_u(3), {-1, 0, 0, 0}) == -2);
}

TEST_CASE("Laurent product caps follow valuations")
{
    const laurent_series a = (y_pow(-2) + y_pow(3)).truncated(5);
    const laurent_series b = (y_pow(1) + y_pow(4)).truncated(6);
    const laurent_series p = a * b;
    REQUIRE(p.cap());
    CHECK(*p.cap() == std::min(5 + 1, 6 - 2));
    CHECK(p.valuation() == -1);
}

TEST_CASE("L family iteration and closed form")
{
    const int order = 8;
    const series_caps caps = series_caps::uniform(order);
    const multi_series v = multi_series::variable(var::v, caps);
    const multi_series w = multi_series::variable(var::w, caps);
    const multi_series x = multi_series::variable(var::x, caps);
    const multi_series one = multi_series::constant(1, caps);
    CHECK(l_family(-1, v, order) == v);
    CHECK(l_family(0, w, order) == ms_invert(one - x * w));
    CHECK(l_family(1, w, order) == ms_invert(one - x * ms_invert(one - x * w)));
    CHECK(first_mismatch(l_closed(0, var::v, order), ms_invert(one - x * v)) == std::nullopt);
    CHECK(first_mismatch(l_closed(-1, var::v, order), v) == std::nullopt);
    for (int j = -1; j <= 15; ++j) {
        CAPTURE(j);
        CHECK(first_mismatch(l_family(j, multi_series::variable(var::v, series_caps::uniform(15)), 15),
                             l_closed(j, var::v, 15)) == std::nullopt);
    }
}
