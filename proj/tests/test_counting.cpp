#include <doctest.h>

#include <thread>

#include "catwords/counting.hpp"
#include "catwords/words.hpp"
#include "oracle.hpp"

using namespace catwords;

namespace {

tally_table joint_tally(std::size_t n, statistic_spec a, statistic_spec b)
{
    const std::vector specs{a, b};
    return tally(n, specs);
}

big_int at(const tally_table& t, std::size_t a, std::size_t b)
{
    const auto it = t.find({a, b});
    return it == t.end() ? big_int(0) : it->second;
}

big_int at(const tally_table& t, std::size_t a)
{
    const auto it = t.find({a});
    return it == t.end() ? big_int(0) : it->second;
}

} // namespace

TEST_CASE("binomial and Catalan numbers")
{
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(3, -1) == 0);
    CHECK_THROWS_AS(binomial(-1, 0), std::domain_error);
    CHECK(catalan_number(0) == 1);
    CHECK(catalan_number(4) == 14);
    CHECK(catalan_number(9) == 4862);
    for (std::size_t k = 0; k <= 30; ++k) {
        CHECK(catalan_number(static_cast<std::int64_t>(k)) == oracle::catalan(k));
    }
    CHECK_THROWS_AS(catalan_number(-1), std::domain_error);
}

TEST_CASE("descents examples and boundaries")
{
    CHECK(a_desc(5, 5, 0) == 1);
    CHECK(a_desc(5, 5, 2) == 0);
    CHECK(a_desc(4, 2, 1) == 2);
    CHECK(a_desc(4, 3, 1) == 2);
    CHECK(a_desc(4, 3, 0) == 0);
    CHECK_THROWS_AS(a_desc(4, 5, 0), std::domain_error);
    CHECK_THROWS_AS(a_desc(4, 2, -1), std::domain_error);
}

TEST_CASE("zeros examples")
{
    CHECK(a_zeros(5, 3) == 5);
    CHECK(a_zeros(7, 7) == 1);
    CHECK(a_zeros(6, 1) == 0);
    CHECK(a_zeros_closed(5, 2) == 5);
    CHECK(a_zeros_closed(5, 4) == 3);
    CHECK(a_zeros_closed(4, 3) == 2);
    CHECK(a_zeros_closed(1, 1) == 1);
    CHECK_THROWS_AS(a_zeros(3, 0), std::domain_error);
    CHECK_THROWS_AS(a_zeros_closed(3, 4), std::domain_error);
}

TEST_CASE("ones examples")
{
    CHECK(b_ones(5, 2) == 7);
    CHECK(b_ones(8, 0) == 1);
    CHECK(b_ones(5, 4) == 0);
    CHECK(b_ones_zeros(5, 2, 2) == 2);
    CHECK(b_ones_zeros(5, 1, 3) == 0);
    CHECK(b_ones_zeros(4, 2, 2) == 2);
    CHECK(b_ones_closed(5, 2) == 7);
    CHECK(b_ones_closed(5, 3) == 3);
    CHECK(b_ones_closed(6, 1) == 4);
    CHECK(b_ones_closed(2, 1) == 0);
    CHECK_THROWS_AS(b_ones(5, 5), std::domain_error);
    CHECK_THROWS_AS(b_ones_zeros(5, 2, 4), std::domain_error);
    CHECK_THROWS_AS(b_ones_closed(5, 0), std::domain_error);
}

TEST_CASE("closed ones sum vanishes for m >= n - 1")
{
    for (std::int64_t n = 2; n <= 40; ++n) {
        CHECK(b_ones_closed(n, n - 1) == 0);
        CHECK(b_ones_closed(n, n) == 0);
    }
}

TEST_CASE("letter arrays examples")
{
    CHECK(a_letter(1, 5, 2, 2) == 2);
    CHECK(a_letter(1, 5, 0, 5) == 1);
    CHECK(a_letter(1, 5, 0, 4) == 0);
    CHECK(a_letter(2, 5, 0, 4) == 3);
    CHECK(a_letter(4, 5, 0, 3) == 5);
    CHECK(a_letter(2, 5, 1, 2) == 2);
    CHECK(a_letter(2, 5, 3, 1) == 0);
    CHECK_THROWS_AS(a_letter(0, 5, 1, 1), std::domain_error);
    CHECK(max_letter_count(5, 2) == 2);
    CHECK(max_letter_count(5, 0) == 1);
    CHECK(coeff_C_power(3, 1) == 5);
    CHECK(coeff_C_power(2, 2) == 5);
    CHECK(coeff_C_power(1, 3) == 3);
    CHECK(coeff_C_power(0, 0) == 1);
    CHECK(coeff_C_power(2, 0) == 0);
}

TEST_CASE("Fine numbers")
{
    const std::vector<int> first{1, 0, 1, 2, 6, 18, 57};
    for (std::size_t n = 1; n <= first.size(); ++n) {
        CHECK(fine_number(static_cast<std::int64_t>(n)) == first[n - 1]);
    }
    CHECK_THROWS_AS(fine_number(0), std::domain_error);
}

TEST_CASE("recurrences agree with enumeration tallies")
{
    for (std::size_t n = 1; n <= 11; ++n) {
        CAPTURE(n);
        const auto N = static_cast<std::int64_t>(n);
        const auto zd = joint_tally(n, statistic_spec::zeros(), statistic_spec::descents());
        const auto oz = joint_tally(n, statistic_spec::ones(), statistic_spec::zeros());
        const std::vector ones_only{statistic_spec::ones()};
        const auto o = tally(n, ones_only);
        for (std::int64_t m = 1; m <= N; ++m) {
            big_int zeros_total = 0;
            for (std::int64_t k = 0; k < N; ++k) {
                CHECK(a_desc(N, m, k) == at(zd, m, k));
                zeros_total += at(zd, m, k);
            }
            CHECK(a_zeros(N, m) == zeros_total);
            CHECK(a_zeros_closed(N, m) == zeros_total);
        }
        for (std::int64_t m = 0; m <= N - 1; ++m) {
            CHECK(b_ones(N, m) == at(o, m));
            if (m >= 1 && n >= 2) {
                CHECK(b_ones_closed(N, m) == at(o, m));
            }
            for (std::int64_t i = 2; m >= 1 && m <= N - 2 && i <= N - m; ++i) {
                CHECK(b_ones_zeros(N, m, i) == at(oz, m, i));
            }
        }
        big_int odd = 0;
        for (const auto& [key, value] : tally(n, std::vector{statistic_spec::zeros()})) {
            if (key[0] % 2 == 1) {
                odd += value;
            }
        }
        CHECK(fine_number(N) == odd);
    }
}

TEST_CASE("letter arrays agree with enumeration tallies")
{
    for (std::size_t n = 1; n <= 11; ++n) {
        const auto N = static_cast<std::int64_t>(n);
        const std::int64_t top = (N - 1) / 2 + 1;
        const std::vector max_only{statistic_spec::max()};
        const auto maxima = tally(n, max_only);
        big_int words = 0;
        for (std::int64_t i = 0; i <= top; ++i) {
            CHECK(max_letter_count(N, i) == at(maxima, static_cast<std::size_t>(i)));
            words += max_letter_count(N, i);
        }
        CHECK(words == catalan_number(N - 1));
        for (std::int64_t i = 1; i <= top + 1; ++i) {
            CAPTURE(n);
            CAPTURE(i);
            const auto table =
                joint_tally(n, statistic_spec::letter_count(static_cast<letter>(i)), statistic_spec::zeros());
            big_int total = 0;
            for (std::int64_t s = 0; s <= N; ++s) {
                for (std::int64_t t = 1; t <= N; ++t) {
                    CHECK(a_letter(i, N, s, t) == at(table, s, t));
                    total += a_letter(i, N, s, t);
                }
            }
            CHECK(total == catalan_number(N - 1));
            if (i > (N - 1) / 2) {
                for (std::int64_t t = 1; t <= N; ++t) {
                    CHECK(a_letter(i, N, 0, t) == a_zeros(N, t));
                }
            }
        }
    }
}

TEST_CASE("large-n invariants")
{
    for (std::int64_t n = 2; n <= 120; n += 7) {
        big_int zeros_total = 0;
        big_int ones_total = 0;
        for (std::int64_t m = 1; m <= n; ++m) {
            CHECK(a_zeros(n, m) == a_zeros_closed(n, m));
            zeros_total += a_zeros(n, m);
        }
        for (std::int64_t m = 0; m <= n - 1; ++m) {
            ones_total += b_ones(n, m);
        }
        CHECK(zeros_total == catalan_number(n - 1));
        CHECK(ones_total == catalan_number(n - 1));
    }
    for (std::int64_t n = 3; n <= 18; ++n) {
        for (std::int64_t m = 1; m <= n - 2; ++m) {
            big_int sum = 0;
            for (std::int64_t i = 2; i <= n - m; ++i) {
                sum += b_ones_zeros(n, m, i);
            }
            CHECK(sum == b_ones(n, m));
        }
    }
}

TEST_CASE("memoized values are stable under concurrent access")
{
    clear_memo();
    std::vector<big_int> results(8);
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < results.size(); ++k) {
        threads.emplace_back([&, k] { results[k] = a_zeros(150, 40) + a_letter(3, 30, 2, 5) + b_ones(60, 7); });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& r : results) {
        CHECK(r == results.front());
    }
    clear_memo();
    CHECK(a_zeros(150, 40) + a_letter(3, 30, 2, 5) + b_ones(60, 7) == results.front());
}
