#include <doctest.h>

#include <algorithm>
#include <random>

#include "catwords/words.hpp"
#include "oracle.hpp"

using namespace catwords;

namespace {

std::vector<std::string> listing(std::size_t n)
{
    std::vector<std::string> out;
    enumerate(n, [&](std::span<const letter> w) {
        std::string s;
        for (letter a : w) {
            s += static_cast<char>('0' + a);
        }
        out.push_back(s);
        return true;
    });
    return out;
}

bool valid(std::initializer_list<letter> letters)
{
    const std::vector<letter> v(letters);
    return validate(v);
}

} // namespace

TEST_CASE("validate accepts and rejects the worked examples")
{
    CHECK(valid({0, 1, 0, 1}));
    CHECK(valid({0, 1, 2, 1, 0}));
    CHECK(valid({0}));
    CHECK_FALSE(valid({0, 1, 2, 0}));
    CHECK_FALSE(valid({1, 0, 1}));
    CHECK_FALSE(valid({0, 1}));
    CHECK_FALSE(valid({0, 2, 1, 0}));
    CHECK_THROWS_AS(validate(std::span<const letter>{}), std::domain_error);
}

TEST_CASE("catalan_word parses, formats and rejects invalid input")
{
    const auto w = catalan_word::parse("0,1,2,1,0");
    CHECK(w.str() == "0,1,2,1,0");
    CHECK(w.size() == 5);
    CHECK(max_letter(w) == 2);
    CHECK(count_letter(w, 1) == 2);
    CHECK(count_descents(w) == 2);
    CHECK(count_letter(catalan_word::parse("0,1,0,2,1"), 0) == 2);
    CHECK(count_letter(catalan_word::parse("0,0,0,0,0"), 1) == 0);
    CHECK(count_descents(catalan_word::parse("0,1,0,1")) == 1);
    CHECK(count_descents(catalan_word::parse("0,0,0,0,0")) == 0);
    CHECK(max_letter(catalan_word::parse("0")) == 0);
    CHECK(max_letter(catalan_word::parse("0,1,0,1")) == 1);
    CHECK_THROWS_AS(catalan_word::parse("1,0"), std::domain_error);
    CHECK_THROWS_AS(catalan_word::parse(""), std::domain_error);
    CHECK_THROWS_AS(catalan_word(std::vector<letter>{0, 1, 2, 0}), std::domain_error);
}

TEST_CASE("short listings in lexicographic order")
{
    CHECK(listing(1) == std::vector<std::string>{"0"});
    CHECK(listing(4) == std::vector<std::string>{"0000", "0010", "0100", "0101", "0110"});
    std::vector<std::string> five = {"00000", "01000", "00100", "00010", "01100", "01010", "01001",
                                     "00110", "00101", "01110", "01101", "01011", "01210", "01021"};
    std::sort(five.begin(), five.end());
    CHECK(listing(5) == five);
}

TEST_CASE("enumeration matches the brute-force oracle")
{
    for (std::size_t n = 1; n <= 10; ++n) {
        CAPTURE(n);
        std::vector<oracle::word> mine;
        enumerate(n, [&](std::span<const letter> w) {
            mine.emplace_back(w.begin(), w.end());
            return true;
        });
        CHECK(mine == oracle::catalan_words(n));
    }
}

TEST_CASE("pruning does not change the output")
{
    for (std::size_t n = 1; n <= 11; ++n) {
        CAPTURE(n);
        CHECK(enumerate_all(n, {.prune = true}) == enumerate_all(n, {.prune = false}));
    }
}

TEST_CASE("every enumerated word validates and the order is strict")
{
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<letter> previous;
        const auto count = enumerate(n, [&](std::span<const letter> w) {
            CHECK(validate(w));
            std::vector<letter> current(w.begin(), w.end());
            CHECK(previous < current);
            previous = std::move(current);
            return true;
        });
        CHECK(count == oracle::catalan(n - 1));
    }
    CHECK(enumerate(10, [](auto) { return true; }) == 4862);
}

TEST_CASE("visitor can stop early")
{
    int seen = 0;
    const auto visited = enumerate(8, [&](std::span<const letter>) { return ++seen < 3; });
    CHECK(seen == 3);
    CHECK(visited == 3);
}

TEST_CASE("enumerate rejects n = 0")
{
    CHECK_THROWS_AS(enumerate(0, [](auto) { return true; }), std::domain_error);
}

TEST_CASE("random sequences validate exactly when the oracle accepts them")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20000; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        std::vector<letter> w(n);
        oracle::word o(n);
        for (std::size_t p = 0; p < n; ++p) {
            w[p] = static_cast<letter>(rng() % 4);
            o[p] = w[p];
        }
        CAPTURE(format_word(w));
        CHECK(validate(w) == oracle::is_catalan_word(o));
    }
}

TEST_CASE("tally examples")
{
    const std::vector zeros{statistic_spec::zeros()};
    CHECK(tally(4, zeros) == tally_table{{{2}, 2}, {{3}, 2}, {{4}, 1}});
    const std::vector ones{statistic_spec::ones()};
    CHECK(tally(5, ones) == tally_table{{{0}, 1}, {{1}, 3}, {{2}, 7}, {{3}, 3}});
    const std::vector joint{statistic_spec::zeros(), statistic_spec::descents()};
    const auto table = tally(5, joint);
    CHECK(table.at({5, 0}) == 1);
    CHECK(table_total(table) == 14);
    CHECK_THROWS_AS(tally(5, std::span<const statistic_spec>{}), std::domain_error);
}

TEST_CASE("tally agrees with oracle joint counts")
{
    for (std::size_t n = 1; n <= 9; ++n) {
        const auto words = oracle::catalan_words(n);
        const auto expected = oracle::joint(
            words, [](const oracle::word& w) { return oracle::count_of(w, 0); }, oracle::descents_of);
        const std::vector specs{statistic_spec::zeros(), statistic_spec::descents()};
        const auto table = tally(n, specs);
        CHECK(table.size() == expected.size());
        for (const auto& [key, count] : expected) {
            CHECK(table.at({key.first, key.second}) == count);
        }
    }
}
