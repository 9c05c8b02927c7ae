#include "catwords/counting.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace catwords {

namespace {

template <std::size_t Arity>
class memo_table {
public:
    using key_type = std::array<std::int64_t, Arity>;

    std::optional<big_int> find(const key_type& key) const
    {
        std::shared_lock lock(mutex_);
        auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    // First writer wins; a racing recomputation yields the same value.
    const big_int& store(const key_type& key, big_int value)
    {
        std::unique_lock lock(mutex_);
        return values_.emplace(key, std::move(value)).first->second;
    }

    void clear()
    {
        std::unique_lock lock(mutex_);
        values_.clear();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<key_type, big_int> values_;
};

struct memo_store {
    memo_table<3> desc;
    memo_table<2> zeros;
    memo_table<2> ones;
    memo_table<4> letter;
};

memo_store& memo()
{
    static memo_store store;
    return store;
}

template <std::size_t Arity, typename Compute>
big_int memoized(memo_table<Arity>& table, const std::array<std::int64_t, Arity>& key, Compute compute)
{
    if (auto hit = table.find(key)) {
        return *std::move(hit);
    }
    return table.store(key, compute());
}

[[noreturn]] void out_of_range(const std::string& what)
{
    throw std::domain_error(what + ": parameters out of range");
}

big_int zeros_unchecked(std::int64_t n, std::int64_t m);

// a(n,m) extended by zero outside 1 <= m <= n.
big_int zeros_or_zero(std::int64_t n, std::int64_t m)
{
    if (n < 1 || m < 1 || m > n) {
        return 0;
    }
    return zeros_unchecked(n, m);
}

big_int zeros_unchecked(std::int64_t n, std::int64_t m)
{
    if (m == n) {
        return 1;
    }
    return memoized(memo().zeros, {n, m}, [&] {
        big_int sum = 0;
        for (std::int64_t j = 1; j <= n - m; ++j) {
            big_int weight = binomial(j + m - 1, j) - 1;
            if (weight != 0) {
                sum += weight * zeros_unchecked(n - m, j);
            }
        }
        return sum;
    });
}

big_int desc_unchecked(std::int64_t n, std::int64_t m, std::int64_t k)
{
    if (m == n) {
        return k == 0 ? 1 : 0;
    }
    if (k == 0) {
        return 0;
    }
    if (k >= n) {
        return 0;
    }
    return memoized(memo().desc, {n, m, k}, [&] {
        big_int sum = 0;
        const std::int64_t top = std::min(m, k);
        for (std::int64_t d = 1; d <= top; ++d) {
            const big_int left = binomial(m - 1, d);
            if (left == 0) {
                continue;
            }
            for (std::int64_t j = d; j <= n - m; ++j) {
                sum += left * binomial(j, d) * desc_unchecked(n - m, j, k - d);
            }
        }
        return sum;
    });
}

big_int letter_unchecked(std::int64_t i, std::int64_t n, std::int64_t s, std::int64_t t);

big_int letter_or_zero(std::int64_t i, std::int64_t n, std::int64_t s, std::int64_t t)
{
    if (i < 1 || n < 1 || t < 1 || s < 0 || t > n) {
        return 0;
    }
    return letter_unchecked(i, n, s, t);
}

big_int letter_unchecked(std::int64_t i, std::int64_t n, std::int64_t s, std::int64_t t)
{
    if (t > n) {
        return 0;
    }
    if (s > 0 && s > n - t - 2 * (i - 1)) {
        return 0;
    }
    if (s == 0 && i == 1) {
        return n == t ? 1 : 0;
    }
    if (s > 0 && i == 1) {
        if (t < 2 || t > n - s) {
            return 0;
        }
        return (binomial(s + t - 1, s) - 1) * zeros_or_zero(n - t, s);
    }
    return memoized(memo().letter, {i, n, s, t}, [&] {
        big_int sum = 0;
        if (s > 0) {
            const std::int64_t upper = n - s - t - 2 * i + 4;
            for (std::int64_t l = 2; l <= upper; ++l) {
                sum += (binomial(l + t - 1, l) - 1) * letter_or_zero(i - 1, n - t, s, l);
            }
        } else {
            if (n == t) {
                sum += 1;
            }
            for (std::int64_t l = 1; l <= n - t; ++l) {
                sum += (binomial(l + t - 1, l) - 1) * letter_or_zero(i - 1, n - t, 0, l);
            }
        }
        return sum;
    });
}

big_int factorial(std::int64_t n)
{
    big_int out;
    mpz_fac_ui(out.backend().data(), static_cast<unsigned long>(n));
    return out;
}

} // namespace

big_int binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0) {
        throw std::domain_error("binomial: negative upper index");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    big_int out;
    mpz_bin_uiui(out.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

big_int catalan_number(std::int64_t n)
{
    if (n < 0) {
        out_of_range("catalan_number");
    }
    return exact_div(binomial(2 * n, n), n + 1);
}

big_int a_desc(std::int64_t n, std::int64_t m, std::int64_t k)
{
    if (n < 1 || m < 1 || m > n || k < 0) {
        out_of_range("a_desc");
    }
    return desc_unchecked(n, m, k);
}

big_int a_zeros(std::int64_t n, std::int64_t m)
{
    if (n < 1 || m < 1 || m > n) {
        out_of_range("a_zeros");
    }
    return zeros_unchecked(n, m);
}

big_int a_zeros_closed(std::int64_t n, std::int64_t m)
{
    if (n < 1 || m < 1 || m > n) {
        out_of_range("a_zeros_closed");
    }
    if (m == 1) {
        return n == 1 ? 1 : 0;
    }
    return exact_div((m - 1) * binomial(2 * n - m - 2, n - 2), n - 1);
}

big_int b_ones(std::int64_t n, std::int64_t m)
{
    if (n < 1 || m < 0 || m > n - 1) {
        out_of_range("b_ones");
    }
    if (m == 0) {
        return 1;
    }
    if (m == n - 1) {
        return 0;
    }
    return memoized(memo().ones, {n, m}, [&] {
        big_int sum = 0;
        for (std::int64_t i = 2; i <= n - m; ++i) {
            sum += b_ones_zeros(n, m, i);
        }
        return sum;
    });
}

big_int b_ones_zeros(std::int64_t n, std::int64_t m, std::int64_t i)
{
    if (n < 3 || m < 1 || m > n - 2 || i < 2 || i > n - m) {
        out_of_range("b_ones_zeros");
    }
    return (binomial(i + m - 1, m) - 1) * zeros_unchecked(n - i, m);
}

big_int b_ones_closed(std::int64_t n, std::int64_t m)
{
    if (n < 2 || m < 1 || m > n) {
        out_of_range("b_ones_closed");
    }
    if (m == 1) {
        return n >= 3 ? big_int(n - 2) : big_int(0);
    }
    big_int sum = 0;
    for (std::int64_t j = m; j <= n - 1; ++j) {
        const big_int weight = binomial(j, m) - 1;
        if (weight == 0) {
            continue;
        }
        const big_int zeros =
            exact_div((m - 1) * binomial(2 * n + m - 2 * j - 4, n - j - 1), n + m - j - 2);
        sum += zeros * weight;
    }
    return sum;
}

big_int a_letter(std::int64_t i, std::int64_t n, std::int64_t s, std::int64_t t)
{
    if (i == 0) {
        throw std::domain_error("a_letter: zeros are counted by a_zeros");
    }
    if (i < 0 || n < 1 || s < 0 || t < 1) {
        out_of_range("a_letter");
    }
    return letter_unchecked(i, n, s, t);
}

big_int max_letter_count(std::int64_t n, std::int64_t i)
{
    if (n < 1 || i < 0) {
        out_of_range("max_letter_count");
    }
    if (i == 0) {
        return 1;
    }
    big_int sum = 0;
    for (std::int64_t t = 1; t <= n; ++t) {
        sum += letter_unchecked(i + 1, n, 0, t) - letter_unchecked(i, n, 0, t);
    }
    return sum;
}

big_int coeff_C_power(std::int64_t n, std::int64_t m)
{
    if (n < 0 || m < 0) {
        out_of_range("coeff_C_power");
    }
    if (m == 0) {
        return n == 0 ? 1 : 0;
    }
    return exact_div(m * factorial(2 * n + m - 1), factorial(n) * factorial(n + m));
}

big_int fine_number(std::int64_t n)
{
    if (n < 1) {
        out_of_range("fine_number");
    }
    big_int sum = 0;
    for (std::int64_t m = 1; m <= n; m += 2) {
        sum += zeros_unchecked(n, m);
    }
    return sum;
}

void clear_memo()
{
    memo().desc.clear();
    memo().zeros.clear();
    memo().ones.clear();
    memo().letter.clear();
}

} // namespace catwords
