#pragma once

// Counting arrays over L_n, evaluated exactly from their recurrences and
// closed forms. Recurrence results are memoized in a process-wide store
// that is safe to query from several threads at once.

#include <cstdint>

#include "catwords/exact.hpp"

namespace catwords {

// binom(n, k); zero when k < 0 or k > n. Throws std::domain_error for n < 0.
big_int binomial(std::int64_t n, std::int64_t k);

big_int catalan_number(std::int64_t n);

/// Words of length n with m zeros and k descents.
/// Requires n >= 1, 1 <= m <= n, k >= 0.
big_int a_desc(std::int64_t n, std::int64_t m, std::int64_t k);

/// Words of length n with m zeros, from the single-sum recurrence.
/// Requires n >= 1, 1 <= m <= n.
big_int a_zeros(std::int64_t n, std::int64_t m);

/// (m-1)/(n-1) * binom(2n-m-2, n-2) for 2 <= m <= n; also (1,1) -> 1 and
/// (n,1) -> 0 for n >= 2. The division is checked to be exact.
big_int a_zeros_closed(std::int64_t n, std::int64_t m);

/// Words of length n with m ones. Requires n >= 1, 0 <= m <= n-1.
big_int b_ones(std::int64_t n, std::int64_t m);

/// Words of length n with m ones and i zeros.
/// Requires n >= 3, 1 <= m <= n-2, 2 <= i <= n-m.
big_int b_ones_zeros(std::int64_t n, std::int64_t m, std::int64_t i);

/// Closed single sum for the ones statistic. Defined for n >= 2, 1 <= m <= n
/// (m = 1 gives n-2 for n >= 3 and 0 for n = 2).
big_int b_ones_closed(std::int64_t n, std::int64_t m);

/// Words of length n with exactly s copies of letter i and t zeros.
/// Requires i >= 1, n >= 1, s >= 0, t >= 1.
big_int a_letter(std::int64_t i, std::int64_t n, std::int64_t s, std::int64_t t);

/// Words of length n whose largest letter is i.
big_int max_letter_count(std::int64_t n, std::int64_t i);

/// [x^n] C(x)^m = m (2n+m-1)! / (n! (n+m)!); m = 0 gives delta_{n,0}.
big_int coeff_C_power(std::int64_t n, std::int64_t m);

/// Words of length n with an odd number of zeros.
big_int fine_number(std::int64_t n);

// Drops every memoized value. Only useful for timing and tests.
void clear_memo();

} // namespace catwords
