#include "catwords/genfun.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <map>

#include "catwords/counting.hpp"
#include "catwords/words.hpp"

namespace catwords {

namespace {

multi_series one(const series_caps& caps) { return multi_series::constant(1, caps); }
multi_series variable(var which, const series_caps& caps) { return multi_series::variable(which, caps); }

multi_series mono(const exponents& e, const series_caps& caps) { return multi_series::monomial(1, e, caps); }

laurent_series y_power(int k) { return laurent_series::monomial(1, {k, 0, 0, 0}); }

// U_a - s y U_b for the variable s.
laurent_series shifted_cheb(int a, int b, var s)
{
    exponents e{1, 0, 0, 0};
    e[static_cast<int>(s)] = 1;
    return cheb_u(a) - laurent_series::monomial(1, e) * cheb_u(b);
}

void expect_valuation(const laurent_series& s, int expected, const std::string& what)
{
    const auto val = s.valuation();
    if (!val || *val != expected) {
        throw invariant_error(what + ": unexpected leading order " + (val ? std::to_string(*val) : "none") +
                              " (expected " + std::to_string(expected) + ")");
    }
}

// (num / den) / x^shift as an x-series at x-cap order - shift, where num/den
// is known to start at y^(2*shift). Returns nullopt when nothing of the
// quotient lies at or below x^order.
std::optional<multi_series> shifted_quotient(const laurent_series& num, const laurent_series& den, int shift,
                                             const series_caps& caps)
{
    const int cap = caps.x - shift;
    if (cap < 0) {
        return std::nullopt;
    }
    const laurent_series scaled = num * y_power(-2 * shift);
    series_caps out_caps = caps;
    out_caps.x = cap;
    return to_x_series(ls_divide(scaled, den, 2 * cap + 1), out_caps);
}

// x u / (1 - x u C).
multi_series closed_A_at(const multi_series& u, const multi_series& catalan)
{
    const series_caps caps = min_caps(u.caps(), catalan.caps());
    const multi_series xu = variable(var::x, caps) * u;
    return xu * ms_invert(one(caps) - xu * catalan.truncated(caps));
}

// Weight of term j in the w-sums: w y / ((U_{j+1} - w y U_j)(U_j - w y U_{j-1})),
// which starts at x^(j+1). Returned divided by x^(j+1).
std::optional<multi_series> w_weight(int j, const series_caps& caps)
{
    const laurent_series den = shifted_cheb(j + 1, j, var::w) * shifted_cheb(j, j - 1, var::w);
    expect_valuation(den, -(2 * j + 1), "w-sum denominator");
    return shifted_quotient(laurent_series::monomial(1, {1, 1, 0, 0}), den, j + 1, caps);
}

// 1 / (y U_{j+2} U_{j+1}), which starts at x^(j+1). Returned divided by x^(j+1).
std::optional<multi_series> unit_weight(int j, const series_caps& caps)
{
    const laurent_series den = y_power(1) * cheb_u(j + 2) * cheb_u(j + 1);
    expect_valuation(den, -(2 * j + 2), "unit-sum denominator");
    return shifted_quotient(laurent_series::constant(1), den, j + 1, caps);
}

multi_series chebyshev_term(int j, const series_caps& caps)
{
    const laurent_series den = shifted_cheb(j - 1, j - 2, var::v) * shifted_cheb(j, j - 1, var::v);
    expect_valuation(den, -(2 * j - 1), "Chebyshev sum denominator");
    const auto term = shifted_quotient(y_power(1), den, j, caps);
    if (!term) {
        return multi_series(caps);
    }
    return ms_shift_x(*term, j).truncated(caps);
}

multi_series chebyshev_prefactor(const series_caps& caps)
{
    // v / C = v (1 - x C).
    const multi_series c = catalan_series(caps);
    return variable(var::v, caps) * (one(caps) - variable(var::x, caps) * c);
}

multi_series zero_like(const series_caps& caps) { return multi_series(caps); }

// Pieces of the inner quotient at w = 1, shared by both letter generating functions.
struct inner_sums {
    multi_series numerator;   // sum_i q^(i+1) c_i (A(x, v L_i(x,1)) - A(x,v))
    multi_series denominator; // 1 + sum_i q^(i+1) c_i
};

inner_sums inner_quotient_parts(const series_caps& caps, int jmax, bool with_numerator)
{
    const multi_series catalan = catalan_series(caps);
    const multi_series a_v = closed_A_at(variable(var::v, caps), catalan);
    inner_sums out{zero_like(caps), one(caps)};
    for (int i = 0; i <= jmax; ++i) {
        const int k = i + 1;
        const auto weight = unit_weight(i, caps);
        if (!weight) {
            break;
        }
        const series_caps low = weight->caps();
        const multi_series qk = mono({0, 0, 0, k}, low);
        out.denominator += ms_shift_x(*weight * qk, k);
        if (with_numerator) {
            const multi_series l_i = l_family(i, one(low), low.x);
            const multi_series bracket = closed_A_at(variable(var::v, low) * l_i, catalan.truncated(low)) -
                                         a_v.truncated(low);
            out.numerator += ms_shift_x(*weight * qk * bracket, k);
        }
    }
    return out;
}

void require_positive(int order, const char* what)
{
    if (order < 1) {
        throw std::domain_error(std::string(what) + ": order must be at least 1");
    }
}

} // namespace

multi_series gf_A(int order)
{
    require_positive(order, "gf_A");
    const series_caps caps = series_caps::uniform(order);
    return closed_A_at(variable(var::v, caps), catalan_series(caps));
}

multi_series gf_A_m(int m, int order)
{
    require_positive(order, "gf_A_m");
    if (m < 1) {
        throw std::domain_error("gf_A_m: m must be at least 1");
    }
    const series_caps caps = series_caps::uniform(order);
    if (m > order) {
        return multi_series(caps);
    }
    const multi_series c = catalan_series(caps);
    multi_series out = mono({m, 0, 0, 0}, caps);
    for (int k = 1; k < m; ++k) {
        out = out * c;
    }
    return out;
}

multi_series gf_B(int order)
{
    require_positive(order, "gf_B");
    const series_caps caps = series_caps::uniform(order);
    const multi_series c = catalan_series(caps);
    const multi_series x = variable(var::x, caps);
    const multi_series v = variable(var::v, caps);
    const multi_series xvc = x * v * c;
    const multi_series numerator =
        x * (one(caps) - x + x * x * v + xvc * (x - one(caps) * rational(2)) + xvc * xvc);
    const multi_series denominator = (one(caps) - x) * (one(caps) - xvc) * (one(caps) - x - xvc);
    return numerator * ms_invert(denominator);
}

multi_series gf_fine(int order)
{
    require_positive(order, "gf_fine");
    const series_caps caps = series_caps::uniform(order);
    const multi_series xc = variable(var::x, caps) * catalan_series(caps);
    return variable(var::x, caps) * ms_invert(one(caps) - xc * xc);
}

multi_series lemma_partial_sum(int order, int terms)
{
    require_positive(order, "lemma_partial_sum");
    const series_caps caps = series_caps::uniform(order);
    multi_series sum(caps);
    for (int j = 1; j <= terms; ++j) {
        sum += chebyshev_term(j, caps);
    }
    return chebyshev_prefactor(caps) * sum;
}

multi_series gf_A_via_lemma(int order, int jmax)
{
    const multi_series out = lemma_partial_sum(order, jmax);
    const series_caps caps = series_caps::uniform(order);
    if (!(chebyshev_prefactor(caps) * chebyshev_term(jmax + 1, caps)).is_zero()) {
        throw stability_error("gf_A_via_lemma: term " + std::to_string(jmax + 1) + " still contributes at order " +
                              std::to_string(order));
    }
    return out;
}

multi_series gf_A4(int order, int qmax, int jmax)
{
    require_positive(order, "gf_A4");
    if (qmax < 0 || jmax < 0) {
        throw std::domain_error("gf_A4: negative qmax or jmax");
    }
    const series_caps caps{order, order, order, qmax};
    const multi_series catalan = catalan_series(caps);
    const multi_series a_v = closed_A_at(variable(var::v, caps), catalan);

    const inner_sums inner = inner_quotient_parts(caps, jmax, true);
    const multi_series inner_quotient = inner.numerator * ms_invert(inner.denominator);

    auto main_term = [&](int j) -> std::optional<multi_series> {
        const auto weight = w_weight(j, caps);
        if (!weight) {
            return std::nullopt;
        }
        const series_caps low = weight->caps();
        const multi_series l_j = l_family(j, variable(var::w, low), low.x);
        const multi_series bracket = closed_A_at(variable(var::v, low) * l_j, catalan.truncated(low)) -
                                     a_v.truncated(low) - inner_quotient.truncated(low);
        return ms_shift_x(*weight * mono({0, 0, 0, j + 1}, low) * bracket, j + 1);
    };

    multi_series out(caps);
    for (int j = 0; j <= jmax; ++j) {
        const auto t = main_term(j);
        if (!t) {
            break;
        }
        out += *t;
    }
    const auto next = main_term(jmax + 1);
    const auto next_inner = unit_weight(jmax + 1, caps);
    if ((next && !next->truncated(caps).is_zero()) ||
        (next_inner && !(*next_inner * mono({0, 0, 0, jmax + 2}, next_inner->caps())).is_zero())) {
        throw stability_error("gf_A4: term " + std::to_string(jmax + 1) + " still contributes");
    }
    return out;
}

multi_series gf_A0(int order, int qmax, int jmax)
{
    require_positive(order, "gf_A0");
    if (qmax < 0 || jmax < 0) {
        throw std::domain_error("gf_A0: negative qmax or jmax");
    }
    const series_caps caps{order, order, order, qmax};
    auto numerator_term = [&](int j) -> std::optional<multi_series> {
        const auto weight = w_weight(j, caps);
        if (!weight) {
            return std::nullopt;
        }
        return ms_shift_x(*weight * mono({0, 0, 0, j + 1}, weight->caps()), j + 1);
    };
    multi_series numerator(caps);
    for (int j = 0; j <= jmax; ++j) {
        const auto t = numerator_term(j);
        if (!t) {
            break;
        }
        numerator += *t;
    }
    const inner_sums inner = inner_quotient_parts(caps, jmax, false);
    const multi_series denominator = (one(caps) - variable(var::q, caps)) * inner.denominator;

    const auto next = numerator_term(jmax + 1);
    const auto next_inner = unit_weight(jmax + 1, caps);
    if ((next && !next->truncated(caps).is_zero()) ||
        (next_inner && !(*next_inner * mono({0, 0, 0, jmax + 2}, next_inner->caps())).is_zero())) {
        throw stability_error("gf_A0: term " + std::to_string(jmax + 1) + " still contributes");
    }
    return numerator * ms_invert(denominator);
}

multi_series zeros_series_from_recurrence(int order)
{
    multi_series out(series_caps::uniform(order));
    for (int n = 1; n <= order; ++n) {
        for (int m = 1; m <= n; ++m) {
            out.add_term({n, 0, m, 0}, rational(a_zeros(n, m)));
        }
    }
    return out;
}

multi_series ones_series_from_recurrence(int order)
{
    multi_series out(series_caps::uniform(order));
    for (int n = 1; n <= order; ++n) {
        for (int m = 0; m <= n - 1; ++m) {
            out.add_term({n, 0, m, 0}, rational(b_ones(n, m)));
        }
    }
    return out;
}

multi_series letter_series_from_recurrence(int order, int qmax)
{
    multi_series out(series_caps{order, order, order, qmax});
    for (int n = 1; n <= order; ++n) {
        for (int i = 1; i <= qmax; ++i) {
            for (int t = 1; t <= n; ++t) {
                for (int s = 1; s <= n - t - 2 * (i - 1); ++s) {
                    out.add_term({n, t, s, i}, rational(a_letter(i, n, s, t)));
                }
            }
        }
    }
    return out;
}

multi_series letter_free_series_from_recurrence(int order, int qmax)
{
    multi_series out(series_caps{order, order, order, qmax});
    for (int n = 1; n <= order; ++n) {
        for (int i = 1; i <= qmax; ++i) {
            for (int t = 1; t <= n; ++t) {
                out.add_term({n, t, 0, i}, rational(a_letter(i, n, 0, t)));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification harness

nlohmann::json to_json(const verification_report& report)
{
    nlohmann::json params = {{"order", report.params.order},
                             {"qmax", report.params.qmax},
                             {"jmax", report.params.effective_jmax()}};
    nlohmann::json out = {{"identity", report.identity},
                          {"params", params},
                          {"status", report.passed ? "pass" : "fail"},
                          {"millis", report.millis}};
    if (!report.passed) {
        nlohmann::json mismatch = {{"detail", report.detail}};
        if (report.mismatch) {
            const auto& e = report.mismatch->at;
            mismatch["exponents"] = {e[0], e[1], e[2], e[3]};
            mismatch["left"] = report.mismatch->left.str();
            mismatch["right"] = report.mismatch->right.str();
        }
        out["mismatch"] = mismatch;
    }
    return out;
}

namespace {

class checker {
public:
    checker(verification_report& report, bool fault) : report_(report), fault_(fault) {}

    bool ok() const { return report_.passed; }

    // Compares lhs against rhs at their common caps; records the first
    // mismatch. Returns false once anything has failed.
    bool compare(const std::string& what, multi_series lhs, const multi_series& rhs)
    {
        if (!report_.passed) {
            return false;
        }
        if (fault_) {
            fault_ = false;
            const exponents at = lhs.is_zero() ? exponents{0, 0, 0, 0} : detail::unpack(lhs.terms().front().key);
            lhs.add_term(at, 1);
        }
        if (auto mm = first_mismatch(lhs, rhs)) {
            report_.passed = false;
            report_.mismatch = std::move(mm);
            report_.detail = what;
            return false;
        }
        return true;
    }

    bool compare(const std::string& what, laurent_series lhs, const laurent_series& rhs)
    {
        if (!report_.passed) {
            return false;
        }
        if (fault_) {
            fault_ = false;
            lhs += laurent_series::constant(1);
        }
        // Compare coefficientwise through the common cap.
        std::map<std::uint64_t, std::pair<rational, rational>> diff;
        for (const auto& t : lhs.terms()) {
            diff[t.key].first = t.coeff;
        }
        for (const auto& t : rhs.terms()) {
            diff[t.key].second = t.coeff;
        }
        for (const auto& [key, values] : diff) {
            if (values.first != values.second) {
                report_.passed = false;
                report_.mismatch = coefficient_mismatch{detail::unpack(key), values.first, values.second};
                report_.detail = what;
                return false;
            }
        }
        return true;
    }

    void fail(const std::string& what)
    {
        if (report_.passed) {
            report_.passed = false;
            report_.detail = what;
        }
    }

private:
    verification_report& report_;
    bool fault_;
};

using check_fn = std::function<void(checker&, const verify_params&)>;

void functional_eq_body(checker& c, const multi_series& a, int order)
{
    const series_caps caps = series_caps::uniform(order);
    const multi_series x = variable(var::x, caps);
    const multi_series xv = x * variable(var::v, caps);
    const multi_series factor = xv * ms_invert(one(caps) - xv);
    const multi_series inv_one_minus_xv = ms_invert(one(caps) - xv);
    const multi_series rhs = factor * (one(caps) - x * catalan_series(caps)) +
                             factor * ms_substitute(a.truncated(caps), var::v, inv_one_minus_xv);
    c.compare("A(x,v) against its functional equation", a.truncated(caps), rhs);
}

void check_l1(checker& c, const verify_params& p)
{
    functional_eq_body(c, zeros_series_from_recurrence(p.order), p.order);
}

void check_l2(checker& c, const verify_params& p)
{
    c.compare("Chebyshev sum against xv/(1-xvC)", lemma_partial_sum(p.order, p.effective_jmax()), gf_A(p.order));
}

void co1_body(checker& c, int order, int jmax)
{
    const series_caps caps = series_caps::uniform(order);
    multi_series sum(caps);
    for (int j = 1; j <= jmax; ++j) {
        const laurent_series den = y_power(1) * cheb_u(j) * cheb_u(j + 1);
        expect_valuation(den, -2 * j, "co1 denominator");
        if (auto t = shifted_quotient(laurent_series::constant(1), den, j, caps)) {
            sum += ms_shift_x(*t, j).truncated(caps);
        }
    }
    const multi_series c_series = catalan_series(caps);
    c.compare("sum 1/(y U_j U_{j+1}) against x C^2", sum, variable(var::x, caps) * c_series * c_series);
}

void co2_body(checker& c, int order, int jmax)
{
    const series_caps caps = series_caps::uniform(order);
    multi_series sum(caps);
    for (int j = 1; j <= jmax; ++j) {
        const laurent_series den =
            y_power(1) * shifted_cheb(j - 1, j - 2, var::v) * shifted_cheb(j, j - 1, var::v);
        expect_valuation(den, -(2 * j - 2), "co2 denominator");
        if (auto t = shifted_quotient(laurent_series::constant(1), den, j - 1, caps)) {
            sum += ms_shift_x(*t, j - 1).truncated(caps);
        }
    }
    const multi_series c_series = catalan_series(caps);
    const multi_series xvc = variable(var::x, caps) * variable(var::v, caps) * c_series;
    c.compare("Chebyshev v-sum against C/(1-xvC)", sum, c_series * ms_invert(one(caps) - xvc));
}

void check_co3(checker& c, const verify_params& p)
{
    const int order = p.order;
    const series_caps caps = series_caps::uniform(order);
    const multi_series fine = gf_fine(order);
    multi_series odd_sum(caps);
    for (int m = 1; m <= order; m += 2) {
        odd_sum += gf_A_m(m, order);
    }
    if (!c.compare("x/(1-x^2C^2) against sum of odd A_m", fine, odd_sum)) {
        return;
    }
    // sqrt(1-4x) = 1 - 2xC turns (1-sqrt(1-4x))/(3-sqrt(1-4x)) into xC/(1+xC).
    const multi_series xc = variable(var::x, caps) * catalan_series(caps);
    if (!c.compare("x/(1-x^2C^2) against the algebraic form", fine, xc * ms_invert(one(caps) + xc))) {
        return;
    }
    multi_series parity(caps);
    for (int n = 1; n <= order; ++n) {
        parity.add_term({n, 0, 0, 0}, rational(fine_number(n)));
    }
    c.compare("x/(1-x^2C^2) against odd-zero counts", fine, parity);
}

void check_co4(checker& c, const verify_params& p)
{
    const int order = p.order;
    const series_caps caps = series_caps::uniform(order);
    const multi_series closed = gf_B(order);
    const multi_series recurrence = ones_series_from_recurrence(order);
    if (!c.compare("B(x,v) closed form against the b recurrence", closed, recurrence)) {
        return;
    }
    // B = x/(1-x) (1 + A(x, v/(1-x)) - A(x, v)) with A from the a recurrence.
    const multi_series a = zeros_series_from_recurrence(order);
    const multi_series x = variable(var::x, caps);
    const multi_series inv_one_minus_x = ms_invert(one(caps) - x);
    const multi_series transform =
        x * inv_one_minus_x *
        (one(caps) + ms_substitute(a, var::v, variable(var::v, caps) * inv_one_minus_x) - a);
    if (!c.compare("B(x,v) closed form against the transformed A", closed, transform)) {
        return;
    }
    multi_series sums(caps);
    for (int n = 1; n <= order; ++n) {
        sums.add_term({n, 0, 0, 0}, 1);
        for (int m = 1; m <= n && n >= 2; ++m) {
            sums.add_term({n, 0, m, 0}, rational(b_ones_closed(n, m)));
        }
    }
    c.compare("b closed sum against the b recurrence", sums, recurrence);
}

void check_th2(checker& c, const verify_params& p)
{
    const int order = p.order;
    const series_caps caps = series_caps::uniform(order);
    const multi_series recurrence = zeros_series_from_recurrence(order);
    if (!c.compare("xv/(1-xvC) against the a recurrence", gf_A(order), recurrence)) {
        return;
    }
    multi_series closed(caps);
    for (int n = 1; n <= order; ++n) {
        for (int m = 1; m <= n; ++m) {
            closed.add_term({n, 0, m, 0}, rational(a_zeros_closed(n, m)));
        }
    }
    if (!c.compare("a closed form against the a recurrence", closed, recurrence)) {
        return;
    }
    const multi_series cat = catalan_series(caps);
    multi_series power = one(caps);
    for (int m = 1; m <= order; ++m) {
        multi_series column(caps);
        for (int n = m; n <= order; ++n) {
            column.add_term({n, 0, 0, 0}, rational(a_zeros(n, m)));
        }
        if (!c.compare("x^m C^(m-1) against a(n,m), m=" + std::to_string(m), gf_A_m(m, order), column)) {
            return;
        }
        power = power * cat;
        multi_series formula(caps);
        for (int n = 0; n <= order; ++n) {
            formula.add_term({n, 0, 0, 0}, rational(coeff_C_power(n, m)));
        }
        if (!c.compare("C^m against its coefficient formula, m=" + std::to_string(m), power, formula)) {
            return;
        }
    }
}

// Joint tally of (copies of letter i, zeros) for i = 1..qmax, as a series
// in x^n w^t v^s q^i, restricted to words with s > 0 or s == 0.
multi_series letter_series_from_enumeration(int max_n, int qmax, bool free_of_letter)
{
    multi_series out(series_caps{max_n, max_n, max_n, qmax});
    for (int n = 1; n <= max_n; ++n) {
        std::map<exponents, std::uint64_t> counts;
        enumerate(static_cast<std::size_t>(n), [&](std::span<const letter> w) {
            std::vector<int> occurrences(static_cast<std::size_t>(qmax) + 1, 0);
            for (letter a : w) {
                if (a <= static_cast<letter>(qmax)) {
                    ++occurrences[a];
                }
            }
            for (int i = 1; i <= qmax; ++i) {
                const int s = occurrences[static_cast<std::size_t>(i)];
                if ((s == 0) == free_of_letter) {
                    ++counts[{n, occurrences[0], s, i}];
                }
            }
            return true;
        });
        for (const auto& [e, count] : counts) {
            out.add_term(e, rational(big_int(count)));
        }
    }
    return out;
}

constexpr int enumeration_leg_limit = 10;

void check_th3(checker& c, const verify_params& p)
{
    const multi_series a4 = gf_A4(p.order, p.qmax, p.effective_jmax());
    if (!c.compare("A(x,w,v,q) against the a_i recurrences", a4, letter_series_from_recurrence(p.order, p.qmax))) {
        return;
    }
    const int n_enum = std::min(p.order, enumeration_leg_limit);
    c.compare("A(x,w,v,q) against enumeration", a4.truncated(series_caps{n_enum, n_enum, n_enum, p.qmax}),
              letter_series_from_enumeration(n_enum, p.qmax, false));
}

void check_th4(checker& c, const verify_params& p)
{
    const multi_series a0 = gf_A0(p.order, p.qmax, p.effective_jmax());
    if (!c.compare("A(x,w,q|0) against the a_i recurrence",
                   a0, letter_free_series_from_recurrence(p.order, p.qmax))) {
        return;
    }
    const int n_enum = std::min(p.order, enumeration_leg_limit);
    c.compare("A(x,w,q|0) against enumeration", a0.truncated(series_caps{n_enum, n_enum, n_enum, p.qmax}),
              letter_series_from_enumeration(n_enum, p.qmax, true));
}

// Determinant and shift identities are checked for 0 <= j <= 2 * order.
void check_cheb_det(checker& c, const verify_params& p)
{
    for (int j = 0; j <= 2 * p.order; ++j) {
        const laurent_series lhs = cheb_u(j - 2) * cheb_u(j) - cheb_u(j - 1) * cheb_u(j - 1);
        if (!c.compare("U_{j-2}U_j - U_{j-1}^2 at j=" + std::to_string(j), lhs, laurent_series::constant(-1))) {
            return;
        }
    }
}

void check_cheb_shift(checker& c, const verify_params& p)
{
    const laurent_series y = y_power(1);
    for (int j = 0; j <= 2 * p.order; ++j) {
        const laurent_series lhs = cheb_u(j) - y * cheb_u(j - 1);
        if (!c.compare("U_j - y U_{j-1} at j=" + std::to_string(j), lhs, y * cheb_u(j + 1))) {
            return;
        }
    }
}

void check_cheb_limit(checker& c, const verify_params& p)
{
    for (int j = 1; j <= p.order; ++j) {
        const series_caps caps = series_caps::uniform(j);
        const laurent_series den = y_power(1) * cheb_u(j);
        const multi_series ratio = to_x_series(ls_divide(cheb_u(j - 1), den, 2 * j + 1), caps);
        const multi_series cat = catalan_series(caps);
        // Agreement through x^(j-1) and a difference exactly at x^j.
        if (!c.compare("U_{j-1}/(y U_j) against C through order j-1, j=" + std::to_string(j),
                       ratio.truncated(series_caps::uniform(j - 1)), cat)) {
            return;
        }
        if (ratio.coeff({j, 0, 0, 0}) == cat.coeff({j, 0, 0, 0})) {
            c.fail("U_{j-1}/(y U_j) agrees with C at order j=" + std::to_string(j));
            return;
        }
    }
}

void check_remark2(checker& c, const verify_params& p)
{
    const int order = p.order;
    const series_caps caps = series_caps::uniform(order);
    const multi_series xc = variable(var::x, caps) * catalan_series(caps);
    multi_series powers(caps);
    multi_series power = one(caps);
    for (int m = 1; m <= order; ++m) {
        power = power * xc;
        powers += power;
    }
    if (!c.compare("sum_m x^m C^m (1 - xC) against xC", powers * (one(caps) - xc), xc)) {
        return;
    }
    if (!c.compare("g solved from g/(1-g) = xC/(1-xC)", powers * ms_invert(one(caps) + powers), xc)) {
        return;
    }
    // A_m = x^m C^m (1 - g) with g = A(x,1) taken from the recurrence.
    multi_series g(caps);
    for (int n = 1; n <= order; ++n) {
        big_int total = 0;
        for (int m = 1; m <= n; ++m) {
            total += a_zeros(n, m);
        }
        g.add_term({n, 0, 0, 0}, rational(total));
    }
    power = one(caps);
    for (int m = 1; m <= order; ++m) {
        power = power * xc;
        multi_series column(caps);
        for (int n = m; n <= order; ++n) {
            column.add_term({n, 0, 0, 0}, rational(a_zeros(n, m)));
        }
        if (!c.compare("x^m C^m (1 - g) against a(n,m), m=" + std::to_string(m), power * (one(caps) - g), column)) {
            return;
        }
    }
}

const std::map<std::string, check_fn>& registry()
{
    static const std::map<std::string, check_fn> table = {
        {"l1", check_l1},
        {"l2", check_l2},
        {"co1", [](checker& c, const verify_params& p) { co1_body(c, p.order, p.effective_jmax()); }},
        {"co2", [](checker& c, const verify_params& p) { co2_body(c, p.order, p.effective_jmax()); }},
        {"co3", check_co3},
        {"co4", check_co4},
        {"th2", check_th2},
        {"th3", check_th3},
        {"th4", check_th4},
        {"cheb-det", check_cheb_det},
        {"cheb-shift", check_cheb_shift},
        {"cheb-limit", check_cheb_limit},
        {"remark2", check_remark2},
    };
    return table;
}

verification_report run_check(const std::string& name, const verify_params& params, bool fault,
                              const std::function<void(checker&)>& body)
{
    verification_report report;
    report.identity = name;
    report.params = params;
    const auto start = std::chrono::steady_clock::now();
    checker c(report, fault);
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
    report.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace

const std::vector<std::string>& identity_names()
{
    static const std::vector<std::string> names = {"l1",  "l2",  "co1",      "co2",        "co3",
                                                   "co4", "th2", "th3",      "th4",        "cheb-det",
                                                   "cheb-shift", "cheb-limit", "remark2"};
    return names;
}

verification_report run_identity(const std::string& name, const verify_params& params,
                                 const std::optional<std::string>& inject_fault)
{
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::domain_error("unknown identity '" + name + "'");
    }
    if (params.order < 1) {
        throw std::domain_error("verify: order must be at least 1");
    }
    if (params.qmax < 1) {
        throw std::domain_error("verify: qmax must be at least 1");
    }
    if (params.effective_jmax() < 1) {
        throw std::domain_error("verify: jmax must be at least 1");
    }
    const bool fault = inject_fault && *inject_fault == name;
    return run_check(name, params, fault, [&](checker& c) { it->second(c, params); });
}

std::vector<verification_report> verify_all(const verify_params& params,
                                            const std::optional<std::string>& inject_fault)
{
    std::vector<std::future<verification_report>> pending;
    for (const auto& name : identity_names()) {
        pending.push_back(std::async(std::launch::async, [&, name] { return run_identity(name, params, inject_fault); }));
    }
    std::vector<verification_report> out;
    for (auto& f : pending) {
        out.push_back(f.get());
    }
    return out;
}

verification_report check_functional_eq(const multi_series& a, int order)
{
    verify_params params;
    params.order = order;
    return run_check("l1", params, false, [&](checker& c) { functional_eq_body(c, a, order); });
}

verification_report check_functional_eq(int order)
{
    return check_functional_eq(zeros_series_from_recurrence(order), order);
}

verification_report check_co1(int order, int jmax)
{
    verify_params params;
    params.order = order;
    params.jmax = jmax;
    return run_check("co1", params, false, [&](checker& c) { co1_body(c, order, jmax); });
}

verification_report check_co2(int order, int jmax)
{
    verify_params params;
    params.order = order;
    params.jmax = jmax;
    return run_check("co2", params, false, [&](checker& c) { co2_body(c, order, jmax); });
}

verification_report check_l_family(int order, int jmax)
{
    verify_params params;
    params.order = order;
    params.jmax = jmax;
    return run_check("l-family", params, false, [&](checker& c) {
        for (var seed : {var::v, var::w}) {
            const multi_series s = variable(seed, series_caps::uniform(order));
            for (int j = -1; j <= jmax; ++j) {
                const std::string what = std::string("L_j iteration against closed form, seed ") +
                                         (seed == var::v ? "v" : "w") + ", j=" + std::to_string(j);
                if (!c.compare(what, l_family(j, s, order), l_closed(j, seed, order))) {
                    return;
                }
            }
        }
    });
}

} // namespace catwords
