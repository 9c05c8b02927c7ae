#include "catwords/series.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

namespace catwords {

namespace detail {

std::uint64_t pack(const exponents& e)
{
    const int e0 = e[0] + key_bias;
    if (e0 < 0 || e0 > max_exponent) {
        throw std::domain_error("exponent out of range: " + format_exponents(e));
    }
    for (int k = 1; k < 4; ++k) {
        if (e[k] < 0 || e[k] > max_exponent) {
            throw std::domain_error("exponent out of range: " + format_exponents(e));
        }
    }
    return (std::uint64_t(e0) << 48) | (std::uint64_t(e[1]) << 32) | (std::uint64_t(e[2]) << 16) |
           std::uint64_t(e[3]);
}

exponents unpack(std::uint64_t key)
{
    return {int((key >> 48) & 0xffff) - key_bias, int((key >> 32) & 0xffff), int((key >> 16) & 0xffff),
            int(key & 0xffff)};
}

} // namespace detail

namespace {

using detail::pack;
using detail::term;
using detail::unpack;
using term_list = std::vector<term>;

constexpr int unbounded = detail::max_exponent;

bool within(const exponents& e, const exponents& limit)
{
    return e[0] <= limit[0] && e[1] <= limit[1] && e[2] <= limit[2] && e[3] <= limit[3];
}

exponents as_limit(const series_caps& c) { return {c.x, c.w, c.v, c.q}; }

void normalize(term_list& terms)
{
    std::sort(terms.begin(), terms.end(), [](const term& a, const term& b) { return a.key < b.key; });
    term_list out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().key == t.key) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const term& t) { return t.coeff == 0; });
    terms = std::move(out);
}

term_list filter_terms(const term_list& terms, const exponents& limit)
{
    term_list out;
    for (const auto& t : terms) {
        if (within(unpack(t.key), limit)) {
            out.push_back(t);
        }
    }
    return out;
}

const term* find_term(const term_list& terms, std::uint64_t key)
{
    auto it = std::lower_bound(terms.begin(), terms.end(), key,
                               [](const term& t, std::uint64_t k) { return t.key < k; });
    if (it == terms.end() || it->key != key) {
        return nullptr;
    }
    return &*it;
}

// Sums of products keyed by exponent. Uses a flat slot table over the
// bounding box of the result when that box is small enough.
class accumulator {
public:
    accumulator(const exponents& lo, const exponents& hi) : lo_(lo)
    {
        std::uint64_t box = 1;
        for (int k = 3; k >= 0; --k) {
            stride_[k] = box;
            box *= std::uint64_t(hi[k] - lo[k] + 1);
            if (box > dense_limit) {
                dense_ = false;
                break;
            }
        }
        if (dense_) {
            slots_.assign(box, -1);
        }
    }

    void add_product(const exponents& e, const rational& a, const rational& b)
    {
        std::int32_t& slot = slot_for(e);
        if (slot < 0) {
            slot = static_cast<std::int32_t>(entries_.size());
            entries_.push_back({pack(e), a * b});
        } else {
            entries_[slot].coeff += a * b;
        }
    }

    term_list finish()
    {
        std::erase_if(entries_, [](const term& t) { return t.coeff == 0; });
        std::sort(entries_.begin(), entries_.end(), [](const term& a, const term& b) { return a.key < b.key; });
        return std::move(entries_);
    }

private:
    static constexpr std::uint64_t dense_limit = std::uint64_t{1} << 24;

    std::int32_t& slot_for(const exponents& e)
    {
        if (dense_) {
            std::uint64_t index = 0;
            for (int k = 0; k < 4; ++k) {
                index += std::uint64_t(e[k] - lo_[k]) * stride_[k];
            }
            return slots_[index];
        }
        return sparse_.try_emplace(pack(e), -1).first->second;
    }

    exponents lo_;
    std::array<std::uint64_t, 4> stride_{};
    bool dense_ = true;
    std::vector<std::int32_t> slots_;
    std::unordered_map<std::uint64_t, std::int32_t> sparse_;
    term_list entries_;
};

struct unpacked_term {
    exponents e;
    const rational* coeff;
};

std::vector<unpacked_term> unpack_all(const term_list& terms)
{
    std::vector<unpacked_term> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
        out.push_back({unpack(t.key), &t.coeff});
    }
    return out;
}

// Product of two sorted term lists, dropping every exponent above `limit`.
term_list multiply_terms(const term_list& a, const term_list& b, const exponents& limit)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    const auto ua = unpack_all(a);
    const auto ub = unpack_all(b);
    exponents lo{}, hi{};
    for (int k = 0; k < 4; ++k) {
        int min_a = std::numeric_limits<int>::max(), max_a = std::numeric_limits<int>::min();
        int min_b = min_a, max_b = max_a;
        for (const auto& t : ua) {
            min_a = std::min(min_a, t.e[k]);
            max_a = std::max(max_a, t.e[k]);
        }
        for (const auto& t : ub) {
            min_b = std::min(min_b, t.e[k]);
            max_b = std::max(max_b, t.e[k]);
        }
        lo[k] = min_a + min_b;
        hi[k] = std::min(limit[k], max_a + max_b);
        if (hi[k] < lo[k]) {
            return {};
        }
    }
    if (hi[0] + detail::key_bias > detail::max_exponent || lo[0] + detail::key_bias < 0 ||
        hi[1] > detail::max_exponent || hi[2] > detail::max_exponent || hi[3] > detail::max_exponent) {
        throw std::domain_error("series product exceeds the exponent range");
    }
    accumulator acc(lo, hi);
    const int first_b = ub.front().e[0];
    exponents e;
    for (const auto& ta : ua) {
        if (ta.e[0] + first_b > hi[0]) {
            break;
        }
        for (const auto& tb : ub) {
            e[0] = ta.e[0] + tb.e[0];
            if (e[0] > hi[0]) {
                break;
            }
            e[1] = ta.e[1] + tb.e[1];
            e[2] = ta.e[2] + tb.e[2];
            e[3] = ta.e[3] + tb.e[3];
            if (e[1] > hi[1] || e[2] > hi[2] || e[3] > hi[3]) {
                continue;
            }
            acc.add_product(e, *ta.coeff, *tb.coeff);
        }
    }
    return acc.finish();
}

// Inverse of unit + rest, where every exponent of `rest` is componentwise
// non-negative and lexicographically positive. Coefficients are produced in
// lexicographic order, so every b[e - f] needed for b[e] is already final.
term_list invert_terms(const rational& unit, const term_list& rest, const exponents& limit)
{
    const rational inv_unit = 1 / unit;
    const auto ur = unpack_all(rest);
    std::unordered_map<std::uint64_t, rational> known;
    term_list out;
    std::set<std::uint64_t> frontier{pack({0, 0, 0, 0})};
    const std::uint64_t zero_key = pack({0, 0, 0, 0});
    while (!frontier.empty()) {
        const std::uint64_t key = *frontier.begin();
        frontier.erase(frontier.begin());
        const exponents e = unpack(key);
        rational value;
        if (key == zero_key) {
            value = inv_unit;
        } else {
            rational sum = 0;
            for (const auto& f : ur) {
                if (f.e[0] > e[0] || f.e[1] > e[1] || f.e[2] > e[2] || f.e[3] > e[3]) {
                    continue;
                }
                auto it = known.find(pack({e[0] - f.e[0], e[1] - f.e[1], e[2] - f.e[2], e[3] - f.e[3]}));
                if (it != known.end()) {
                    sum += *f.coeff * it->second;
                }
            }
            value = -sum * inv_unit;
        }
        if (value == 0) {
            continue;
        }
        for (const auto& f : ur) {
            const exponents g{e[0] + f.e[0], e[1] + f.e[1], e[2] + f.e[2], e[3] + f.e[3]};
            if (within(g, limit)) {
                frontier.insert(pack(g));
            }
        }
        known.emplace(key, value);
        out.push_back({key, std::move(value)});
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// series_caps

int series_caps::operator[](var which) const
{
    switch (which) {
    case var::x:
        return x;
    case var::w:
        return w;
    case var::v:
        return v;
    case var::q:
        return q;
    }
    throw std::domain_error("unknown variable");
}

int& series_caps::operator[](var which)
{
    switch (which) {
    case var::x:
        return x;
    case var::w:
        return w;
    case var::v:
        return v;
    case var::q:
        return q;
    }
    throw std::domain_error("unknown variable");
}

series_caps min_caps(const series_caps& a, const series_caps& b)
{
    return {std::min(a.x, b.x), std::min(a.w, b.w), std::min(a.v, b.v), std::min(a.q, b.q)};
}

// ---------------------------------------------------------------------------
// multi_series

multi_series::multi_series(series_caps caps) : caps_(caps)
{
    if (caps.x < 0 || caps.w < 0 || caps.v < 0 || caps.q < 0 || caps.x > unbounded || caps.w > unbounded ||
        caps.v > unbounded || caps.q > unbounded) {
        throw std::domain_error("series caps out of range");
    }
}

multi_series::multi_series(series_caps caps, std::vector<detail::term> terms) : multi_series(caps)
{
    terms_ = std::move(terms);
}

multi_series multi_series::constant(const rational& c, series_caps caps)
{
    multi_series s(caps);
    s.add_term({0, 0, 0, 0}, c);
    return s;
}

multi_series multi_series::monomial(const rational& c, const exponents& e, series_caps caps)
{
    if (e[0] < 0) {
        throw std::domain_error("negative x exponent in a power series");
    }
    multi_series s(caps);
    s.add_term(e, c);
    return s;
}

multi_series multi_series::variable(var which, series_caps caps)
{
    exponents e{0, 0, 0, 0};
    e[static_cast<int>(which)] = 1;
    return monomial(1, e, caps);
}

rational multi_series::coeff(const exponents& e) const
{
    if (e[0] < 0 || !within(e, as_limit(caps_))) {
        return 0;
    }
    const term* t = find_term(terms_, pack(e));
    return t ? t->coeff : rational(0);
}

void multi_series::add_term(const exponents& e, const rational& c)
{
    if (e[0] < 0) {
        throw std::domain_error("negative x exponent in a power series");
    }
    if (c == 0 || !within(e, as_limit(caps_))) {
        return;
    }
    const std::uint64_t key = pack(e);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const term& t, std::uint64_t k) { return t.key < k; });
    if (it != terms_.end() && it->key == key) {
        it->coeff += c;
        if (it->coeff == 0) {
            terms_.erase(it);
        }
    } else {
        terms_.insert(it, term{key, c});
    }
}

multi_series multi_series::truncated(const series_caps& caps) const
{
    const series_caps c = min_caps(caps_, caps);
    if (c == caps_) {
        return *this;
    }
    return multi_series(c, filter_terms(terms_, as_limit(c)));
}

multi_series multi_series::operator-() const
{
    multi_series out = *this;
    for (auto& t : out.terms_) {
        t.coeff = -t.coeff;
    }
    return out;
}

multi_series& multi_series::operator+=(const multi_series& rhs)
{
    const series_caps c = min_caps(caps_, rhs.caps_);
    term_list merged = filter_terms(terms_, as_limit(c));
    for (const auto& t : rhs.terms_) {
        if (within(unpack(t.key), as_limit(c))) {
            merged.push_back(t);
        }
    }
    normalize(merged);
    caps_ = c;
    terms_ = std::move(merged);
    return *this;
}

multi_series& multi_series::operator-=(const multi_series& rhs) { return *this += -rhs; }

multi_series& multi_series::operator*=(const rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.coeff *= c;
    }
    return *this;
}

multi_series operator*(const multi_series& a, const multi_series& b)
{
    const series_caps c = min_caps(a.caps_, b.caps_);
    return multi_series(c, multiply_terms(a.terms_, b.terms_, as_limit(c)));
}

bool operator==(const multi_series& a, const multi_series& b)
{
    if (a.caps_ != b.caps_ || a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
        if (a.terms_[k].key != b.terms_[k].key || a.terms_[k].coeff != b.terms_[k].coeff) {
            return false;
        }
    }
    return true;
}

multi_series ms_add(const multi_series& a, const multi_series& b) { return a + b; }
multi_series ms_mul(const multi_series& a, const multi_series& b) { return a * b; }
multi_series ms_scale(const multi_series& a, const rational& c) { return a * c; }

multi_series ms_invert(const multi_series& a)
{
    const rational unit = a.constant_term();
    if (unit == 0) {
        throw non_invertible_error("ms_invert: zero constant term");
    }
    term_list rest;
    for (const auto& t : a.terms()) {
        if (t.key != pack({0, 0, 0, 0})) {
            rest.push_back(t);
        }
    }
    multi_series out(a.caps());
    for (auto& t : invert_terms(unit, rest, as_limit(a.caps()))) {
        out.add_term(unpack(t.key), t.coeff);
    }
    return out;
}

multi_series ms_substitute(const multi_series& a, var which, const multi_series& s)
{
    const int slot = static_cast<int>(which);
    if (which == var::x) {
        throw std::domain_error("ms_substitute: substituting for x is not supported");
    }
    series_caps caps = min_caps(a.caps(), s.caps());
    const bool divisible = std::all_of(s.terms().begin(), s.terms().end(),
                                       [&](const term& t) { return unpack(t.key)[slot] >= 1; });
    if (!divisible) {
        for (const auto& t : a.terms()) {
            const exponents e = unpack(t.key);
            if (e[slot] > e[0]) {
                throw std::domain_error("ms_substitute: divergent substitution at " + format_exponents(e));
            }
        }
        caps.x = std::min(caps.x, a.caps()[which]);
    }
    std::map<int, term_list> groups;
    for (const auto& t : a.terms()) {
        exponents e = unpack(t.key);
        const int m = e[slot];
        e[slot] = 0;
        if (within(e, as_limit(caps))) {
            groups[m].push_back({pack(e), t.coeff});
        }
    }
    const multi_series base = s.truncated(caps);
    multi_series power = multi_series::constant(1, caps);
    int power_degree = 0;
    multi_series out(caps);
    for (auto& [m, group] : groups) {
        while (power_degree < m) {
            power = power * base;
            ++power_degree;
        }
        normalize(group);
        out += multi_series(caps, std::move(group)) * power;
    }
    return out;
}

multi_series ms_shift_x(const multi_series& a, int k)
{
    if (k < 0) {
        throw std::domain_error("ms_shift_x: negative shift");
    }
    series_caps caps = a.caps();
    caps.x += k;
    term_list terms = a.terms();
    for (auto& t : terms) {
        exponents e = unpack(t.key);
        e[0] += k;
        t.key = pack(e);
    }
    return multi_series(caps, std::move(terms));
}

multi_series catalan_series(const series_caps& caps)
{
    // C = 1 + x C^2, i.e. C_{n+1} = sum_i C_i C_{n-i}.
    std::vector<big_int> c{1};
    for (int n = 0; n < caps.x; ++n) {
        big_int next = 0;
        for (int i = 0; i <= n; ++i) {
            next += c[i] * c[n - i];
        }
        c.push_back(next);
    }
    multi_series out(caps);
    for (int n = 0; n <= caps.x; ++n) {
        out.add_term({n, 0, 0, 0}, rational(c[n]));
    }
    return out;
}

multi_series catalan_series(int order)
{
    if (order < 0) {
        throw std::domain_error("catalan_series: negative order");
    }
    return catalan_series(series_caps::uniform(order));
}

std::optional<coefficient_mismatch> first_mismatch(const multi_series& a, const multi_series& b)
{
    const series_caps c = min_caps(a.caps(), b.caps());
    const term_list ta = filter_terms(a.terms(), as_limit(c));
    const term_list tb = filter_terms(b.terms(), as_limit(c));
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (j == tb.size() || (i < ta.size() && ta[i].key < tb[j].key)) {
            return coefficient_mismatch{unpack(ta[i].key), ta[i].coeff, 0};
        }
        if (i == ta.size() || tb[j].key < ta[i].key) {
            return coefficient_mismatch{unpack(tb[j].key), 0, tb[j].coeff};
        }
        if (ta[i].coeff != tb[j].coeff) {
            return coefficient_mismatch{unpack(ta[i].key), ta[i].coeff, tb[j].coeff};
        }
        ++i;
        ++j;
    }
    return std::nullopt;
}

nlohmann::json to_json(const multi_series& s)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : s.terms()) {
        const exponents e = unpack(t.key);
        out.push_back({{"exponents", {e[0], e[1], e[2], e[3]}},
                       {"num", boost::multiprecision::numerator(t.coeff).str()},
                       {"den", boost::multiprecision::denominator(t.coeff).str()}});
    }
    return out;
}

multi_series multi_series_from_json(const nlohmann::json& j, const series_caps& caps)
{
    if (!j.is_array()) {
        throw std::domain_error("series JSON must be an array");
    }
    multi_series out(caps);
    for (const auto& item : j) {
        const auto& ex = item.at("exponents");
        if (!ex.is_array() || ex.size() != 4) {
            throw std::domain_error("series JSON: exponents must have four entries");
        }
        exponents e{ex[0].get<int>(), ex[1].get<int>(), ex[2].get<int>(), ex[3].get<int>()};
        rational c(big_int(item.at("num").get<std::string>()), big_int(item.at("den").get<std::string>()));
        out.add_term(e, c);
    }
    return out;
}

std::string format_exponents(const exponents& e)
{
    return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + "," +
           std::to_string(e[3]) + ")";
}

// ---------------------------------------------------------------------------
// laurent_series

namespace {

std::optional<int> min_cap(std::optional<int> a, std::optional<int> b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

exponents laurent_limit(std::optional<int> cap)
{
    return {cap ? *cap : unbounded - detail::key_bias, unbounded, unbounded, unbounded};
}

} // namespace

laurent_series::laurent_series(std::optional<int> cap, std::vector<detail::term> terms)
    : cap_(cap), terms_(std::move(terms))
{
}

laurent_series laurent_series::constant(const rational& c) { return monomial(c, {0, 0, 0, 0}); }

laurent_series laurent_series::monomial(const rational& c, const exponents& e)
{
    laurent_series out;
    if (c != 0) {
        out.terms_.push_back({pack(e), c});
    }
    return out;
}

laurent_series laurent_series::from_x_series(const multi_series& s)
{
    term_list terms;
    terms.reserve(s.terms().size());
    for (const auto& t : s.terms()) {
        exponents e = unpack(t.key);
        e[0] *= 2;
        terms.push_back({pack(e), t.coeff});
    }
    // Known through x^N means the error is O(y^(2N+2)).
    return laurent_series(2 * s.caps().x + 1, std::move(terms));
}

std::optional<int> laurent_series::valuation() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return unpack(terms_.front().key)[0];
}

rational laurent_series::coeff(const exponents& e) const
{
    if (cap_ && e[0] > *cap_) {
        return 0;
    }
    const term* t = find_term(terms_, pack(e));
    return t ? t->coeff : rational(0);
}

laurent_series laurent_series::truncated(int cap) const
{
    const auto c = min_cap(cap_, cap);
    return laurent_series(c, filter_terms(terms_, laurent_limit(c)));
}

laurent_series laurent_series::operator-() const
{
    laurent_series out = *this;
    for (auto& t : out.terms_) {
        t.coeff = -t.coeff;
    }
    return out;
}

laurent_series& laurent_series::operator+=(const laurent_series& rhs)
{
    const auto c = min_cap(cap_, rhs.cap_);
    term_list merged = filter_terms(terms_, laurent_limit(c));
    for (const auto& t : filter_terms(rhs.terms_, laurent_limit(c))) {
        merged.push_back(t);
    }
    normalize(merged);
    cap_ = c;
    terms_ = std::move(merged);
    return *this;
}

laurent_series& laurent_series::operator-=(const laurent_series& rhs) { return *this += -rhs; }

laurent_series& laurent_series::operator*=(const rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.coeff *= c;
    }
    return *this;
}

laurent_series operator*(const laurent_series& a, const laurent_series& b)
{
    // a = a_known + O(y^(cap_a + 1)), so the product is exact through
    // min(cap_a + val_b, cap_b + val_a). A zero series with a cap c has
    // valuation c + 1 for this purpose.
    auto effective_val = [](const laurent_series& s) -> std::optional<int> {
        if (auto v = s.valuation()) {
            return v;
        }
        if (s.cap_) {
            return *s.cap_ + 1;
        }
        return std::nullopt; // exact zero
    };
    const auto va = effective_val(a);
    const auto vb = effective_val(b);
    if ((!va && a.is_exact()) || (!vb && b.is_exact())) {
        return laurent_series();
    }
    std::optional<int> cap;
    if (a.cap_) {
        cap = *a.cap_ + *vb;
    }
    if (b.cap_) {
        cap = min_cap(cap, *b.cap_ + *va);
    }
    return laurent_series(cap, multiply_terms(a.terms_, b.terms_, laurent_limit(cap)));
}

bool operator==(const laurent_series& a, const laurent_series& b)
{
    if (a.cap_ != b.cap_ || a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
        if (a.terms_[k].key != b.terms_[k].key || a.terms_[k].coeff != b.terms_[k].coeff) {
            return false;
        }
    }
    return true;
}

laurent_series ls_mul(const laurent_series& a, const laurent_series& b) { return a * b; }

laurent_series ls_invert(const laurent_series& a, std::optional<int> cap)
{
    const auto val = a.valuation();
    if (!val) {
        throw non_invertible_error("ls_invert: zero series");
    }
    const int e = *val;
    // The lowest y-order coefficient must be a constant (free of w, v, q).
    if (a.terms_.size() > 1 && unpack(a.terms_[1].key)[0] == e) {
        throw non_invertible_error("ls_invert: leading coefficient is not a unit");
    }
    const exponents lead = unpack(a.terms_.front().key);
    if (lead[1] != 0 || lead[2] != 0 || lead[3] != 0) {
        throw non_invertible_error("ls_invert: leading coefficient is not a unit");
    }
    std::optional<int> result_cap = cap;
    if (a.cap_) {
        // Relative precision is preserved: cap - e beyond the valuation -e.
        result_cap = min_cap(result_cap, *a.cap_ - 2 * e);
    }
    if (!result_cap) {
        throw std::domain_error("ls_invert: inverse of a Laurent polynomial needs a cap");
    }
    if (*result_cap < -e) {
        return laurent_series(result_cap, {});
    }
    term_list rest;
    for (std::size_t k = 1; k < a.terms_.size(); ++k) {
        exponents r = unpack(a.terms_[k].key);
        r[0] -= e;
        if (a.cap_ && r[0] > *a.cap_ - e) {
            continue;
        }
        rest.push_back({pack(r), a.terms_[k].coeff});
    }
    const exponents limit{*result_cap + e, unbounded, unbounded, unbounded};
    term_list inv = invert_terms(a.terms_.front().coeff, rest, limit);
    for (auto& t : inv) {
        exponents r = unpack(t.key);
        r[0] -= e;
        t.key = pack(r);
    }
    return laurent_series(result_cap, std::move(inv));
}

laurent_series ls_divide(const laurent_series& num, const laurent_series& den, int cap)
{
    const auto val = num.valuation();
    if (!val) {
        return laurent_series::constant(0).truncated(cap);
    }
    return (num * ls_invert(den, cap - *val)).truncated(cap);
}

rational ls_coeff(const laurent_series& a, const exponents& e) { return a.coeff(e); }

multi_series to_x_series(const laurent_series& a, const series_caps& caps)
{
    series_caps out_caps = caps;
    if (a.cap_) {
        if (*a.cap_ < 0) {
            throw std::domain_error("to_x_series: series is not known at order zero");
        }
        out_caps.x = std::min(out_caps.x, *a.cap_ / 2);
    }
    multi_series out(out_caps);
    for (const auto& t : a.terms_) {
        exponents e = unpack(t.key);
        if (e[0] % 2 != 0) {
            throw parity_error("to_x_series: odd power of y survives at " + format_exponents(e));
        }
        if (e[0] < 0) {
            throw std::domain_error("to_x_series: negative power of y " + format_exponents(e));
        }
        e[0] /= 2;
        out.add_term(e, t.coeff);
    }
    return out;
}

laurent_series cheb_u(int j)
{
    if (j < -3) {
        throw std::domain_error("cheb_u: index below -3");
    }
    const laurent_series y_inv = laurent_series::monomial(1, {-1, 0, 0, 0});
    if (j < 0) {
        // Backward recurrence U_{j-2} = y^{-1} U_{j-1} - U_j from U_0, U_1.
        switch (j) {
        case -1:
            return laurent_series();
        case -2:
            return laurent_series::constant(-1);
        default:
            return -y_inv;
        }
    }
    laurent_series prev = laurent_series::constant(1);
    if (j == 0) {
        return prev;
    }
    laurent_series cur = y_inv;
    for (int k = 2; k <= j; ++k) {
        laurent_series next = y_inv * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

multi_series l_family(int j, const multi_series& seed, int order)
{
    if (j < -1) {
        throw std::domain_error("l_family: index below -1");
    }
    series_caps caps = seed.caps();
    caps.x = std::min(caps.x, order);
    multi_series current = seed.truncated(caps);
    const multi_series one = multi_series::constant(1, caps);
    const multi_series x = multi_series::variable(var::x, caps);
    for (int k = 0; k <= j; ++k) {
        current = ms_invert(one - x * current);
    }
    return current;
}

multi_series l_closed(int j, var seed, int order)
{
    if (j < -1) {
        throw std::domain_error("l_closed: index below -1");
    }
    if (seed != var::v && seed != var::w) {
        throw std::domain_error("l_closed: seed must be v or w");
    }
    exponents seed_y2{2, 0, 0, 0};
    seed_y2[static_cast<int>(seed)] = 1;
    // P = 1 - x*seed; numerator (P/y) U_{j-1} - U_{j-2}; denominator
    // y ((P/y) U_j - U_{j-1}) = P U_j - y U_{j-1}.
    const laurent_series p = laurent_series::constant(1) - laurent_series::monomial(1, seed_y2);
    const laurent_series y = laurent_series::monomial(1, {1, 0, 0, 0});
    const laurent_series y_inv = laurent_series::monomial(1, {-1, 0, 0, 0});
    const laurent_series num = p * y_inv * cheb_u(j - 1) - cheb_u(j - 2);
    const laurent_series den = p * cheb_u(j) - y * cheb_u(j - 1);
    return to_x_series(ls_divide(num, den, 2 * order + 1), series_caps::uniform(order));
}

} // namespace catwords
