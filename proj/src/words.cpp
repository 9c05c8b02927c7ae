#include "catwords/words.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace catwords {

bool validate(std::span<const letter> seq)
{
    if (seq.empty()) {
        throw std::domain_error("validate: empty sequence");
    }
    const std::size_t n = seq.size();
    // Values of a Catalan word form a contiguous range 0..M with M < n.
    for (letter a : seq) {
        if (a >= n) {
            return false;
        }
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (seq[p + 1] + 1 < seq[p]) {
            return false;
        }
    }
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first(n, none), last(n, none);
    for (std::size_t p = 0; p < n; ++p) {
        if (first[seq[p]] == none) {
            first[seq[p]] = p;
        }
        last[seq[p]] = p;
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (first[k] == none) {
            continue;
        }
        if (first[k - 1] == none || first[k - 1] > first[k] || last[k - 1] < first[k]) {
            return false;
        }
    }
    return true;
}

catalan_word::catalan_word(std::vector<letter> letters) : letters_(std::move(letters))
{
    if (!validate(letters_)) {
        throw std::domain_error("not a Catalan word: " + format_word(letters_));
    }
}

catalan_word catalan_word::parse(std::string_view text)
{
    std::vector<letter> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        std::string_view item = text.substr(pos, comma - pos);
        letter value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw std::domain_error("malformed word: '" + std::string(text) + "'");
        }
        out.push_back(value);
        pos = comma + 1;
    }
    return catalan_word(std::move(out));
}

std::string catalan_word::str() const { return format_word(letters_); }

std::string format_word(std::span<const letter> letters)
{
    std::string out;
    for (std::size_t p = 0; p < letters.size(); ++p) {
        if (p != 0) {
            out.push_back(',');
        }
        out += std::to_string(letters[p]);
    }
    return out;
}

namespace {

// Depth-first search over extensions. `pending` holds, as a bitmask, the
// values k - 1 that are still owed to the right of some freshly introduced k.
class enumerator {
public:
    enumerator(std::size_t n, const word_visitor& visit, bool prune)
        : n_(n), visit_(visit), prune_(prune), word_(n, 0)
    {
    }

    std::uint64_t run()
    {
        word_[0] = 0;
        extend(1, 0, 0);
        return visited_;
    }

private:
    void extend(std::size_t pos, letter max_so_far, std::uint64_t pending)
    {
        if (pos == n_) {
            if (pending == 0) {
                ++visited_;
                if (!visit_(std::span<const letter>(word_))) {
                    stopped_ = true;
                }
            }
            return;
        }
        const letter last = word_[pos - 1];
        const letter lo = last == 0 ? 0 : last - 1;
        const std::size_t remaining = n_ - pos - 1;
        for (letter u = lo; u <= max_so_far + 1 && !stopped_; ++u) {
            if (u >= 64) {
                break;
            }
            std::uint64_t next = pending & ~(std::uint64_t{1} << u);
            if (u == max_so_far + 1) {
                next |= std::uint64_t{1} << (u - 1);
            }
            if (prune_ && next != 0) {
                // Reaching the smallest owed value takes one step per level.
                const auto lowest = static_cast<letter>(std::countr_zero(next));
                if (remaining < u - lowest) {
                    continue;
                }
            }
            word_[pos] = u;
            extend(pos + 1, std::max(max_so_far, u), next);
        }
    }

    std::size_t n_;
    const word_visitor& visit_;
    bool prune_;
    std::vector<letter> word_;
    std::uint64_t visited_ = 0;
    bool stopped_ = false;
};

} // namespace

std::uint64_t enumerate(std::size_t n, const word_visitor& visit, enumerate_options opts)
{
    if (n == 0) {
        throw std::domain_error("enumerate: n must be at least 1");
    }
    if ((n - 1) / 2 >= 64) {
        throw std::domain_error("enumerate: n too large");
    }
    return enumerator(n, visit, opts.prune).run();
}

std::vector<catalan_word> enumerate_all(std::size_t n, enumerate_options opts)
{
    std::vector<catalan_word> out;
    enumerate(
        n,
        [&](std::span<const letter> w) {
            out.emplace_back(std::vector<letter>(w.begin(), w.end()));
            return true;
        },
        opts);
    return out;
}

namespace {

std::size_t letter_occurrences(std::span<const letter> w, letter i)
{
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), i));
}

std::size_t descents(std::span<const letter> w)
{
    std::size_t k = 0;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p] > w[p + 1]) {
            ++k;
        }
    }
    return k;
}

} // namespace

big_int count_letter(const catalan_word& word, letter i) { return letter_occurrences(word.letters(), i); }

big_int count_descents(const catalan_word& word) { return descents(word.letters()); }

letter max_letter(const catalan_word& word)
{
    return *std::max_element(word.letters().begin(), word.letters().end());
}

std::size_t evaluate(const statistic_spec& spec, std::span<const letter> word)
{
    switch (spec.kind) {
    case statistic_kind::zeros:
        return letter_occurrences(word, 0);
    case statistic_kind::ones:
        return letter_occurrences(word, 1);
    case statistic_kind::descents:
        return descents(word);
    case statistic_kind::letter_count:
        return letter_occurrences(word, spec.param);
    case statistic_kind::max_letter:
        return *std::max_element(word.begin(), word.end());
    }
    throw std::domain_error("unknown statistic");
}

tally_table tally(std::size_t n, std::span<const statistic_spec> specs)
{
    if (specs.empty()) {
        throw std::domain_error("tally: no statistics requested");
    }
    std::map<std::vector<std::size_t>, std::uint64_t> counts;
    std::vector<std::size_t> key(specs.size());
    enumerate(n, [&](std::span<const letter> w) {
        for (std::size_t s = 0; s < specs.size(); ++s) {
            key[s] = evaluate(specs[s], w);
        }
        ++counts[key];
        return true;
    });
    tally_table out;
    for (const auto& [k, c] : counts) {
        out.emplace(k, big_int(c));
    }
    return out;
}

big_int table_total(const tally_table& table)
{
    big_int total = 0;
    for (const auto& [key, count] : table) {
        total += count;
    }
    return total;
}

} // namespace catwords
