#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catwords/exact.hpp"

namespace catwords {

using letter = std::uint32_t;

// True iff `seq` has no drop larger than one and every leftmost occurrence
// of k > 0 has a k - 1 both somewhere before it and somewhere after it.
// Throws std::domain_error on an empty sequence.
bool validate(std::span<const letter> seq);

/// A member of L_n: a validated, non-empty sequence of letters.
class catalan_word {
public:
    /// Throws std::domain_error if `letters` is empty or not a Catalan word.
    explicit catalan_word(std::vector<letter> letters);

    /// Parses the comma-separated decimal form, e.g. "0,1,2,1,0".
    static catalan_word parse(std::string_view text);

    const std::vector<letter>& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    std::string str() const;

    friend auto operator<=>(const catalan_word&, const catalan_word&) = default;

private:
    std::vector<letter> letters_;
};

std::string format_word(std::span<const letter> letters);

struct enumerate_options {
    // Turning this off must not change the output, only the running time.
    bool prune = true;
};

// Called once per word in lexicographic order; return false to stop early.
using word_visitor = std::function<bool(std::span<const letter>)>;

/// Depth-first enumeration of L_n in lexicographic order. Returns the number
/// of words visited. Throws std::domain_error for n == 0.
std::uint64_t enumerate(std::size_t n, const word_visitor& visit, enumerate_options opts = {});

std::vector<catalan_word> enumerate_all(std::size_t n, enumerate_options opts = {});

big_int count_letter(const catalan_word& word, letter i);
big_int count_descents(const catalan_word& word);
letter max_letter(const catalan_word& word);

enum class statistic_kind { zeros, ones, descents, letter_count, max_letter };

struct statistic_spec {
    statistic_kind kind = statistic_kind::zeros;
    letter param = 0; // letter i for letter_count

    static statistic_spec zeros() { return {statistic_kind::zeros, 0}; }
    static statistic_spec ones() { return {statistic_kind::ones, 0}; }
    static statistic_spec descents() { return {statistic_kind::descents, 0}; }
    static statistic_spec letter_count(letter i) { return {statistic_kind::letter_count, i}; }
    static statistic_spec max() { return {statistic_kind::max_letter, 0}; }
};

std::size_t evaluate(const statistic_spec& spec, std::span<const letter> word);

// Joint distribution of a list of statistics over L_n. Only realized keys
// are present.
using tally_table = std::map<std::vector<std::size_t>, big_int>;

tally_table tally(std::size_t n, std::span<const statistic_spec> specs);

big_int table_total(const tally_table& table);

} // namespace catwords
