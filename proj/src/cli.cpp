#include "catwords/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "catwords/counting.hpp"
#include "catwords/genfun.hpp"
#include "catwords/words.hpp"

namespace catwords {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rows keyed by the statistic values, nonzero counts only.
struct count_table {
    std::vector<std::string> columns;
    std::map<std::vector<std::int64_t>, big_int> rows;

    void put(std::vector<std::int64_t> key, const big_int& value)
    {
        if (value != 0) {
            rows[std::move(key)] = value;
        }
    }
};

void print_table(const count_table& table, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [key, value] : table.rows) {
            nlohmann::json row;
            for (std::size_t c = 0; c < key.size(); ++c) {
                row[table.columns[c]] = key[c];
            }
            row["count"] = value.str();
            rows.push_back(std::move(row));
        }
        out << rows.dump() << '\n';
        return;
    }
    if (format == "csv") {
        for (const auto& column : table.columns) {
            out << column << ',';
        }
        out << "count\n";
    }
    for (const auto& [key, value] : table.rows) {
        for (auto k : key) {
            out << k << ',';
        }
        out << value << '\n';
    }
}

std::vector<std::int64_t> to_key(const std::vector<std::size_t>& values)
{
    return {values.begin(), values.end()};
}

count_table tally_table_of(std::size_t n, std::vector<statistic_spec> specs, std::vector<std::string> columns)
{
    count_table table{std::move(columns), {}};
    for (const auto& [key, value] : tally(n, specs)) {
        table.put(to_key(key), value);
    }
    return table;
}

rational series_coeff(const multi_series& s, const exponents& e) { return s.coeff(e); }

big_int integral_coeff(const multi_series& s, const exponents& e) { return to_integer(series_coeff(s, e)); }

struct count_request {
    std::string table;
    std::string source;
    std::int64_t n = 0;
    std::optional<std::int64_t> i;
};

count_table zeros_table(const count_request& r)
{
    const auto n = r.n;
    if (r.source == "enum") {
        return tally_table_of(n, {statistic_spec::zeros()}, {"m"});
    }
    count_table table{{"m"}, {}};
    if (r.source == "recurrence") {
        for (std::int64_t m = 1; m <= n; ++m) {
            table.put({m}, a_zeros(n, m));
        }
    } else if (r.source == "closed") {
        for (std::int64_t m = 1; m <= n; ++m) {
            table.put({m}, a_zeros_closed(n, m));
        }
    } else {
        const multi_series a = gf_A(static_cast<int>(n));
        for (std::int64_t m = 1; m <= n; ++m) {
            table.put({m}, integral_coeff(a, {static_cast<int>(n), 0, static_cast<int>(m), 0}));
        }
    }
    return table;
}

count_table zeros_descents_table(const count_request& r)
{
    if (r.source == "enum") {
        return tally_table_of(r.n, {statistic_spec::zeros(), statistic_spec::descents()}, {"m", "k"});
    }
    count_table table{{"m", "k"}, {}};
    for (std::int64_t m = 1; m <= r.n; ++m) {
        for (std::int64_t k = 0; k < r.n; ++k) {
            table.put({m, k}, a_desc(r.n, m, k));
        }
    }
    return table;
}

count_table ones_table(const count_request& r)
{
    const auto n = r.n;
    if (r.source == "enum") {
        return tally_table_of(n, {statistic_spec::ones()}, {"m"});
    }
    count_table table{{"m"}, {}};
    if (r.source == "recurrence") {
        for (std::int64_t m = 0; m <= n - 1; ++m) {
            table.put({m}, b_ones(n, m));
        }
    } else if (r.source == "closed") {
        table.put({0}, 1);
        for (std::int64_t m = 1; m <= n - 1 && n >= 2; ++m) {
            table.put({m}, b_ones_closed(n, m));
        }
    } else {
        const multi_series b = gf_B(static_cast<int>(n));
        for (std::int64_t m = 0; m <= n - 1; ++m) {
            table.put({m}, integral_coeff(b, {static_cast<int>(n), 0, static_cast<int>(m), 0}));
        }
    }
    return table;
}

count_table ones_zeros_table(const count_request& r)
{
    const auto n = r.n;
    if (r.source == "enum") {
        return tally_table_of(n, {statistic_spec::ones(), statistic_spec::zeros()}, {"m", "i"});
    }
    count_table table{{"m", "i"}, {}};
    table.put({0, n}, 1);
    for (std::int64_t m = 1; m <= n - 2; ++m) {
        for (std::int64_t i = 2; i <= n - m; ++i) {
            table.put({m, i}, b_ones_zeros(n, m, i));
        }
    }
    return table;
}

count_table letter_table(const count_request& r)
{
    if (!r.i || *r.i < 1) {
        throw usage_error("count --table letter requires --i >= 1");
    }
    const auto n = r.n;
    const auto i = *r.i;
    if (r.source == "enum") {
        return tally_table_of(n, {statistic_spec::letter_count(static_cast<letter>(i)), statistic_spec::zeros()},
                              {"s", "t"});
    }
    count_table table{{"s", "t"}, {}};
    if (r.source == "recurrence") {
        for (std::int64_t s = 0; s <= n; ++s) {
            for (std::int64_t t = 1; t <= n; ++t) {
                table.put({s, t}, a_letter(i, n, s, t));
            }
        }
        return table;
    }
    const int order = static_cast<int>(n);
    const int qmax = static_cast<int>(i);
    const verify_params defaults{order, qmax, std::nullopt};
    const multi_series a4 = gf_A4(order, qmax, defaults.effective_jmax());
    const multi_series a0 = gf_A0(order, qmax, defaults.effective_jmax());
    for (int t = 1; t <= order; ++t) {
        table.put({0, t}, integral_coeff(a0, {order, t, 0, qmax}));
        for (int s = 1; s <= order; ++s) {
            table.put({s, t}, integral_coeff(a4, {order, t, s, qmax}));
        }
    }
    return table;
}

count_table max_letter_table(const count_request& r)
{
    if (r.source == "enum") {
        return tally_table_of(r.n, {statistic_spec::max()}, {"i"});
    }
    count_table table{{"i"}, {}};
    for (std::int64_t i = 0; i <= r.n; ++i) {
        table.put({i}, max_letter_count(r.n, i));
    }
    return table;
}

big_int fine_value(const count_request& r)
{
    if (r.source == "enum") {
        big_int odd = 0;
        for (const auto& [key, value] : tally(r.n, std::vector{statistic_spec::zeros()})) {
            if (key[0] % 2 == 1) {
                odd += value;
            }
        }
        return odd;
    }
    if (r.source == "recurrence") {
        return fine_number(r.n);
    }
    const int order = static_cast<int>(r.n);
    return integral_coeff(gf_fine(order), {order, 0, 0, 0});
}

const std::map<std::string, std::vector<std::string>>& supported_sources()
{
    static const std::map<std::string, std::vector<std::string>> table = {
        {"zeros", {"enum", "recurrence", "closed", "genfun"}},
        {"zeros-descents", {"enum", "recurrence"}},
        {"ones", {"enum", "recurrence", "closed", "genfun"}},
        {"ones-zeros", {"enum", "recurrence"}},
        {"letter", {"enum", "recurrence", "genfun"}},
        {"max-letter", {"enum", "recurrence"}},
        {"fine", {"enum", "recurrence", "genfun"}},
    };
    return table;
}

int cmd_count(const count_request& r, const std::string& format, std::ostream& out)
{
    const auto& allowed = supported_sources().at(r.table);
    if (std::find(allowed.begin(), allowed.end(), r.source) == allowed.end()) {
        throw usage_error("table '" + r.table + "' has no source '" + r.source + "'");
    }
    if (r.n < 1) {
        throw usage_error("--n must be at least 1");
    }
    if (r.table == "fine") {
        const big_int value = fine_value(r);
        if (format == "json") {
            out << nlohmann::json{{"n", r.n}, {"count", value.str()}}.dump() << '\n';
        } else if (format == "csv") {
            out << "n,count\n" << r.n << ',' << value << '\n';
        } else {
            out << value << '\n';
        }
        return exit_ok;
    }
    static const std::map<std::string, std::function<count_table(const count_request&)>> builders = {
        {"zeros", zeros_table},   {"zeros-descents", zeros_descents_table},
        {"ones", ones_table},     {"ones-zeros", ones_zeros_table},
        {"letter", letter_table}, {"max-letter", max_letter_table},
    };
    print_table(builders.at(r.table)(r), format, out);
    return exit_ok;
}

int cmd_enumerate(std::int64_t n, const std::string& format, std::ostream& out)
{
    if (n < 1) {
        throw usage_error("--n must be at least 1");
    }
    if (format == "json") {
        nlohmann::json words = nlohmann::json::array();
        enumerate(static_cast<std::size_t>(n), [&](std::span<const letter> w) {
            words.push_back(std::vector<letter>(w.begin(), w.end()));
            return true;
        });
        out << words.dump() << '\n';
        return exit_ok;
    }
    if (format == "csv") {
        for (std::int64_t k = 1; k <= n; ++k) {
            out << 'l' << k << (k == n ? '\n' : ',');
        }
    }
    enumerate(static_cast<std::size_t>(n), [&](std::span<const letter> w) {
        out << format_word(w) << '\n';
        return true;
    });
    return exit_ok;
}

struct series_request {
    std::string name;
    int order = 0;
    std::optional<int> qmax;
    std::optional<int> m;
    std::optional<int> jmax;
};

int cmd_series(const series_request& r, std::ostream& out)
{
    if (r.order < 1) {
        throw usage_error("--order must be at least 1");
    }
    const int jmax = r.jmax.value_or(r.order + 2);
    auto need_qmax = [&] {
        if (!r.qmax) {
            throw usage_error("series " + r.name + " requires --qmax");
        }
        return *r.qmax;
    };
    std::optional<multi_series> s;
    if (r.name == "catalan") {
        s = catalan_series(series_caps{r.order, 0, 0, 0});
    } else if (r.name == "A") {
        s = gf_A(r.order);
    } else if (r.name == "Am") {
        if (!r.m) {
            throw usage_error("series Am requires --m");
        }
        s = gf_A_m(*r.m, r.order);
    } else if (r.name == "B") {
        s = gf_B(r.order);
    } else if (r.name == "fine") {
        s = gf_fine(r.order);
    } else if (r.name == "A-lemma") {
        s = gf_A_via_lemma(r.order, jmax);
    } else if (r.name == "A4") {
        s = gf_A4(r.order, need_qmax(), jmax);
    } else {
        s = gf_A0(r.order, need_qmax(), jmax);
    }
    const auto& caps = s->caps();
    const nlohmann::json doc = {{"name", r.name},
                                {"caps", {{"x", caps.x}, {"w", caps.w}, {"v", caps.v}, {"q", caps.q}}},
                                {"terms", to_json(*s)}};
    out << doc.dump() << '\n';
    return exit_ok;
}

int cmd_verify(const std::string& identity, const verify_params& params,
               const std::optional<std::string>& inject_fault, std::ostream& out)
{
    std::vector<verification_report> reports;
    if (identity == "all") {
        reports = verify_all(params, inject_fault);
    } else {
        reports.push_back(run_identity(identity, params, inject_fault));
    }
    bool passed = true;
    nlohmann::json items = nlohmann::json::array();
    for (const auto& report : reports) {
        passed = passed && report.passed;
        items.push_back(to_json(report));
    }
    out << nlohmann::json{{"status", passed ? "pass" : "fail"}, {"reports", items}}.dump(2) << '\n';
    return passed ? exit_ok : exit_failed;
}

std::vector<std::string> identity_choices()
{
    std::vector<std::string> out{"all"};
    const auto& names = identity_names();
    out.insert(out.end(), names.begin(), names.end());
    return out;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Catalan words: enumeration, statistics, generating functions and identity checks"};
    app.require_subcommand(1);

    std::int64_t n = 0;
    std::string format = "lines";
    const std::vector<std::string> formats{"lines", "csv", "json"};

    auto* enumerate_cmd = app.add_subcommand("enumerate", "List the words of length n in lexicographic order");
    enumerate_cmd->add_option("--n", n, "word length")->required();
    enumerate_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

    count_request counting;
    auto* count_cmd = app.add_subcommand("count", "Print a count table");
    std::vector<std::string> tables;
    for (const auto& [name, sources] : supported_sources()) {
        tables.push_back(name);
    }
    count_cmd->add_option("--table", counting.table)->required()->check(CLI::IsMember(tables));
    count_cmd->add_option("--n", counting.n)->required();
    count_cmd->add_option("--i", counting.i, "letter for --table letter");
    count_cmd->add_option("--source", counting.source)
        ->required()
        ->check(CLI::IsMember({"enum", "recurrence", "closed", "genfun"}));
    count_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

    series_request series;
    auto* series_cmd = app.add_subcommand("series", "Print a generating function as canonical JSON");
    series_cmd->add_option("--name", series.name)
        ->required()
        ->check(CLI::IsMember({"catalan", "A", "Am", "B", "fine", "A-lemma", "A4", "A0"}));
    series_cmd->add_option("--order", series.order)->required();
    series_cmd->add_option("--qmax", series.qmax);
    series_cmd->add_option("--m", series.m);
    series_cmd->add_option("--jmax", series.jmax);
    series_cmd->add_option("--format", format)->check(CLI::IsMember({"json"}));

    std::string identity;
    verify_params params;
    std::optional<std::string> inject_fault;
    auto* verify_cmd = app.add_subcommand("verify", "Check identities coefficient by coefficient");
    verify_cmd->add_option("--identity", identity)->required()->check(CLI::IsMember(identity_choices()));
    verify_cmd->add_option("--order", params.order);
    verify_cmd->add_option("--qmax", params.qmax);
    verify_cmd->add_option("--jmax", params.jmax);
    verify_cmd->add_option("--inject-fault", inject_fault, "perturb one coefficient of the named identity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return exit_usage;
    }

    try {
        if (enumerate_cmd->parsed()) {
            return cmd_enumerate(n, format, out);
        }
        if (count_cmd->parsed()) {
            return cmd_count(counting, format, out);
        }
        if (series_cmd->parsed()) {
            return cmd_series(series, out);
        }
        return cmd_verify(identity, params, inject_fault, out);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace catwords
