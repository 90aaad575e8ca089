#pragma once

// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it in-process.

#include "shiftbin/shiftbin.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftbin::cli {

enum ExitCode : int { Success = 0, CheckFailed = 1, UsageError = 2 };

using Json = nlohmann::ordered_json;

inline std::string fmt17(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Every flag; each one may also be given as `name=value` in a --config file.
struct RunConfig {
    std::string selector; // verify suite, coeffs family or seq kind

    std::int64_t r = 2;
    std::string l = "1,1";
    std::int64_t p = 1;
    std::string q = "inf";
    std::optional<std::int64_t> area;
    std::optional<std::int64_t> a_max;
    std::string m = "1";
    std::string s = "1/2";
    std::int64_t n = 2;
    std::int64_t g = 2;
    std::string window;
    std::string format = "csv";
    std::string out;
    unsigned workers = 1;
    std::int64_t l1 = 2, l2 = 2, l1p = 1, l2p = 1;
    bool accelerate = false;
    bool check = false;
};

// ---------------------------------------------------------------------------
// Flag parsing helpers

inline std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) {
            throw std::invalid_argument(std::string("malformed ") + what + ": '" + text + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument(std::string("empty ") + what);
    }
    return out;
}

inline std::int64_t parse_int(const std::string& text, const char* what)
{
    const auto v = parse_int_list(text, what);
    if (v.size() != 1) {
        throw std::invalid_argument(std::string(what) + " must be a single integer");
    }
    return v.front();
}

/// "5", "10,100,1000" or "start:stop:stride" (stop inclusive).
inline std::vector<std::int64_t> parse_m_sweep(const std::string& text)
{
    if (text.find(':') == std::string::npos) {
        return parse_int_list(text, "--m");
    }
    std::vector<std::int64_t> fields;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        fields.push_back(parse_int(item, "--m"));
    }
    if (fields.size() < 2 || fields.size() > 3) {
        throw std::invalid_argument("--m sweep must be start:stop[:stride]");
    }
    const std::int64_t stride = fields.size() == 3 ? fields[2] : 1;
    if (stride <= 0 || fields[1] < fields[0]) {
        throw std::invalid_argument("--m sweep needs stride > 0 and stop >= start");
    }
    std::vector<std::int64_t> out;
    for (std::int64_t m = fields[0]; m <= fields[1]; m += stride) {
        out.push_back(m);
    }
    return out;
}

inline Phase parse_phase(const RunConfig& cfg)
{
    if (cfg.q == "inf" || cfg.q == "infinity") {
        return Phase::infinite();
    }
    return Phase::ratio(cfg.p, parse_int(cfg.q, "--q"));
}

inline SumSpec parse_spec(const RunConfig& cfg)
{
    return SumSpec(cfg.r, parse_int_list(cfg.l, "--l"), parse_phase(cfg));
}

inline Window parse_window(const std::string& name, Window fallback)
{
    if (name.empty()) {
        return fallback;
    }
    if (name == "one-sided" || name == "paper") {
        return Window::OneSided;
    }
    if (name == "symmetric") {
        return Window::Symmetric;
    }
    throw std::invalid_argument("--window must be one-sided (alias paper) or symmetric");
}

// ---------------------------------------------------------------------------
// Output

class Sink {
public:
    explicit Sink(const RunConfig& cfg, std::ostream& fallback) : out_(&fallback)
    {
        if (!cfg.out.empty()) {
            file_.open(cfg.out, std::ios::binary);
            if (!file_) {
                throw std::invalid_argument("cannot open --out " + cfg.out);
            }
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

inline bool want_json(const RunConfig& cfg)
{
    if (cfg.format == "json") {
        return true;
    }
    if (cfg.format == "csv") {
        return false;
    }
    throw std::invalid_argument("--format must be csv or json");
}

// ---------------------------------------------------------------------------
// verify

struct CheckRow {
    std::string check;
    std::string lhs;
    std::string rhs;
    std::optional<double> abs_err; // empty: exact comparison
    bool pass = false;
};

inline CheckRow exact_row(std::string name, const Rational& lhs, const Rational& rhs)
{
    return {std::move(name), lhs.str(), rhs.str(), std::nullopt, lhs == rhs};
}

inline CheckRow exact_row(std::string name, const ScaledValue& lhs, const ScaledValue& rhs)
{
    return {std::move(name), lhs.str(), rhs.str(), std::nullopt, lhs == rhs};
}

inline std::vector<CheckRow> verify_identity(const SumSpec& spec, bool reconstructions)
{
    oracle::IdentityOptions opt;
    opt.include_odd = reconstructions;
    opt.include_sin = reconstructions;
    std::vector<CheckRow> rows;
    for (const auto& c : oracle::identity_report(spec, opt)) {
        if (!reconstructions || c.name != "even-cosine") {
            rows.push_back({c.name, fmt17(c.lhs), fmt17(c.rhs), c.abs_err, c.pass});
        }
    }
    return rows;
}

inline std::vector<CheckRow> verify_odd_equality(const SumSpec& spec, std::int64_t a_max)
{
    std::vector<CheckRow> rows;
    for (auto area : odd_areas(a_max)) {
        rows.push_back(exact_row("odd-equality A=" + std::to_string(area), odd_area_coefficient(spec, area),
                                 odd_area_coefficient_sinc(spec, area)));
    }
    return rows;
}

inline std::vector<CheckRow> verify_sum_rule(const SumSpec& spec)
{
    std::vector<CheckRow> rows;
    rows.push_back(exact_row("sum-rule even", sum_rule_even(spec), spec.central_binomial()));
    const auto support = even_area_support(spec);
    const auto table = build_table(Family::Even, spec, support);
    rows.push_back({"even symmetry", "", "", std::nullopt, has_declared_symmetry(table)});
    return rows;
}

inline std::vector<CheckRow> verify_cg(std::int64_t n, std::int64_t g)
{
    std::vector<CheckRow> rows;
    bool forms_agree = true;
    std::string first_mismatch;
    for_each_g_composition(n, g, [&](const GComposition& c) {
        if (forms_agree && cg_weight(c) != cg_weight_factorial_form(c)) {
            forms_agree = false;
            first_mismatch = c.str();
        }
    });
    rows.push_back({"cg forms agree", first_mismatch, "", std::nullopt, forms_agree});
    rows.push_back(exact_row("cg sum-rule", cg_sum_rule(n, g), newton_binomial(g * n, n)));
    return rows;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    std::string suite = cfg.selector.empty() ? "all" : cfg.selector;
    if (suite == "sonice") {
        suite = "identity";
    }
    std::vector<CheckRow> rows;
    auto add = [&rows](std::vector<CheckRow> more) { rows.insert(rows.end(), more.begin(), more.end()); };
    const bool all = suite == "all";
    if (all || suite == "identity") {
        SumSpec spec = parse_spec(cfg);
        add(verify_identity(spec, false));
    }
    if (all || suite == "reconstruct") {
        add(verify_identity(parse_spec(cfg), true));
    }
    if (all || suite == "odd-equality") {
        add(verify_odd_equality(parse_spec(cfg), cfg.a_max.value_or(9)));
    }
    if (all || suite == "sum-rule") {
        add(verify_sum_rule(parse_spec(cfg).with_phase(Phase::infinite())));
    }
    if (all || suite == "cg") {
        add(verify_cg(cfg.n, cfg.g));
    }
    if (rows.empty()) {
        throw std::invalid_argument("unknown verify suite '" + suite +
                                    "' (identity, reconstruct, odd-equality, sum-rule, cg, all)");
    }
    Json report;
    report["suite"] = suite;
    report["checks"] = Json::array();
    bool pass = true;
    for (const auto& row : rows) {
        Json j;
        j["check"] = row.check;
        j["lhs"] = row.lhs;
        j["rhs"] = row.rhs;
        if (row.abs_err) {
            j["abs_err"] = *row.abs_err;
        } else {
            j["abs_err"] = "exact";
        }
        j["pass"] = row.pass;
        report["checks"].push_back(std::move(j));
        pass = pass && row.pass;
    }
    report["pass"] = pass;
    out << report.dump(2) << "\n";
    return pass ? Success : CheckFailed;
}

// ---------------------------------------------------------------------------
// coeffs

inline std::vector<std::int64_t> coeff_areas(const RunConfig& cfg, Family family, const SumSpec& spec)
{
    if (cfg.area) {
        return {*cfg.area};
    }
    const bool even = family_uses_even_areas(family);
    if (!cfg.a_max && family == Family::Even) {
        return even_area_support(spec);
    }
    std::int64_t a_max = cfg.a_max.value_or(oracle::split_support_bound(spec) + (even ? 0 : 1));
    if (a_max < 0) {
        throw std::invalid_argument("--a-max must be >= 0");
    }
    return even ? even_areas(a_max) : odd_areas(a_max);
}

inline int cmd_coeffs(const RunConfig& cfg, std::ostream& out)
{
    const auto family = parse_family(cfg.selector);
    if (!family) {
        throw std::invalid_argument("unknown coefficient family '" + cfg.selector +
                                    "' (even, odd, odd-sinc, trade-centered, trade-unit, trade-split, four-trade)");
    }
    const bool json = want_json(cfg);
    const SumSpec spec = parse_spec(cfg);
    const auto areas = coeff_areas(cfg, *family, spec);
    const std::int64_t m = parse_int(cfg.m, "--m");
    const auto table = build_table(*family, spec, areas, m, parse_window(cfg.window, Window::Symmetric), cfg.workers);

    if (json) {
        Json doc;
        doc["family"] = family_name(*family);
        doc["spec"] = spec.str();
        doc["symmetry"] = table.symmetry() == Symmetry::Symmetric ? "symmetric" : "antisymmetric";
        doc["rows"] = Json::array();
        for (const auto& [area, value] : table.entries) {
            doc["rows"].push_back({{"A", area},
                                   {"num", value.coeff().numerator().get_str()},
                                   {"den", value.coeff().denominator().get_str()},
                                   {"pi_exp", value.scale_exp()},
                                   {"float", value.to_double()}});
        }
        out << doc.dump(2) << "\n";
        return Success;
    }
    out << "A,num,den,pi_exp,float\n";
    for (const auto& [area, value] : table.entries) {
        out << area << ',' << value.coeff().numerator().get_str() << ',' << value.coeff().denominator().get_str()
            << ',' << value.scale_exp() << ',' << fmt17(value.to_double()) << "\n";
    }
    return Success;
}

// ---------------------------------------------------------------------------
// seq

inline std::vector<SeqRecord> run_sequence(const RunConfig& cfg)
{
    const auto ms = parse_m_sweep(cfg.m);
    const std::string& kind = cfg.selector;
    const Window window = parse_window(cfg.window, Window::OneSided);
    if (kind == "pi") {
        return pi_sequence_sweep(parse_int(cfg.l, "--l"), ms, window);
    }
    if (kind == "pi2") {
        return pi_squared_sequence_sweep(parse_int(cfg.l, "--l"), ms, window);
    }
    if (kind == "pis") {
        return shifted_pi_sequence_sweep(parse_int(cfg.l, "--l"), Shift::parse(cfg.s), ms);
    }
    if (kind == "pis2") {
        return shifted_pi_squared_sequence_sweep(parse_int(cfg.l, "--l"), Shift::parse(cfg.s), ms);
    }
    if (kind == "pis-odd") {
        return shifted_odd_sequence_sweep(parse_int(cfg.l, "--l"), Shift::parse(cfg.s), ms);
    }
    if (kind == "odd-cumulative") {
        return odd_area_cumulative_sweep(parse_spec(cfg), ms);
    }
    if (kind == "agg") {
        return aggregate_sequence_sweep(cfg.n, cfg.g, cfg.r, ms, cfg.workers);
    }
    if (kind == "ratio-pi2" || kind == "ratio51") {
        return trade_ratio_pi_squared_sweep(parse_spec(cfg), cfg.area.value_or(0), ms, window);
    }
    if (kind == "ratio-pi" || kind == "ratio52") {
        return trade_ratio_pi_sweep(parse_spec(cfg), cfg.area.value_or(0), ms, window);
    }
    if (kind == "chu") {
        return chu_vandermonde_sweep(cfg.l1, cfg.l2, cfg.l1p, cfg.l2p, Shift::parse(cfg.s), ms);
    }
    throw std::invalid_argument("unknown sequence kind '" + kind +
                                "' (pi, pi2, pis, pis2, pis-odd, odd-cumulative, agg, ratio-pi2, ratio-pi, chu)");
}

inline int cmd_seq(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const bool json = want_json(cfg);
    auto records = run_sequence(cfg);
    if (cfg.accelerate) {
        records = average_consecutive(records);
    }
    const std::string symbol = records.empty() ? "" : records.front().target_symbol;
    err << "target: " << symbol << "\n";
    if (cfg.selector == "agg") {
        err << "note: single-part compositions are lifted to (l, 0)\n";
    }
    if (json) {
        Json doc;
        doc["kind"] = cfg.selector;
        doc["target_symbol"] = symbol;
        doc["accelerated"] = cfg.accelerate;
        doc["rows"] = Json::array();
        for (const auto& rec : records) {
            doc["rows"].push_back({{"m", rec.m},
                                   {"num", rec.exact.numerator().get_str()},
                                   {"den", rec.exact.denominator().get_str()},
                                   {"float", rec.approx},
                                   {"target", rec.target},
                                   {"abs_error", rec.abs_error}});
        }
        out << doc.dump(2) << "\n";
        return Success;
    }
    out << "m,num,den,float,target,abs_error\n";
    for (const auto& rec : records) {
        out << rec.m << ',' << rec.exact.numerator().get_str() << ',' << rec.exact.denominator().get_str() << ','
            << fmt17(rec.approx) << ',' << fmt17(rec.target) << ',' << fmt17(rec.abs_error) << "\n";
    }
    return Success;
}

// ---------------------------------------------------------------------------
// compositions

inline int cmd_compositions(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const bool json = want_json(cfg);
    const auto comps = enumerate_g_compositions(cfg.n, cfg.g);
    auto lifted = [](const GComposition& c) {
        return c.parts.size() == 1 ? c.str(';') + ";0" : c.str(';');
    };
    std::optional<CheckRow> check;
    if (cfg.check) {
        check = exact_row("cg sum-rule", cg_sum_rule(cfg.n, cfg.g), newton_binomial(cfg.g * cfg.n, cfg.n));
    }
    if (json) {
        Json doc;
        doc["n"] = cfg.n;
        doc["g"] = cfg.g;
        doc["rows"] = Json::array();
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const Rational w = cg_weight(comps[i]);
            doc["rows"].push_back({{"index", i},
                                   {"parts", comps[i].str(';')},
                                   {"num", w.numerator().get_str()},
                                   {"den", w.denominator().get_str()},
                                   {"float", w.to_double()},
                                   {"lifted", lifted(comps[i])}});
        }
        if (check) {
            doc["check"] = {{"check", check->check}, {"lhs", check->lhs}, {"rhs", check->rhs}, {"pass", check->pass}};
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "index,parts,num,den,float,lifted\n";
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const Rational w = cg_weight(comps[i]);
            out << i << ',' << comps[i].str(';') << ',' << w.numerator().get_str() << ','
                << w.denominator().get_str() << ',' << fmt17(w.to_double()) << ',' << lifted(comps[i]) << "\n";
        }
    }
    if (check) {
        err << check->check << ": " << check->lhs << " vs " << check->rhs << (check->pass ? " pass" : " FAIL")
            << "\n";
        return check->pass ? Success : CheckFailed;
    }
    return Success;
}

// ---------------------------------------------------------------------------

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Exact shifted-binomial sums, pi sequences and their numerical checks", "shiftbin"};
    app.set_config("--config", "", "key=value file mirroring the flags; flags override it");
    app.require_subcommand(1);

    app.add_option("--r", cfg.r, "even exponent multiplier r");
    app.add_option("--l", cfg.l, "parts l_1,...,l_j (or a single l)");
    app.add_option("--p", cfg.p, "phase numerator p");
    app.add_option("--q", cfg.q, "phase denominator q, or inf");
    app.add_option("--A", cfg.area, "single area A");
    app.add_option("--a-max", cfg.a_max, "area range [-a_max, a_max]");
    app.add_option("--m", cfg.m, "truncation m: N, N1,N2,... or start:stop:stride");
    app.add_option("--s", cfg.s, "shift s as num/den");
    app.add_option("--n", cfg.n, "composition total n");
    app.add_option("--g", cfg.g, "composition parameter g");
    app.add_option("--window", cfg.window, "one-sided (alias paper) or symmetric");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--workers", cfg.workers, "worker threads");
    app.add_option("--l1", cfg.l1, "Chu-Vandermonde: first row l1");
    app.add_option("--l2", cfg.l2, "Chu-Vandermonde: second row l2");
    app.add_option("--l1p", cfg.l1p, "Chu-Vandermonde: first offset l1'");
    app.add_option("--l2p", cfg.l2p, "Chu-Vandermonde: second offset l2'");
    app.add_flag("--accelerate", cfg.accelerate, "average consecutive partial sums (post-process)");
    app.add_flag("--check", cfg.check, "compositions: check g n sum c_g = C(gn, n)");

    auto* verify = app.add_subcommand("verify", "run a verification suite, print a JSON report");
    verify->add_option("suite", cfg.selector, "identity, reconstruct, odd-equality, sum-rule, cg, all");
    auto* coeffs = app.add_subcommand("coeffs", "coefficient table of one family");
    coeffs->add_option("family", cfg.selector)->required();
    auto* seq = app.add_subcommand("seq", "rational sequence over an m sweep");
    seq->add_option("kind", cfg.selector)->required();
    auto* comps = app.add_subcommand("compositions", "list g-compositions with c_g weights");
    for (auto* sub : {verify, coeffs, seq, comps}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }

    try {
        Sink sink(cfg, out);
        if (verify->parsed()) {
            return cmd_verify(cfg, sink.stream());
        }
        if (coeffs->parsed()) {
            return cmd_coeffs(cfg, sink.stream());
        }
        if (seq->parsed()) {
            return cmd_seq(cfg, sink.stream(), err);
        }
        return cmd_compositions(cfg, sink.stream(), err);
    } catch (const std::exception& e) {
        // precondition violations (invalid_argument, domain_error, overflow)
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
}

} // namespace shiftbin::cli
