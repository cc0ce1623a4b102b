#ifndef SCHLICHT_REPORT_HPP
#define SCHLICHT_REPORT_HPP

#include <schlicht/bounds_catalog.hpp>
#include <schlicht/caratheodory.hpp>
#include <schlicht/power_series.hpp>
#include <schlicht/psi_lemma.hpp>
#include <schlicht/subclass_models.hpp>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schlicht {

// Bad command-line input; the CLI maps it to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double exact = 1e-12;
    double pipeline = 1e-10;
    double attain = 1e-9;
    double oracle = 1e-3;
};

enum class Format { csv, json };

struct RunConfig {
    GridResolution grid{};
    Tolerances tol{};
    Format format = Format::csv;
    unsigned threads = 0;  // 0: oracle_threads()
};

inline void check_config(const RunConfig &cfg)
{
    const auto &t = cfg.tol;
    if (!(t.exact > 0.0 && t.pipeline > 0.0 && t.attain > 0.0 && t.oracle > 0.0)) {
        throw UsageError("tolerances must be positive");
    }
    try {
        check_resolution(cfg.grid);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

// ---------------------------------------------------------------------------
// Parsing

inline double parse_number(std::string_view text, std::string_view what)
{
    double v = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw UsageError(fmt::format("{}: cannot parse '{}' as a number", what, text));
    }
    return v;
}

// A parameter given on the command line: one value, or start:end:step.
struct ParamValues {
    std::vector<double> values;
    bool sweep = false;
};

// start:end:step includes both ends; a point within 1e-12 of end is snapped to it.
inline ParamValues parse_values(std::string_view text, std::string_view what)
{
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos) {
        return {{parse_number(text, what)}, false};
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw UsageError(fmt::format("{}: expected start:end:step, got '{}'", what, text));
    }
    const double start = parse_number(text.substr(0, c1), what);
    const double end = parse_number(text.substr(c1 + 1, c2 - c1 - 1), what);
    const double step = parse_number(text.substr(c2 + 1), what);
    if (!(step > 0.0) || end < start) {
        throw UsageError(fmt::format("{}: sweep needs step > 0 and end >= start", what));
    }
    ParamValues out{{}, true};
    for (long k = 0;; ++k) {
        double v = start + static_cast<double>(k) * step;
        if (std::abs(v - end) <= 1e-12) {
            v = end;
        } else if (v > end) {
            break;
        }
        out.values.push_back(v);
        if (v == end) {
            break;
        }
        if (k > 1'000'000) {
            throw UsageError(fmt::format("{}: sweep has too many points", what));
        }
    }
    return out;
}

inline GridResolution parse_grid(std::string_view text)
{
    GridResolution res;
    std::size_t *fields[] = {&res.n_r, &res.n_rho, &res.n_phi};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), *fields[i]);
        if (ec != std::errc{} || ptr != piece.data() + piece.size() || piece.empty()) {
            throw UsageError(fmt::format("--grid: expected NR,NRHO,NPHI, got '{}'", text));
        }
        if ((i < 2) == (comma == std::string_view::npos)) {
            throw UsageError(fmt::format("--grid: expected NR,NRHO,NPHI, got '{}'", text));
        }
        pos = comma + 1;
    }
    if (res.n_r < 2 || res.n_rho < 2 || res.n_phi < 4) {
        throw UsageError("--grid: resolution must be at least 2,2,4");
    }
    return res;
}

inline complex parse_complex(std::string_view text, std::string_view what)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return parse_number(text, what);
    }
    return {parse_number(text.substr(0, comma), what), parse_number(text.substr(comma + 1), what)};
}

// ---------------------------------------------------------------------------
// Class selectors

enum class Param { alpha, gamma, nu, lambda };

inline const char *to_string(Param p) noexcept
{
    static constexpr const char *names[] = {"alpha", "gamma", "nu", "lambda"};
    return names[static_cast<int>(p)];
}

struct ParamSet {
    std::optional<ParamValues> alpha, gamma, nu, lambda;

    const std::optional<ParamValues> &get(Param p) const
    {
        switch (p) {
        case Param::alpha:
            return alpha;
        case Param::gamma:
            return gamma;
        case Param::nu:
            return nu;
        case Param::lambda:
            break;
        }
        return lambda;
    }
    bool empty() const { return !alpha && !gamma && !nu && !lambda; }
};

// One row of a report: a class member with its parameters.
struct ClassPoint {
    std::string name;
    ClassSpec spec;
    std::optional<double> alpha, gamma, nu, lambda;
    std::optional<SRegime> regime;  // class S rows only
};

namespace detail {

// k / denominator for k in [from, to]
inline std::vector<double> grid_values(int from, int to, double denominator)
{
    std::vector<double> out;
    for (int k = from; k <= to; ++k) {
        out.push_back(k / denominator);
    }
    return out;
}

struct SelectorInfo {
    const char *name;
    std::vector<Param> params;                        // outer to inner
    std::function<std::vector<double>(Param)> coarse;  // default sweep per parameter
    std::function<ClassSpec(const std::map<Param, double> &)> make;
};

inline const std::vector<SelectorInfo> &selectors()
{
    static const double angles[] = {-1.2, -0.8, -0.4, 0.0, 0.4, 0.8, 1.2};
    static const double orders[] = {0.0, 0.25, 0.5, 0.75, 0.9};
    auto spiral_coarse = [](Param p) {
        return p == Param::gamma ? std::vector<double>(std::begin(angles), std::end(angles))
                                 : std::vector<double>(std::begin(orders), std::end(orders));
    };
    auto order_coarse = [](Param) { return grid_values(0, 19, 20.0); };
    auto none = [](Param) { return std::vector<double>{}; };
    static const std::vector<SelectorInfo> table{
        {"s", {}, none, [](const auto &) { return ClassSpec{classes::S{}}; }},
        {"starlike", {}, none, [](const auto &) { return make_class<classes::Spirallike>(0.0, 0.0); }},
        {"convex", {}, none, [](const auto &) { return make_class<classes::GammaConvex>(0.0, 0.0); }},
        {"strongly_starlike", {Param::alpha}, [](Param) { return grid_values(1, 12, 12.0); },
         [](const auto &m) { return make_class<classes::StronglyStarlike>(m.at(Param::alpha)); }},
        {"strongly_convex", {Param::alpha}, [](Param) { return grid_values(1, 12, 12.0); },
         [](const auto &m) { return make_class<classes::StronglyConvex>(m.at(Param::alpha)); }},
        {"ozaki", {Param::nu}, [](Param) { return grid_values(1, 20, 20.0); },
         [](const auto &m) { return make_class<classes::Ozaki>(m.at(Param::nu)); }},
        {"f0", {Param::lambda}, [](Param) { return grid_values(10, 20, 20.0); },
         [](const auto &m) {
             const double lambda = m.at(Param::lambda);
             if (!f0_bound_in_range(lambda)) {
                 throw std::domain_error("f0: bounds are only claimed for lambda in [1/2, 1]");
             }
             return make_class<classes::F0>(lambda);
         }},
        {"spirallike", {Param::gamma, Param::alpha}, spiral_coarse,
         [](const auto &m) { return make_class<classes::Spirallike>(m.at(Param::gamma), m.at(Param::alpha)); }},
        {"gamma_convex", {Param::gamma, Param::alpha}, spiral_coarse,
         [](const auto &m) { return make_class<classes::GammaConvex>(m.at(Param::gamma), m.at(Param::alpha)); }},
        {"starlike_order", {Param::alpha}, order_coarse,
         [](const auto &m) { return make_class<classes::Spirallike>(0.0, m.at(Param::alpha)); }},
        {"convex_order", {Param::alpha}, order_coarse,
         [](const auto &m) { return make_class<classes::GammaConvex>(0.0, m.at(Param::alpha)); }},
    };
    return table;
}

inline const SelectorInfo &find_selector(std::string_view name)
{
    for (const auto &s : selectors()) {
        if (name == s.name) {
            return s;
        }
    }
    throw UsageError(fmt::format("unknown class '{}'", name));
}

inline void set_param(ClassPoint &pt, Param p, double v)
{
    switch (p) {
    case Param::alpha:
        pt.alpha = v;
        break;
    case Param::gamma:
        pt.gamma = v;
        break;
    case Param::nu:
        pt.nu = v;
        break;
    case Param::lambda:
        pt.lambda = v;
        break;
    }
}

inline std::vector<ClassPoint> expand_one(const SelectorInfo &sel, const ParamSet &given)
{
    for (const auto p : {Param::alpha, Param::gamma, Param::nu, Param::lambda}) {
        if (given.get(p) && std::find(sel.params.begin(), sel.params.end(), p) == sel.params.end()) {
            throw UsageError(fmt::format("--{} does not apply to class {}", to_string(p), sel.name));
        }
    }
    if (std::string_view(sel.name) == "s") {
        return {{"s", classes::S{}, {}, {}, {}, {}, SRegime::abs_a2_le_1},
                {"s", classes::S{}, {}, {}, {}, {}, SRegime::abs_a2_gt_1}};
    }
    std::vector<std::vector<double>> axes;
    for (const auto p : sel.params) {
        axes.push_back(given.get(p) ? given.get(p)->values : sel.coarse(p));
    }
    std::vector<ClassPoint> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        std::map<Param, double> values;
        for (std::size_t d = 0; d < axes.size(); ++d) {
            values[sel.params[d]] = axes[d][idx[d]];
        }
        try {
            ClassPoint pt{sel.name, sel.make(values), {}, {}, {}, {}, {}};
            for (const auto &[p, v] : values) {
                set_param(pt, p, v);
            }
            out.push_back(std::move(pt));
        } catch (const std::domain_error &e) {
            // Out-of-range sweep points are dropped; an explicit single value is an error.
            for (const auto &[p, v] : values) {
                if (given.get(p) && !given.get(p)->sweep) {
                    throw UsageError(fmt::format("--{} {}: {}", to_string(p), v, e.what()));
                }
            }
        }
        std::size_t d = axes.size();
        while (d > 0) {
            --d;
            if (++idx[d] < axes[d].size()) {
                break;
            }
            idx[d] = 0;
            if (d == 0) {
                return out;
            }
        }
        if (axes.empty()) {
            return out;
        }
    }
}

} // namespace detail

inline std::vector<std::string> selector_names()
{
    std::vector<std::string> out;
    for (const auto &s : detail::selectors()) {
        out.emplace_back(s.name);
    }
    out.emplace_back("all");
    return out;
}

// Rows for a class selector. Parameters not given use the coarse sweep.
inline std::vector<ClassPoint> expand_selector(std::string_view name, const ParamSet &given)
{
    std::vector<ClassPoint> out;
    if (name == "all") {
        if (!given.empty()) {
            throw UsageError("class 'all' takes no parameters");
        }
        for (const auto &s : detail::selectors()) {
            auto part = detail::expand_one(s, given);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else {
        out = detail::expand_one(detail::find_selector(name), given);
    }
    if (out.empty()) {
        throw UsageError(fmt::format("class {}: no parameter point lies in range", name));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tables and serialization

using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// 9 significant digits, lowercase exponent, no negative zero.
inline std::string format_number(double v)
{
    if (!std::isfinite(v)) {
        return "";
    }
    std::string s = fmt::format("{:.9g}", v);
    if (s == "-0") {
        s = "0";
    }
    return s;
}

inline void write_csv(std::ostream &os, const Table &t)
{
    auto emit = [&](const Cell &c) {
        if (const auto *d = std::get_if<double>(&c)) {
            os << format_number(*d);
        } else if (const auto *s = std::get_if<std::string>(&c)) {
            os << *s;
        }
    };
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                os << ',';
            }
            emit(row[i]);
        }
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const Table &t, nlohmann::ordered_json meta)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto &c = row[i];
            if (const auto *d = std::get_if<double>(&c); d && std::isfinite(*d)) {
                obj[t.columns[i]] = std::strtod(format_number(*d).c_str(), nullptr);
            } else if (const auto *s = std::get_if<std::string>(&c)) {
                obj[t.columns[i]] = *s;
            } else {
                obj[t.columns[i]] = nullptr;
            }
        }
        rows.push_back(std::move(obj));
    }
    meta["columns"] = t.columns;
    return {{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

inline void write_table(std::ostream &os, const Table &t, Format format, nlohmann::ordered_json meta)
{
    if (format == Format::csv) {
        write_csv(os, t);
    } else {
        os << to_json(t, std::move(meta)).dump(2) << '\n';
    }
}

inline nlohmann::ordered_json config_meta(const RunConfig &cfg)
{
    return {{"grid", {cfg.grid.n_r, cfg.grid.n_rho, cfg.grid.n_phi}},
            {"tolerances",
             {{"exact", cfg.tol.exact},
              {"pipeline", cfg.tol.pipeline},
              {"attain", cfg.tol.attain},
              {"oracle", cfg.tol.oracle}}}};
}

inline std::string join(const std::vector<std::string> &parts)
{
    std::string out;
    for (const auto &p : parts) {
        if (!out.empty()) {
            out += ';';
        }
        out += p;
    }
    return out;
}

inline Cell optional_cell(const std::optional<double> &v)
{
    return v ? Cell{*v} : Cell{};
}

// ---------------------------------------------------------------------------
// bounds

inline const std::vector<std::string> &bounds_columns()
{
    static const std::vector<std::string> cols{"class", "alpha", "gamma", "nu", "lambda", "lower", "upper",
                                               "lower_branch", "upper_branch", "provenance", "flag"};
    return cols;
}

inline BoundPair point_bounds(const ClassPoint &pt)
{
    return pt.regime ? class_S_bounds(*pt.regime) : gamma_diff_bounds(pt.spec);
}

// Places where the printed theorem statement disagrees with the reconstruction.
inline std::vector<std::string> statement_flags(const ClassPoint &pt, const BoundPair &bp, double tol)
{
    if (pt.regime) {
        return {};
    }
    std::vector<std::string> flags;
    const auto st = stated_bounds(pt.spec);
    auto compare = [&](const std::optional<double> &stated, double rebuilt, const char *side) {
        if (!stated) {
            flags.push_back(fmt::format("{}_statement_unevaluable", side));
        } else if (std::abs(*stated - rebuilt) > tol * std::max(1.0, std::abs(rebuilt))) {
            flags.push_back(fmt::format("{}_statement_differs:stated={}", side, format_number(*stated)));
        }
    };
    compare(st.lower, bp.lower, "lower");
    compare(st.upper, bp.upper, "upper");
    return flags;
}

inline std::vector<std::string> point_notes(const ClassPoint &pt)
{
    std::vector<std::string> notes;
    const bool strongly = std::holds_alternative<classes::StronglyStarlike>(pt.spec) ||
                          std::holds_alternative<classes::StronglyConvex>(pt.spec);
    if (strongly && pt.alpha && *pt.alpha == 1.0) {
        notes.emplace_back("corollary_preamble_reads_alpha_0");
    }
    if (const auto *c = std::get_if<classes::GammaConvex>(&pt.spec); c && c->gamma == 0.0) {
        notes.emplace_back("corollary_states_reverse_difference");
    }
    if (std::holds_alternative<classes::Spirallike>(pt.spec)) {
        notes.emplace_back("sharpness_tau_read_as_eta");
    }
    return notes;
}

inline std::vector<Cell> point_cells(const ClassPoint &pt)
{
    return {pt.name, optional_cell(pt.alpha), optional_cell(pt.gamma), optional_cell(pt.nu),
            optional_cell(pt.lambda)};
}

inline Table run_bounds(const std::vector<ClassPoint> &points, const RunConfig &cfg)
{
    Table t{bounds_columns(), {}};
    for (const auto &pt : points) {
        const auto bp = point_bounds(pt);
        auto row = point_cells(pt);
        row.insert(row.end(), {bp.lower, bp.upper, bp.lower_branch, bp.upper_branch,
                               std::string(to_string(bp.provenance)),
                               join(statement_flags(pt, bp, cfg.tol.exact))});
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// verify

enum class Status { pass, warn, fail };

inline const char *to_string(Status s) noexcept
{
    return s == Status::pass ? "PASS" : (s == Status::warn ? "WARN" : "FAIL");
}

inline const std::vector<std::string> &verify_columns()
{
    static const std::vector<std::string> cols{
        "class",        "alpha",        "gamma",        "nu",
        "lambda",       "lower",        "upper",        "lower_branch",
        "upper_branch", "oracle_lower", "oracle_upper", "attainment_gap_lower",
        "attainment_gap_upper", "statement_vs_proof_flag", "status", "notes"};
    return cols;
}

struct VerifyRow {
    ClassPoint point;
    BoundPair bounds;
    std::optional<double> oracle_lower, oracle_upper;
    std::optional<double> gap_lower, gap_upper;
    std::vector<std::string> flags;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    Status status() const
    {
        if (!failures.empty()) {
            return Status::fail;
        }
        return flags.empty() ? Status::pass : Status::warn;
    }
};

namespace detail {

// Fixed members of each rational kind used by the consistency checks.
inline std::vector<RationalP> probe_functions()
{
    return {rational::HalfPlane{}, rational::Symmetric{}, rational::MobiusA{0.35},
            rational::InverseMobius{-0.55}, rational::Blaschke2{complex(0.25, -0.4), std::polar(1.0, 2.3)}};
}

inline bool close(complex got, complex want, double tol)
{
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

// build_f, a2_a3 and scale * Psi_+ agree (N = 3); the order-12 series gives
// Gamma_1, Gamma_2 matching the closed forms.
inline void check_pipelines(const ClassSpec &cs, const std::vector<RationalP> &ps, const Tolerances &tol,
                            std::vector<std::string> &failures)
{
    const auto rf = reduced_functional(cs);
    bool triangle_ok = true;
    bool pipeline_ok = true;
    for (const auto &rp : ps) {
        try {
            const auto f3 = build_f(cs, rp, 3);
            const auto pt = leading_point(p_series(rp, 3));
            const auto a = a2_a3(cs, pt);
            const double from_series = gamma_diff(f3[2], f3[3]);
            const double from_map = gamma_diff(a.a2, a.a3);
            const double from_psi = rf.scale * psi_value(rf.b, pt, Sign::plus);
            triangle_ok &= std::abs(from_series - from_map) <= tol.pipeline &&
                           std::abs(from_map - from_psi) <= tol.pipeline;

            const auto f = build_f(cs, rp, 12);
            const auto g = inverse_log_coefficients(f, 2);
            pipeline_ok &= close(g[0], -f[2] / 2.0, tol.pipeline) &&
                           close(g[1], -f[3] / 2.0 + 0.75 * f[2] * f[2], tol.pipeline);
        } catch (const std::logic_error &) {
            triangle_ok = false;
        }
    }
    if (!triangle_ok) {
        failures.emplace_back("consistency_triangle");
    }
    if (!pipeline_ok) {
        failures.emplace_back("pipeline_n12");
    }
}

inline void verify_p_class(VerifyRow &row, const RunConfig &cfg)
{
    const auto &cs = row.point.spec;
    const auto &tol = cfg.tol;
    const auto rf = reduced_functional(cs);
    const unsigned threads = cfg.threads ? cfg.threads : oracle_threads();

    const double top = rf.scale * oracle_max(rf.b, Sign::plus, cfg.grid, threads).value;
    const double bottom = -rf.scale * oracle_max(rf.b, Sign::minus, cfg.grid, threads).value;
    row.oracle_upper = top;
    row.oracle_lower = bottom;
    if (top > row.bounds.upper + tol.oracle) {
        row.failures.emplace_back("oracle_above_upper");
    }
    if (bottom < row.bounds.lower - tol.oracle) {
        row.failures.emplace_back("oracle_below_lower");
    }
    if (row.bounds.upper - top > tol.oracle) {
        row.failures.emplace_back("upper_not_reached_by_oracle");
    }
    if (bottom - row.bounds.lower > tol.oracle) {
        row.failures.emplace_back("lower_not_reached_by_oracle");
    }

    std::vector<RationalP> probes = probe_functions();
    for (const auto &e : extremals_for(cs)) {
        const double gap = std::abs(extremal_value(cs, e.p) - e.expected_value);
        (e.side == Side::upper ? row.gap_upper : row.gap_lower) = gap;
        if (gap > tol.attain) {
            row.failures.push_back(fmt::format("attainment_{}", to_string(e.side)));
        }
        probes.push_back(std::get<RationalP>(e.p));
        if (e.printed_p) {
            try {
                const double printed_gap = std::abs(extremal_value(cs, *e.printed_p) - e.expected_value);
                if (printed_gap > tol.attain) {
                    row.flags.push_back(fmt::format("printed_extremal_{}_gap={}", to_string(e.side),
                                                    format_number(printed_gap)));
                }
            } catch (const std::domain_error &) {
                row.flags.push_back(fmt::format("printed_extremal_{}_not_in_p", to_string(e.side)));
            }
        }
    }
    check_pipelines(cs, probes, tol, row.failures);
}

inline void verify_class_s(VerifyRow &row, const Tolerances &tol)
{
    const auto regime = *row.point.regime;
    std::optional<double> lo, hi;
    bool inside = true;
    for (const auto &s : class_S_samples(600)) {
        const auto check = class_S_bound_check(s.a2, s.a3);
        if (check.regime != regime) {
            continue;
        }
        inside &= check.within;
        lo = lo ? std::min(*lo, check.value) : check.value;
        hi = hi ? std::max(*hi, check.value) : check.value;
    }
    row.oracle_lower = lo;
    row.oracle_upper = hi;
    row.notes.emplace_back("oracle_is_sample_range");
    if (!inside) {
        row.failures.emplace_back("sample_outside_bounds");
    }

    for (const auto &e : extremals_for(classes::S{})) {
        const auto f = named_series(std::get<NamedFunction>(e.p), 12);
        if (s_regime(std::abs(f[2])) != regime) {
            continue;
        }
        const double gap = std::abs(extremal_value(classes::S{}, e.p) - e.expected_value);
        if (e.side == Side::upper) {
            row.gap_upper = gap;
            if (gap > tol.attain) {
                row.failures.emplace_back("attainment_upper");
            }
        } else {
            row.gap_lower = gap;
            if (gap > tol.attain) {
                row.flags.push_back(fmt::format("claimed_extremal_lower_gap={}", format_number(gap)));
            }
        }
        // Gamma_1, Gamma_2 from the reverted series against the closed forms.
        const auto g = inverse_log_coefficients(f, 2);
        if (!close(g[0], -f[2] / 2.0, tol.pipeline) ||
            !close(g[1], -f[3] / 2.0 + 0.75 * f[2] * f[2], tol.pipeline)) {
            row.failures.emplace_back("pipeline_n12");
        }
    }
    if (regime == SRegime::abs_a2_gt_1) {
        row.notes.emplace_back("lower_constant_sharpness_open");
        // Koebe attains |Gamma_n| = binom(2n, n)/(2n) for n = 1, 2.
        const auto g = inverse_log_coefficients(koebe(12), 2);
        if (std::abs(std::abs(g[0]) - 1.0) > tol.pipeline || std::abs(std::abs(g[1]) - 1.5) > tol.pipeline) {
            row.failures.emplace_back("koebe_gamma_bound");
        }
    } else {
        row.notes.emplace_back("upper_attainer_not_named");
    }
}

} // namespace detail

inline VerifyRow verify_point(const ClassPoint &pt, const RunConfig &cfg)
{
    VerifyRow row{pt, point_bounds(pt), {}, {}, {}, {}, {}, {}, point_notes(pt)};
    row.flags = statement_flags(pt, row.bounds, cfg.tol.exact);
    if (pt.regime) {
        detail::verify_class_s(row, cfg.tol);
    } else {
        detail::verify_p_class(row, cfg);
    }
    return row;
}

struct VerifyReport {
    Table table;
    bool failed = false;
};

inline VerifyReport run_verify(const std::vector<ClassPoint> &points, const RunConfig &cfg)
{
    VerifyReport out{{verify_columns(), {}}, false};
    for (const auto &pt : points) {
        const auto row = verify_point(pt, cfg);
        const auto status = row.status();
        out.failed |= status == Status::fail;
        std::vector<std::string> notes = row.notes;
        for (const auto &f : row.failures) {
            notes.push_back("fail:" + f);
        }
        auto cells = point_cells(pt);
        cells.insert(cells.end(),
                     {row.bounds.lower, row.bounds.upper, row.bounds.lower_branch, row.bounds.upper_branch,
                      optional_cell(row.oracle_lower), optional_cell(row.oracle_upper),
                      optional_cell(row.gap_lower), optional_cell(row.gap_upper), join(row.flags),
                      std::string(to_string(status)), join(notes)});
        out.table.rows.push_back(std::move(cells));
    }
    return out;
}

// ---------------------------------------------------------------------------
// oracle

inline const std::vector<std::string> &oracle_columns()
{
    static const std::vector<std::string> cols{
        "b1",         "b2_re",      "b2_im",      "b3",         "sign",        "oracle_value",
        "argmax_c1_re", "argmax_c1_im", "argmax_c2_re", "argmax_c2_im", "closed_form", "branch",
        "gap",        "status"};
    return cols;
}

struct OracleReport {
    Table table;
    bool failed = false;
};

inline OracleReport run_oracle(const PsiParams &b, Sign sign, const RunConfig &cfg)
{
    const unsigned threads = cfg.threads ? cfg.threads : oracle_threads();
    const auto res = oracle_max(b, sign, cfg.grid, threads);
    const auto bound = psi_bound(b, sign);
    const double gap = bound.value - res.value;
    const bool failed = res.value > bound.value + cfg.tol.oracle || gap > cfg.tol.oracle;
    OracleReport out{{oracle_columns(), {}}, failed};
    out.table.rows.push_back({b.b1(), b.b2().real(), b.b2().imag(), b.b3(), std::string(to_string(sign)),
                              res.value, res.argmax.c1.real(), res.argmax.c1.imag(), res.argmax.c2.real(),
                              res.argmax.c2.imag(), bound.value, std::string(to_string(bound.branch)), gap,
                              std::string(failed ? "FAIL" : "PASS")});
    return out;
}

// ---------------------------------------------------------------------------
// extremal

inline const std::vector<std::string> &extremal_columns()
{
    static const std::vector<std::string> cols{"class", "side", "p", "quantity", "n", "re", "im"};
    return cols;
}

struct ExtremalReport {
    Table table;
    double value = 0.0;
    double expected = 0.0;
    bool failed = false;
};

// Builds the extremal f of one side for a p-representable class and lists
// a_2..a_N, Gamma_1..Gamma_{N/2}, |Gamma_2| - |Gamma_1| and the bound.
inline ExtremalReport run_extremal(const ClassPoint &pt, Side side, std::size_t order, const RunConfig &cfg)
{
    if (pt.regime || is_class_s(pt.spec)) {
        throw UsageError("extremal: class S has no p-representation");
    }
    if (order < 3) {
        throw UsageError("extremal: --order must be at least 3");
    }
    const auto ex = extremals_for(pt.spec);
    const auto &e = side == Side::upper ? ex[0] : ex[1];
    const auto &rp = std::get<RationalP>(e.p);
    const auto f = build_f(pt.spec, rp, order);
    const auto g = inverse_log_coefficients(f, std::max<std::size_t>(2, order / 2));

    ExtremalReport out{{extremal_columns(), {}}, 0.0, e.expected_value, false};
    const std::string side_name = to_string(side);
    const std::string kind = kind_name(rp);
    auto push = [&](const std::string &q, std::optional<double> n, double re, double im) {
        out.table.rows.push_back({pt.name, side_name, kind, q, optional_cell(n), re, im});
    };
    for (std::size_t n = 2; n <= order; ++n) {
        push("a", static_cast<double>(n), f[n].real(), f[n].imag());
    }
    for (std::size_t n = 1; n <= g.size(); ++n) {
        push("Gamma", static_cast<double>(n), g[n - 1].real(), g[n - 1].imag());
    }
    out.value = std::abs(g.at(1)) - std::abs(g.at(0));
    push("gamma_diff", std::nullopt, out.value, 0.0);
    push("bound", std::nullopt, e.expected_value, 0.0);
    out.failed = std::abs(out.value - e.expected_value) > cfg.tol.attain;
    return out;
}

} // namespace schlicht

#endif
