// schlicht: bound tables, oracle checks and extremal series for
// |Gamma_2| - |Gamma_1| over univalent function classes.
//
// Exit status: 0 all checks pass, 1 a verification failed, 2 usage error.

#include <schlicht/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

using namespace schlicht;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct CommonOptions {
    std::string format = "csv";
    std::string out;
    std::string grid = "201,101,256";
    double tol_oracle = 1e-3;
    double tol_attain = 1e-9;

    void attach(CLI::App *app)
    {
        app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        app->add_option("--out", out, "Output file (default: stdout)");
        app->add_option("--grid", grid, "Oracle grid resolution NR,NRHO,NPHI");
        app->add_option("--tol-oracle", tol_oracle, "Oracle tolerance");
        app->add_option("--tol-attain", tol_attain, "Attainment tolerance");
    }

    RunConfig config() const
    {
        RunConfig cfg;
        cfg.grid = parse_grid(grid);
        cfg.tol.oracle = tol_oracle;
        cfg.tol.attain = tol_attain;
        cfg.format = format == "json" ? Format::json : Format::csv;
        check_config(cfg);
        return cfg;
    }
};

struct ClassOptions {
    std::string cls;
    std::optional<std::string> alpha, gamma, nu, lambda;
    std::string sweep;

    void attach(CLI::App *app, bool required = true)
    {
        auto *opt = app->add_option("--class", cls, "Class selector");
        opt->check(CLI::IsMember(selector_names()));
        if (required) {
            opt->required();
        }
        app->add_option("--alpha", alpha, "alpha: value or start:end:step");
        app->add_option("--gamma", gamma, "gamma: value or start:end:step");
        app->add_option("--nu", nu, "nu: value or start:end:step");
        app->add_option("--lambda", lambda, "lambda: value or start:end:step");
        app->add_option("--sweep", sweep, "Default sweep for parameters not given")
            ->check(CLI::IsMember({"coarse"}));
    }

    std::vector<ClassPoint> points() const
    {
        ParamSet ps;
        auto read = [](const std::optional<std::string> &s, const char *what) -> std::optional<ParamValues> {
            if (!s) {
                return std::nullopt;
            }
            return parse_values(*s, what);
        };
        ps.alpha = read(alpha, "--alpha");
        ps.gamma = read(gamma, "--gamma");
        ps.nu = read(nu, "--nu");
        ps.lambda = read(lambda, "--lambda");
        return expand_selector(cls, ps);
    }
};

// Writes to --out or stdout.
class Output {
public:
    explicit Output(const std::string &path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw UsageError("cannot open output file " + path);
            }
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

nlohmann::ordered_json meta_for(const char *command, const RunConfig &cfg)
{
    auto meta = config_meta(cfg);
    meta["command"] = command;
    return meta;
}

const char *bounds_help = R"(
Columns: class,alpha,gamma,nu,lambda,lower,upper,lower_branch,upper_branch,provenance,flag
  lower/upper   bounds on |Gamma_2| - |Gamma_1|
  *_branch      branch of the piecewise bound (plus_1, plus_2, minus_1..3; class S regimes)
  flag          where the printed theorem statement differs from the computed bound)";

const char *verify_help = R"(
Columns: class,alpha,gamma,nu,lambda,lower,upper,lower_branch,upper_branch,
         oracle_lower,oracle_upper,attainment_gap_lower,attainment_gap_upper,
         statement_vs_proof_flag,status,notes
  oracle_*                brute-force extremes of scale * Psi (class S: sample range)
  attainment_gap_*        |value at the extremal function - bound|
  statement_vs_proof_flag printed statement or extremal parameters that disagree (WARN)
  status                  PASS, WARN or FAIL; notes lists fail:<check> for failures)";

const char *oracle_help = R"(
Columns: b1,b2_re,b2_im,b3,sign,oracle_value,argmax_c1_re,argmax_c1_im,argmax_c2_re,
         argmax_c2_im,closed_form,branch,gap,status)";

const char *extremal_help = R"(
Columns: class,side,p,quantity,n,re,im
  quantity is a (coefficients a_2..a_N), Gamma (Gamma_1..Gamma_{N/2}),
  gamma_diff (|Gamma_2| - |Gamma_1|) or bound (the value it should attain))";

int run(int argc, char **argv)
{
    CLI::App app{"Bounds and verification for |Gamma_2| - |Gamma_1| over univalent function classes"};
    app.require_subcommand(1);
    app.footer("Class selectors: s, starlike, convex, strongly_starlike, strongly_convex, ozaki, f0,\n"
               "spirallike, gamma_convex, starlike_order, convex_order, all.\n"
               "SCHLICHT_THREADS caps oracle threads (0 or unset: all cores).");

    CommonOptions bounds_common, verify_common, oracle_common, extremal_common;
    ClassOptions bounds_class, verify_class, extremal_class;

    auto *bounds = app.add_subcommand("bounds", "Closed-form bounds per class and parameter");
    bounds_class.attach(bounds);
    bounds_common.attach(bounds);
    bounds->footer(bounds_help);

    auto *verify = app.add_subcommand("verify", "Oracle, attainment and pipeline checks per row");
    verify_class.attach(verify);
    verify_common.attach(verify);
    verify->footer(verify_help);

    double b1 = 0.0;
    double b3 = 0.0;
    std::string b2 = "0,0";
    std::string sign = "plus";
    auto *oracle = app.add_subcommand("oracle", "Grid maximum of Psi against the closed form");
    oracle->add_option("--b1", b1, "B1 > 0")->required();
    oracle->add_option("--b2", b2, "B2 as re,im")->required();
    oracle->add_option("--b3", b3, "B3 (real)")->required();
    oracle->add_option("--sign", sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    oracle_common.attach(oracle);
    oracle->footer(oracle_help);

    std::string side = "upper";
    std::size_t order = 8;
    auto *extremal = app.add_subcommand("extremal", "Series of the extremal function of one side");
    extremal_class.attach(extremal);
    extremal->add_option("--side", side, "upper or lower")->check(CLI::IsMember({"upper", "lower"}));
    extremal->add_option("--order", order, "Series order N (>= 3)");
    extremal_common.attach(extremal);
    extremal->footer(extremal_help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (bounds->parsed()) {
            const auto cfg = bounds_common.config();
            const auto table = run_bounds(bounds_class.points(), cfg);
            Output out(bounds_common.out);
            write_table(out.stream(), table, cfg.format, meta_for("bounds", cfg));
            return exit_ok;
        }
        if (verify->parsed()) {
            const auto cfg = verify_common.config();
            const auto points = verify_class.points();
            const auto report = run_verify(points, cfg);
            Output out(verify_common.out);
            write_table(out.stream(), report.table, cfg.format, meta_for("verify", cfg));
            return report.failed ? exit_failed : exit_ok;
        }
        if (oracle->parsed()) {
            const auto cfg = oracle_common.config();
            std::optional<PsiParams> params;
            try {
                params.emplace(b1, parse_complex(b2, "--b2"), b3);
            } catch (const std::domain_error &e) {
                throw UsageError(e.what());
            }
            const auto report = run_oracle(*params, sign == "plus" ? Sign::plus : Sign::minus, cfg);
            Output out(oracle_common.out);
            write_table(out.stream(), report.table, cfg.format, meta_for("oracle", cfg));
            return report.failed ? exit_failed : exit_ok;
        }
        const auto cfg = extremal_common.config();
        const auto points = extremal_class.points();
        if (points.size() != 1) {
            throw UsageError("extremal: parameters must select exactly one class member");
        }
        const auto report = run_extremal(points.front(), side == "upper" ? Side::upper : Side::lower, order, cfg);
        Output out(extremal_common.out);
        write_table(out.stream(), report.table, cfg.format, meta_for("extremal", cfg));
        return report.failed ? exit_failed : exit_ok;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace

int main(int argc, char **argv)
{
    try {
        return run(argc, argv);
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_failed;
    }
}
