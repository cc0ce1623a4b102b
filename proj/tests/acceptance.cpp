// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <schlicht/report.hpp>

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace schlicht;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    const char *name;
    double time_limit;  // seconds
    std::function<Outcome()> run;
};

complex random_complex(std::mt19937_64 &rng, double radius)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    complex z;
    do {
        z = complex(u(rng), u(rng));
    } while (std::abs(z) > 1.0);
    return radius * z;
}

Outcome inverse_identities()
{
    Outcome out;
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        std::vector<complex> tail;
        for (int n = 2; n <= 6; ++n) {
            tail.push_back(random_complex(rng, static_cast<double>(n)));
        }
        const auto f = NormalizedSeries::from_tail(tail);
        const auto g = revert(f, 6);
        const complex a2 = f[2];
        const complex a3 = f[3];
        const double e2 = std::abs(g[2] + a2);
        const double e3 = std::abs(g[3] - (2.0 * a2 * a2 - a3));
        out.require(e2 <= 1e-12 && e3 <= 1e-12, fmt::format("series {}: errors {:.3g}, {:.3g}", i, e2, e3));
    }
    return out;
}

Outcome koebe_pipeline()
{
    Outcome out;
    const auto g = revert(koebe(8), 8);
    out.require(std::abs(g[2] + 2.0) <= 1e-10, "A2");
    out.require(std::abs(g[3] - 5.0) <= 1e-10, "A3");
    out.require(std::abs(g[4] + 14.0) <= 1e-10, "A4");

    const auto gam = inverse_log_coefficients(koebe(8), 2);
    out.require(std::abs(gam[0] + 1.0) <= 1e-10, "Gamma_1");
    out.require(std::abs(gam[1] - 1.5) <= 1e-10, "Gamma_2");
    // |Gamma_n| = binom(2n, n) / (2n)
    out.require(std::abs(std::abs(gam[0]) - 2.0 / 2.0) <= 1e-10, "|Gamma_1| sharp");
    out.require(std::abs(std::abs(gam[1]) - 6.0 / 4.0) <= 1e-10, "|Gamma_2| sharp");
    return out;
}

Outcome lemma_oracle()
{
    Outcome out;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> b1d(0.0, 5.0);
    std::uniform_real_distribution<double> b3d(-3.0, 3.0);
    const unsigned threads = oracle_threads();
    double worst_slack = 0.0;
    double worst_gap = 0.0;
    for (int i = 0; i < 200; ++i) {
        double b1;
        do {
            b1 = b1d(rng);
        } while (b1 <= 0.0);
        const complex b2 = random_complex(rng, 5.0);
        const double b3 = b3d(rng);
        const PsiParams b(b1, b2, b3);
        for (const Sign s : {Sign::plus, Sign::minus}) {
            const double bound = psi_bound(b, s).value;
            const auto o = oracle_max(b, s, GridResolution{}, threads);
            // coarse_value is the largest grid point; value is >= it.
            const double slack = bound - std::max(o.coarse_value, o.value);
            const double gap = bound - o.value;
            worst_slack = std::min(worst_slack, slack);
            worst_gap = std::max(worst_gap, gap);
            out.require(slack >= -1e-9, fmt::format("B=({}, {}{:+}i, {}) {}: grid exceeds bound by {:.3g}", b1,
                                                    b2.real(), b2.imag(), b3, to_string(s), -slack));
            out.require(gap <= 1e-3, fmt::format("B=({}, {}{:+}i, {}) {}: oracle short by {:.3g}", b1, b2.real(),
                                                 b2.imag(), b3, to_string(s), gap));
        }
    }
    if (out.ok) {
        out.detail = fmt::format("400 maxima, min slack {:.3g}, max gap {:.3g}", worst_slack, worst_gap);
    }
    return out;
}

// Oracle extremes of |Gamma_2| - |Gamma_1|, with the oracle argmax re-evaluated
// through the coefficient map.
std::pair<double, double> oracle_range(const ClassSpec &cs, Outcome &out)
{
    const auto rf = reduced_functional(cs);
    const auto top = oracle_max(rf.b, Sign::plus, GridResolution{}, oracle_threads());
    const auto bottom = oracle_max(rf.b, Sign::minus, GridResolution{}, oracle_threads());
    for (const auto &pt : {top.argmax, bottom.argmax}) {
        const auto a = a2_a3(cs, pt);
        out.require(std::abs(gamma_diff(a.a2, a.a3) - rf.scale * psi_value(rf.b, pt, Sign::plus)) <= 1e-12,
                    class_name(cs) + ": reduction disagrees with coefficient map");
    }
    return {-rf.scale * bottom.value, rf.scale * top.value};
}

Outcome published_constants()
{
    Outcome out;
    struct Case {
        ClassSpec cs;
        double lower;
        double upper;
        std::string label;
    };
    std::vector<Case> cases{
        {make_class<classes::Spirallike>(0.0, 0.0), -0.5, 0.5, "starlike"},
        {make_class<classes::GammaConvex>(0.0, 0.0), -1.0 / std::sqrt(10.0), 1.0 / 6.0, "convex"},
    };
    for (int k = 1; k <= 10; ++k) {
        const double a = k / 10.0;
        cases.push_back({make_class<classes::StronglyStarlike>(a), -a / std::sqrt(1.0 + 3.0 * a), a / 2.0,
                         fmt::format("strongly_starlike alpha={}", a)});
    }
    for (const auto &[g, a] : {std::pair{0.5, 0.25}, std::pair{-0.7, 0.5}}) {
        for (const ClassSpec cs : {make_class<classes::Spirallike>(g, a), make_class<classes::GammaConvex>(g, a)}) {
            const auto b = gamma_diff_bounds(cs);
            cases.push_back({cs, b.lower, b.upper, fmt::format("{} gamma={} alpha={}", class_name(cs), g, a)});
        }
    }
    for (const auto &c : cases) {
        const auto b = gamma_diff_bounds(c.cs);
        out.require(std::abs(b.lower - c.lower) <= 1e-12 && std::abs(b.upper - c.upper) <= 1e-12,
                    c.label + ": catalog differs from the published constant");
        const auto [lo, hi] = oracle_range(c.cs, out);
        out.require(std::abs(lo - c.lower) <= 1e-3 && std::abs(hi - c.upper) <= 1e-3,
                    fmt::format("{}: oracle ({:.9g}, {:.9g}) vs ({:.9g}, {:.9g})", c.label, lo, hi, c.lower,
                                c.upper));
    }
    if (out.ok) {
        out.detail = fmt::format("{} class members", cases.size());
    }
    return out;
}

Outcome attainment()
{
    Outcome out;
    std::size_t count = 0;
    double worst = 0.0;
    for (const auto &pt : expand_selector("all", {})) {
        if (pt.regime) {
            continue;
        }
        const auto bounds = gamma_diff_bounds(pt.spec);
        for (const auto &e : extremals_for(pt.spec)) {
            const auto *rp = std::get_if<RationalP>(&e.p);
            out.require(rp != nullptr, pt.name + ": extremal is not a rational p");
            if (!rp) {
                continue;
            }
            const double target = e.side == Side::upper ? bounds.upper : bounds.lower;
            out.require(e.expected_value == target, pt.name + ": descriptor value is not the bound");
            if (e.side == Side::upper) {
                out.require(std::holds_alternative<rational::Symmetric>(*rp),
                            pt.name + ": upper extremal is not the symmetric p");
            }
            if (std::holds_alternative<classes::StronglyStarlike>(pt.spec) && e.side == Side::lower &&
                e.branch == "minus_2") {
                const double a = *pt.alpha;
                const auto *m = std::get_if<rational::MobiusA>(rp);
                out.require(m && std::abs(m->a - 1.0 / std::sqrt(1.0 + 3.0 * a)) <= 1e-15,
                            pt.name + ": strongly starlike lower extremal");
            }
            if (std::holds_alternative<classes::Ozaki>(pt.spec) && e.side == Side::lower) {
                out.require(std::holds_alternative<rational::InverseMobius>(*rp), pt.name + ": ozaki lower extremal");
            }
            const double gap = std::abs(extremal_value(pt.spec, e.p) - target);
            worst = std::max(worst, gap);
            out.require(gap <= 1e-9, fmt::format("{} {}: gap {:.3g}", pt.name, to_string(e.side), gap));
            ++count;
        }
    }
    // Off-sweep spot checks of the blaschke2 lower extremals.
    for (const ClassSpec cs : {make_class<classes::Spirallike>(1.1, 0.2), make_class<classes::GammaConvex>(-1.3, 0.1),
                               make_class<classes::GammaConvex>(0.4, 0.9)}) {
        for (const auto &e : extremals_for(cs)) {
            const double gap = std::abs(extremal_value(cs, e.p) - e.expected_value);
            worst = std::max(worst, gap);
            out.require(gap <= 1e-9, fmt::format("{} {}: gap {:.3g}", class_name(cs), to_string(e.side), gap));
            ++count;
        }
    }
    if (out.ok) {
        out.detail = fmt::format("{} extremals, max gap {:.3g}", count, worst);
    }
    return out;
}

Outcome discrepancies()
{
    Outcome out;
    RunConfig cfg;
    std::size_t rows = 0;
    for (const auto &pt : expand_selector("strongly_convex", {})) {
        const auto row = verify_point(pt, cfg);
        const double a = *pt.alpha;
        out.require(row.status() == Status::warn, pt.name + ": not a WARN row");
        out.require(std::abs(*row.oracle_upper - a / 6.0) <= 1e-3,
                    fmt::format("strongly_convex alpha={}: oracle upper {:.9g}", a, *row.oracle_upper));
        out.require(std::abs(*row.oracle_upper - a / 12.0) > 1e-3,
                    fmt::format("strongly_convex alpha={}: oracle matches the stated alpha/12", a));
        ++rows;
    }
    for (const auto &pt : expand_selector("ozaki", {})) {
        const auto row = verify_point(pt, cfg);
        const double nu = *pt.nu;
        const double scaled = nu >= 0.2 ? 12.0 / std::sqrt(5.0 * nu + 8.0) : (10.0 * nu + 34.0) / (5.0 * nu + 8.0);
        const double lower = -(nu / 24.0) * scaled;
        out.require(row.status() == Status::warn, fmt::format("ozaki nu={}: not a WARN row", nu));
        out.require(std::abs(*row.oracle_lower - lower) <= 1e-3,
                    fmt::format("ozaki nu={}: oracle lower {:.9g} vs {:.9g}", nu, *row.oracle_lower, lower));
        const auto stated = stated_bounds(pt.spec).lower;
        out.require(stated && std::abs(*row.oracle_lower - *stated) > 1e-3,
                    fmt::format("ozaki nu={}: oracle matches the stated lower bound", nu));
        ++rows;
    }
    if (out.ok) {
        out.detail = fmt::format("{} WARN rows, none failed", rows);
    }
    return out;
}

Outcome class_s()
{
    Outcome out;
    const double lo = -(1.0 + 2.0 * std::exp(-2.0)) / 2.0;
    const auto samples = class_S_samples(2000);
    for (const auto &s : samples) {
        const double v = 0.5 * (std::abs(s.a3 - 1.5 * s.a2 * s.a2) - std::abs(s.a2));
        out.require(v >= lo - 1e-12 && v <= 0.5 + 1e-12, fmt::format("sample value {:.9g} outside", v));
        out.require(class_S_bound_check(s.a2, s.a3).within, "sample outside its regime bound");
    }
    const auto k = koebe(3);
    out.require(std::abs(gamma_diff(k[2], k[3]) - 0.5) <= 1e-12, "Koebe does not attain 1/2");

    const auto f = one_over_one_plus_z_plus_z2(3);
    const double v = 0.5 * (std::abs(f[3] - 1.5 * f[2] * f[2]) - std::abs(f[2]));
    out.require(std::abs(v - 0.25) <= 1e-12, fmt::format("z/(1+z+z^2) gives {:.9g}", v));

    bool warned = false;
    for (const auto &pt : expand_selector("s", {})) {
        const auto row = verify_point(pt, RunConfig{});
        out.require(row.status() != Status::fail, "class S verify row fails");
        if (row.gap_lower && std::abs(*row.gap_lower - 0.75) <= 1e-12) {
            warned = row.status() == Status::warn;
        }
    }
    out.require(warned, "attainment gap 3/4 not reported as WARN");
    if (out.ok) {
        out.detail = fmt::format("{} samples, gap 0.75 reported as WARN", samples.size());
    }
    return out;
}

Outcome fekete_szego()
{
    Outcome out;
    out.require(fekete_szego_bound(0.0) == 3.0, "mu = 0");
    out.require(std::abs(fekete_szego_bound(0.5) - (1.0 + 2.0 * std::exp(-2.0))) <= 1e-15, "mu = 1/2");
    out.require(fekete_szego_bound(1.0) == 1.0, "mu = 1");
    out.require(std::abs(fekete_szego_bound(1.0 - 1e-9) - 1.0) <= 1e-6, "left limit at mu = 1");
    out.require(std::abs(fekete_szego_bound(1.0 + 1e-9) - 1.0) <= 1e-6, "right limit at mu = 1");
    return out;
}

Outcome branch_continuity()
{
    Outcome out;
    struct Probe {
        const char *label;
        double at;
        ClassSpec (*make)(double);
    };
    const Probe probes[] = {
        {"starlike order 3/4", 0.75, [](double a) { return make_class<classes::Spirallike>(0.0, a); }},
        {"convex order 1/10", 0.1, [](double a) { return make_class<classes::GammaConvex>(0.0, a); }},
        {"convex order 2/5", 0.4, [](double a) { return make_class<classes::GammaConvex>(0.0, a); }},
        {"convex order 3/5", 0.6, [](double a) { return make_class<classes::GammaConvex>(0.0, a); }},
        {"convex order 4/5", 0.8, [](double a) { return make_class<classes::GammaConvex>(0.0, a); }},
        {"ozaki 1/5", 0.2, [](double v) { return make_class<classes::Ozaki>(v); }},
        {"strongly convex 1/3", 1.0 / 3.0, [](double a) { return make_class<classes::StronglyConvex>(a); }},
        {"strongly convex 5/6", 5.0 / 6.0, [](double a) { return make_class<classes::StronglyConvex>(a); }},
    };
    double worst = 0.0;
    for (const auto &p : probes) {
        for (int k = -5; k < 5; ++k) {
            const auto a = gamma_diff_bounds(p.make(p.at + k * 1e-6));
            const auto b = gamma_diff_bounds(p.make(p.at + (k + 1) * 1e-6));
            const double jump = std::max(std::abs(a.lower - b.lower), std::abs(a.upper - b.upper));
            worst = std::max(worst, jump);
            out.require(jump <= 1e-4, fmt::format("{}: jump {:.3g}", p.label, jump));
        }
    }
    if (out.ok) {
        out.detail = fmt::format("8 boundaries, max jump {:.3g}", worst);
    }
    return out;
}

Outcome consistency_triangle()
{
    Outcome out;
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto open = [&](double lo, double hi) {
        double v;
        do {
            v = lo + (hi - lo) * unit(rng);
        } while (!(v > lo && v < hi));
        return v;
    };
    const double half_pi = std::numbers::pi / 2;
    std::size_t checks = 0;
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const ClassSpec specs[] = {
            make_class<classes::StronglyStarlike>(open(0.0, 1.0)),
            make_class<classes::StronglyConvex>(open(0.0, 1.0)),
            make_class<classes::Ozaki>(open(0.0, 1.0)),
            make_class<classes::F0>(open(-0.5, 1.0)),
            make_class<classes::Spirallike>(open(-half_pi, half_pi) * 0.95, 0.99 * unit(rng)),
            make_class<classes::GammaConvex>(open(-half_pi, half_pi) * 0.95, 0.99 * unit(rng)),
        };
        complex q1;
        do {
            q1 = random_complex(rng, 1.0);
        } while (std::abs(q1) >= 1.0);
        const RationalP kinds[] = {rational::HalfPlane{}, rational::Symmetric{}, rational::MobiusA{open(-1.0, 1.0)},
                                   rational::InverseMobius{open(-1.0, 1.0)},
                                   rational::Blaschke2{q1, std::polar(1.0, 2.0 * std::numbers::pi * unit(rng))}};
        for (const auto &cs : specs) {
            const auto rf = reduced_functional(cs);
            for (const auto &rp : kinds) {
                const auto f = build_f(cs, rp, 3);
                const auto pt = leading_point(p_series(rp, 3));
                const auto a = a2_a3(cs, pt);
                const double from_series = gamma_diff(f[2], f[3]);
                const double from_map = gamma_diff(a.a2, a.a3);
                const double from_psi = rf.scale * psi_value(rf.b, pt, Sign::plus);
                const double err = std::max(std::abs(from_series - from_map), std::abs(from_map - from_psi));
                worst = std::max(worst, err);
                out.require(err <= 1e-10,
                            fmt::format("{} with {}: disagreement {:.3g}", class_name(cs), kind_name(rp), err));
                ++checks;
            }
        }
    }
    if (out.ok) {
        out.detail = fmt::format("{} triples, max disagreement {:.3g}", checks, worst);
    }
    return out;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "inverse coefficient identities", 1.0, inverse_identities},
        {2, "Koebe inversion pipeline", 1.0, koebe_pipeline},
        {3, "lemma dominance and sharpness", 300.0, lemma_oracle},
        {4, "published constants", 0.0, published_constants},
        {5, "extremal attainment", 10.0, attainment},
        {6, "statement discrepancies", 0.0, discrepancies},
        {7, "class S properties", 0.0, class_s},
        {8, "Fekete-Szego bound", 0.0, fekete_szego},
        {9, "branch continuity", 0.0, branch_continuity},
        {10, "pipeline consistency triangle", 30.0, consistency_triangle},
    };

    int failed = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception &e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.ok && c.time_limit > 0.0 && secs > c.time_limit) {
            out.ok = false;
            out.detail = fmt::format("took longer than {} s", c.time_limit);
        }
        failed += out.ok ? 0 : 1;
        fmt::print("{} {:>2} {} [{:.2f} s]{}\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                   out.detail.empty() ? "" : " " + out.detail);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
