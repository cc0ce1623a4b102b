#ifndef SCHLICHT_SUBCLASS_MODELS_HPP
#define SCHLICHT_SUBCLASS_MODELS_HPP

#include <schlicht/caratheodory.hpp>
#include <schlicht/power_series.hpp>
#include <schlicht/psi_lemma.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace schlicht {

// Function classes. Parameters are validated by make_class / validate.
namespace classes {

struct S {};
struct StronglyStarlike {  // |arg zf'/f| < alpha pi/2
    double alpha;
};
struct StronglyConvex {  // |arg (1 + zf''/f')| < alpha pi/2
    double alpha;
};
struct Ozaki {  // Re (1 + zf''/f') < 1 + nu/2
    double nu;
};
struct F0 {  // Re (1 + zf''/f') > 1/2 - lambda
    double lambda;
};
struct Spirallike {  // Re e^{i gamma} zf'/f > alpha cos gamma
    double gamma;
    double alpha;
};
struct GammaConvex {  // Re e^{i gamma} (1 + zf''/f') > alpha cos gamma
    double gamma;
    double alpha;
};

} // namespace classes

using ClassSpec = std::variant<classes::S, classes::StronglyStarlike, classes::StronglyConvex,
                               classes::Ozaki, classes::F0, classes::Spirallike,
                               classes::GammaConvex>;

inline std::string class_name(const ClassSpec &cs)
{
    static constexpr const char *names[] = {"s",    "strongly_starlike", "strongly_convex", "ozaki",
                                            "f0",   "spirallike",        "gamma_convex"};
    return names[cs.index()];
}

inline void validate(const ClassSpec &cs)
{
    using namespace classes;
    auto fail = [&](const char *what) {
        throw std::domain_error(class_name(cs) + ": " + what);
    };
    auto check_spiral = [&](double gamma, double alpha) {
        if (!(std::abs(gamma) < std::numbers::pi / 2)) {
            fail("gamma must lie in (-pi/2, pi/2)");
        }
        if (!(alpha >= 0.0 && alpha < 1.0)) {
            fail("alpha must lie in [0, 1)");
        }
    };
    if (const auto *c = std::get_if<StronglyStarlike>(&cs); c && !(c->alpha > 0.0 && c->alpha <= 1.0)) {
        fail("alpha must lie in (0, 1]");
    }
    if (const auto *c = std::get_if<StronglyConvex>(&cs); c && !(c->alpha > 0.0 && c->alpha <= 1.0)) {
        fail("alpha must lie in (0, 1]");
    }
    if (const auto *c = std::get_if<Ozaki>(&cs); c && !(c->nu > 0.0 && c->nu <= 1.0)) {
        fail("nu must lie in (0, 1]");
    }
    if (const auto *c = std::get_if<F0>(&cs); c && !(c->lambda > -0.5 && c->lambda <= 1.0)) {
        fail("lambda must lie in (-1/2, 1]");
    }
    if (const auto *c = std::get_if<Spirallike>(&cs)) {
        check_spiral(c->gamma, c->alpha);
    }
    if (const auto *c = std::get_if<GammaConvex>(&cs)) {
        check_spiral(c->gamma, c->alpha);
    }
}

template <typename C, typename... Args>
ClassSpec make_class(Args... args)
{
    ClassSpec cs{C{args...}};
    validate(cs);
    return cs;
}

// mu = e^{i gamma} cos gamma
inline complex mu(double gamma)
{
    return std::polar(std::cos(gamma), gamma);
}

// eta = 4 (1 - alpha) mu - 1
inline complex eta(const classes::Spirallike &c)
{
    return 4.0 * (1.0 - c.alpha) * mu(c.gamma) - 1.0;
}

// beta = 5 (1 - alpha) mu - 2
inline complex beta(const classes::GammaConvex &c)
{
    return 5.0 * (1.0 - c.alpha) * mu(c.gamma) - 2.0;
}

inline bool is_class_s(const ClassSpec &cs) noexcept
{
    return std::holds_alternative<classes::S>(cs);
}

// zf'/f = q (starlike type) versus 1 + zf''/f' = q (convex type).
inline bool is_starlike_type(const ClassSpec &cs) noexcept
{
    return std::holds_alternative<classes::StronglyStarlike>(cs) ||
           std::holds_alternative<classes::Spirallike>(cs);
}

namespace detail {

inline void reject_class_s(const ClassSpec &cs, const char *what)
{
    if (is_class_s(cs)) {
        throw std::invalid_argument(std::string(what) + ": class S has no single p-representation");
    }
    validate(cs);
}

} // namespace detail

struct Coefficients {
    complex a2;
    complex a3;
};

// (a2, a3) of the class member generated by p with leading point pt.
inline Coefficients a2_a3(const ClassSpec &cs, const CaratheodoryPoint &pt)
{
    detail::reject_class_s(cs, "a2_a3");
    if (!is_valid(pt)) {
        throw std::domain_error("a2_a3: point outside the Caratheodory body");
    }
    const complex c1 = pt.c1;
    const complex c2 = pt.c2;
    struct Visitor {
        complex c1, c2;
        Coefficients operator()(classes::S) const { return {}; }
        Coefficients operator()(classes::StronglyStarlike c) const
        {
            const double a = c.alpha;
            return {a * c1, a / 4.0 * (2.0 * c2 + (3.0 * a - 1.0) * c1 * c1)};
        }
        Coefficients operator()(classes::StronglyConvex c) const
        {
            const double a = c.alpha;
            return {a * c1 / 2.0, a / 12.0 * (2.0 * c2 + (3.0 * a - 1.0) * c1 * c1)};
        }
        Coefficients operator()(classes::Ozaki c) const
        {
            const double v = c.nu;
            return {-v * c1 / 4.0, (v * v * c1 * c1 - 2.0 * v * c2) / 24.0};
        }
        Coefficients operator()(classes::F0 c) const
        {
            const double k = 1.0 + 2.0 * c.lambda;
            return {k * c1 / 4.0, k * (2.0 * c2 + k * c1 * c1) / 24.0};
        }
        Coefficients operator()(classes::Spirallike c) const
        {
            const complex m = (1.0 - c.alpha) * mu(c.gamma);
            return {m * c1, m * (c2 + m * c1 * c1) / 2.0};
        }
        Coefficients operator()(classes::GammaConvex c) const
        {
            const complex m = (1.0 - c.alpha) * mu(c.gamma);
            return {m * c1 / 2.0, m * (c2 + m * c1 * c1) / 6.0};
        }
    };
    return std::visit(Visitor{c1, c2}, cs);
}

// |Gamma_2| - |Gamma_1| = scale * Psi_+(c1, c2) with B3 = 1.
struct ReducedFunctional {
    PsiParams b;
    double scale;
};

inline ReducedFunctional reduced_functional(const ClassSpec &cs)
{
    detail::reject_class_s(cs, "reduced_functional");
    struct Visitor {
        ReducedFunctional operator()(classes::S) const { throw std::logic_error("unreachable"); }
        ReducedFunctional operator()(classes::StronglyStarlike c) const
        {
            return {PsiParams(2.0, -(1.0 + 3.0 * c.alpha) / 2.0, 1.0), c.alpha / 4.0};
        }
        ReducedFunctional operator()(classes::StronglyConvex c) const
        {
            return {PsiParams(3.0, -(2.0 + 3.0 * c.alpha) / 4.0, 1.0), c.alpha / 12.0};
        }
        ReducedFunctional operator()(classes::Ozaki c) const
        {
            return {PsiParams(3.0, 5.0 * c.nu / 8.0, 1.0), c.nu / 24.0};
        }
        ReducedFunctional operator()(classes::F0 c) const
        {
            const double k = 1.0 + 2.0 * c.lambda;
            return {PsiParams(3.0, -5.0 * k / 8.0, 1.0), k / 24.0};
        }
        ReducedFunctional operator()(classes::Spirallike c) const
        {
            const complex m = (1.0 - c.alpha) * mu(c.gamma);
            return {PsiParams(2.0, -2.0 * m, 1.0), (1.0 - c.alpha) * std::cos(c.gamma) / 4.0};
        }
        ReducedFunctional operator()(classes::GammaConvex c) const
        {
            const complex m = (1.0 - c.alpha) * mu(c.gamma);
            return {PsiParams(3.0, -5.0 * m / 4.0, 1.0), (1.0 - c.alpha) * std::cos(c.gamma) / 12.0};
        }
    };
    return std::visit(Visitor{}, cs);
}

// Gamma_1 = -a2/2, Gamma_2 = -a3/2 + 3 a2^2/4.
inline double gamma_diff(complex a2, complex a3)
{
    return std::abs(-a3 / 2.0 + 0.75 * a2 * a2) - std::abs(a2 / 2.0);
}

// |Gamma_2| - |Gamma_1| from (a2, a3); cross-checked against scale * Psi_+.
inline double gamma_diff_from_point(const ClassSpec &cs, const CaratheodoryPoint &pt)
{
    const auto a = a2_a3(cs, pt);
    const double direct = gamma_diff(a.a2, a.a3);
    const auto rf = reduced_functional(cs);
    const double reduced = rf.scale * psi_value(rf.b, pt, Sign::plus);
    if (std::abs(direct - reduced) > 1e-12 * std::max(1.0, std::abs(direct))) {
        throw std::logic_error("gamma_diff_from_point: coefficient map and reduction disagree for " +
                               class_name(cs));
    }
    return direct;
}

// Right-hand side q of the defining relation (zf'/f = q or 1 + zf''/f' = q).
inline PowerSeries q_series(const ClassSpec &cs, const PowerSeries &p, std::size_t order)
{
    detail::reject_class_s(cs, "q_series");
    detail::require_unit(p, "q_series");
    const PowerSeries base = p.truncated(order);
    const auto affine = [&](complex slope, complex shift) {
        return add(scale(base, slope), scale(PowerSeries::one(order), shift));
    };
    struct Visitor {
        const PowerSeries &base;
        std::size_t order;
        decltype(affine) &aff;
        PowerSeries operator()(classes::S) const { throw std::logic_error("unreachable"); }
        PowerSeries operator()(classes::StronglyStarlike c) const { return pow_real(base, c.alpha, order); }
        PowerSeries operator()(classes::StronglyConvex c) const { return pow_real(base, c.alpha, order); }
        PowerSeries operator()(classes::Ozaki c) const { return aff(-c.nu / 2.0, 1.0 + c.nu / 2.0); }
        PowerSeries operator()(classes::F0 c) const { return aff(0.5 + c.lambda, 0.5 - c.lambda); }
        PowerSeries operator()(classes::Spirallike c) const { return spiral(c.gamma, c.alpha); }
        PowerSeries operator()(classes::GammaConvex c) const { return spiral(c.gamma, c.alpha); }
        // mu ((1 - alpha) p + alpha) - i e^{i gamma} sin gamma
        PowerSeries spiral(double gamma, double alpha) const
        {
            const complex m = mu(gamma);
            const complex shift = m * alpha - complex(0.0, 1.0) * std::polar(1.0, gamma) * std::sin(gamma);
            return aff(m * (1.0 - alpha), shift);
        }
    };
    PowerSeries q = std::visit(Visitor{base, order, affine}, cs);
    if (std::abs(q[0] - 1.0) > 1e-12) {
        throw std::logic_error("q_series: constant term is not 1 for " + class_name(cs));
    }
    return q;
}

// z + a2 z^2 + ... + aN z^N for the class member generated by p.
// The recurrence result is checked against a2_a3 at the leading point of p.
inline NormalizedSeries build_f(const ClassSpec &cs, const PowerSeries &p, std::size_t order)
{
    if (order < 3) {
        throw std::invalid_argument("build_f: order must be at least 3");
    }
    const PowerSeries q = q_series(cs, p, order);
    std::vector<complex> a(order + 1, complex{0.0});
    a[1] = 1.0;
    if (is_starlike_type(cs)) {
        // (n - 1) a_n = sum_{m=1}^{n-1} q_{n-m} a_m
        for (std::size_t n = 2; n <= order; ++n) {
            complex acc = 0.0;
            for (std::size_t m = 1; m < n; ++m) {
                acc += q[n - m] * a[m];
            }
            a[n] = acc / static_cast<double>(n - 1);
        }
    } else {
        // b = f': n b_n = sum_{k=1}^{n} q_k b_{n-k}, a_n = b_{n-1} / n
        std::vector<complex> b(order, complex{0.0});
        b[0] = 1.0;
        for (std::size_t n = 1; n < order; ++n) {
            complex acc = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                acc += q[k] * b[n - k];
            }
            b[n] = acc / static_cast<double>(n);
        }
        for (std::size_t n = 2; n <= order; ++n) {
            a[n] = b[n - 1] / static_cast<double>(n);
        }
    }
    const auto want = a2_a3(cs, leading_point(p));
    const auto close = [](complex got, complex ref) {
        return std::abs(got - ref) <= 1e-12 * std::max(1.0, std::abs(ref));
    };
    if (!close(a[2], want.a2) || !close(a[3], want.a3)) {
        throw std::logic_error("build_f: recurrence disagrees with a2_a3 for " + class_name(cs));
    }
    return NormalizedSeries(PowerSeries(std::move(a)));
}

inline NormalizedSeries build_f(const ClassSpec &cs, const RationalP &rp, std::size_t order)
{
    return build_f(cs, p_series(rp, order), order);
}

} // namespace schlicht

#endif
