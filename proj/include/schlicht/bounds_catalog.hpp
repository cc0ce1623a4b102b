#ifndef SCHLICHT_BOUNDS_CATALOG_HPP
#define SCHLICHT_BOUNDS_CATALOG_HPP

#include <schlicht/caratheodory.hpp>
#include <schlicht/power_series.hpp>
#include <schlicht/psi_lemma.hpp>
#include <schlicht/subclass_models.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace schlicht {

// max over S of |a3 - mu a2^2| for real mu.
inline double fekete_szego_bound(double mu)
{
    if (mu >= 1.0) {
        return 4.0 * mu - 3.0;
    }
    if (mu > 0.0) {
        return 1.0 + 2.0 * std::exp(-2.0 * mu / (1.0 - mu));
    }
    return 3.0 - 4.0 * mu;
}

enum class Provenance { theorem_statement, proof_reconstruction };

inline const char *to_string(Provenance p) noexcept
{
    return p == Provenance::theorem_statement ? "theorem_statement" : "proof_reconstruction";
}

struct BoundPair {
    double lower;
    double upper;
    std::string lower_branch;
    std::string upper_branch;
    Provenance provenance;
};

// Lower-bound regimes of class S, keyed on |a2|.
enum class SRegime { abs_a2_le_1, abs_a2_gt_1 };

inline const char *to_string(SRegime r) noexcept
{
    return r == SRegime::abs_a2_le_1 ? "abs_a2_le_1" : "abs_a2_gt_1";
}

inline SRegime s_regime(double abs_a2) noexcept
{
    return abs_a2 <= 1.0 ? SRegime::abs_a2_le_1 : SRegime::abs_a2_gt_1;
}

// -1/2 for |a2| <= 1, -(1 + 2 e^{-2})/2 otherwise.
inline double class_S_lower_bound(SRegime r)
{
    return r == SRegime::abs_a2_le_1 ? -0.5 : -fekete_szego_bound(0.5) / 2.0;
}

inline BoundPair class_S_bounds(SRegime r)
{
    return {class_S_lower_bound(r), 0.5, to_string(r), "bieberbach", Provenance::theorem_statement};
}

// Lambda range over which the F0 bounds are claimed.
inline bool f0_bound_in_range(double lambda) noexcept
{
    return lambda >= 0.5 && lambda <= 1.0;
}

// Bounds on |Gamma_2| - |Gamma_1|. Class S: the theorem constants (lower is
// the weaker |a2| > 1 regime). Other classes: -scale * max Psi_- and
// scale * max Psi_+ from the reduced functional.
inline BoundPair gamma_diff_bounds(const ClassSpec &cs)
{
    if (is_class_s(cs)) {
        return class_S_bounds(SRegime::abs_a2_gt_1);
    }
    if (const auto *f = std::get_if<classes::F0>(&cs); f && !f0_bound_in_range(f->lambda)) {
        throw std::domain_error("f0: bounds are only claimed for lambda in [1/2, 1]");
    }
    const auto rf = reduced_functional(cs);
    const auto lo = psi_minus_bound(rf.b);
    const auto hi = psi_plus_bound(rf.b);
    return {-rf.scale * lo.value, rf.scale * hi.value, to_string(lo.branch), to_string(hi.branch),
            Provenance::proof_reconstruction};
}

// Values as printed in the theorem statements (signs restored, branch
// conditions as in the proofs). Empty when the printed expression cannot be
// evaluated.
struct StatedBounds {
    std::optional<double> lower;
    std::optional<double> upper;
};

inline StatedBounds stated_bounds(const ClassSpec &cs)
{
    using namespace classes;
    struct Visitor {
        StatedBounds operator()(S) const { return {class_S_lower_bound(SRegime::abs_a2_gt_1), 0.5}; }
        StatedBounds operator()(StronglyStarlike c) const
        {
            const double a = c.alpha;
            return {-a / std::sqrt(1.0 + 3.0 * a), a / 2.0};
        }
        StatedBounds operator()(StronglyConvex c) const
        {
            const double a = c.alpha;
            double lower;
            if (a <= 1.0 / 3.0) {
                lower = -a * (2.0 - a) / 4.0;
            } else if (a < 5.0 / 6.0) {
                lower = -a / 6.0 * (6.0 * a + 3.0) / (6.0 * a + 14.0);
            } else {
                lower = -a / std::sqrt(4.0 + 6.0 * a);
            }
            return {lower, a / 12.0};
        }
        StatedBounds operator()(Ozaki c) const
        {
            const double v = c.nu;
            const double lower = v < 0.2 ? -v / 12.0 * (10.0 * v + 34.0) / (5.0 * v + 8.0)
                                         : -v / std::sqrt(5.0 * v + 8.0);
            return {lower, v / 12.0};
        }
        StatedBounds operator()(F0 c) const
        {
            const double k = 1.0 + 2.0 * c.lambda;
            return {-k / (2.0 * std::sqrt(5.0 * k)), std::nullopt};
        }
        StatedBounds operator()(Spirallike c) const
        {
            const double s = (1.0 - c.alpha) * std::cos(c.gamma);
            return {-s / std::sqrt(std::abs(eta(c)) + 1.0), s / 2.0};
        }
        StatedBounds operator()(GammaConvex c) const
        {
            const double s = (1.0 - c.alpha) * std::cos(c.gamma);
            const double b = std::abs(beta(c));
            double lower;
            if (b <= 1.0) {
                lower = -s / 12.0 * (6.0 - b);
            } else if (b <= 2.5) {
                lower = -s / 12.0 * (2.0 + 9.0 / (b + 2.0));
            } else {
                lower = -s / 2.0 * std::sqrt(2.0 / (b + 2.0));
            }
            return {lower, s / 6.0};
        }
    };
    validate(cs);
    return std::visit(Visitor{}, cs);
}

// Closed-form extremal functions of class S.
enum class NamedFunction { koebe, one_over_one_plus_z_plus_z2 };

inline const char *to_string(NamedFunction f) noexcept
{
    return f == NamedFunction::koebe ? "koebe" : "z/(1+z+z^2)";
}

// z/(1-z)^2 = sum n z^n
inline NormalizedSeries koebe(std::size_t order)
{
    std::vector<complex> a(order + 1, complex{0.0});
    for (std::size_t n = 1; n <= order; ++n) {
        a[n] = static_cast<double>(n);
    }
    return NormalizedSeries(PowerSeries(std::move(a)));
}

// z/(1+z+z^2) = z (1 - z)/(1 - z^3): coefficients 1, -1, 0 repeating.
inline NormalizedSeries one_over_one_plus_z_plus_z2(std::size_t order)
{
    std::vector<complex> a(order + 1, complex{0.0});
    for (std::size_t n = 1; n <= order; ++n) {
        const std::size_t r = (n - 1) % 3;
        a[n] = r == 0 ? 1.0 : (r == 1 ? -1.0 : 0.0);
    }
    return NormalizedSeries(PowerSeries(std::move(a)));
}

inline NormalizedSeries named_series(NamedFunction f, std::size_t order)
{
    return f == NamedFunction::koebe ? koebe(order) : one_over_one_plus_z_plus_z2(order);
}

enum class Side { lower, upper };

inline const char *to_string(Side s) noexcept { return s == Side::lower ? "lower" : "upper"; }

using ExtremalFunction = std::variant<RationalP, NamedFunction>;

struct ExtremalDescriptor {
    Side side;
    ExtremalFunction p;
    double expected_value;
    std::string branch;
    // Parameters as printed in the sharpness argument, where they differ.
    std::optional<RationalP> printed_p;
};

inline std::string extremal_name(const ExtremalFunction &f)
{
    if (const auto *rp = std::get_if<RationalP>(&f)) {
        return kind_name(*rp);
    }
    return to_string(std::get<NamedFunction>(f));
}

struct SCheck {
    double value;
    bool within;
    SRegime regime;
};

// (|a3 - 3/2 a2^2| - |a2|)/2 against the theorem bounds for the regime of |a2|.
inline SCheck class_S_bound_check(complex a2, complex a3)
{
    if (!(std::abs(a2) <= 2.0 + 1e-12) || !(std::abs(a3) <= 3.0 + 1e-12)) {
        throw std::domain_error("class_S_bound_check: coefficients outside the Bieberbach range");
    }
    const double value = gamma_diff(a2, a3);
    const auto regime = s_regime(std::abs(a2));
    const bool within = value >= class_S_lower_bound(regime) - 1e-12 && value <= 0.5 + 1e-12;
    return {value, within, regime};
}

namespace detail {

inline complex unit_direction(complex z)
{
    return std::abs(z) > 0.0 ? z / std::abs(z) : complex{1.0};
}

// Lower-bound extremal of a p-representable class with the printed variant.
inline std::pair<RationalP, std::optional<RationalP>> lower_extremal(const ClassSpec &cs, Branch branch)
{
    using namespace classes;
    using namespace rational;
    if (const auto *c = std::get_if<StronglyStarlike>(&cs)) {
        return {MobiusA{1.0 / std::sqrt(1.0 + 3.0 * c->alpha)}, std::nullopt};
    }
    if (const auto *c = std::get_if<StronglyConvex>(&cs)) {
        const double d = 3.0 * c->alpha + 2.0;
        switch (branch) {
        case Branch::minus_1:
            return {HalfPlane{}, std::nullopt};
        case Branch::minus_3:
            return {MobiusA{3.0 / d}, MobiusA{3.0 / (3.0 + 2.0 * c->alpha)}};
        default:
            return {MobiusA{std::sqrt(2.0 / d)}, MobiusA{3.0 / std::sqrt(3.0 + 2.0 * c->alpha)}};
        }
    }
    if (const auto *c = std::get_if<Ozaki>(&cs)) {
        const double d = 5.0 * c->nu + 8.0;
        if (branch == Branch::minus_3) {
            return {InverseMobius{6.0 / d}, std::nullopt};
        }
        return {InverseMobius{2.0 / std::sqrt(d)}, std::nullopt};
    }
    if (const auto *c = std::get_if<F0>(&cs)) {
        return {MobiusA{2.0 / std::sqrt(5.0 + 10.0 * c->lambda)}, std::nullopt};
    }
    if (const auto *c = std::get_if<Spirallike>(&cs)) {
        const complex e = eta(*c);
        return {Blaschke2{1.0 / std::sqrt(std::abs(e) + 1.0), unit_direction(e)}, std::nullopt};
    }
    const auto &c = std::get<GammaConvex>(cs);
    const complex b = beta(c);
    const double m = std::abs(b);
    switch (branch) {
    case Branch::minus_1:
        return {HalfPlane{}, std::nullopt};
    case Branch::minus_3:
        return {Blaschke2{3.0 / (m + 2.0), unit_direction(b)},
                Blaschke2{3.0 / (2.0 * (1.0 + m)), unit_direction(b)}};
    default:
        return {Blaschke2{std::sqrt(2.0 / (m + 2.0)), unit_direction(b)},
                Blaschke2{1.0 / std::sqrt(1.0 + m), unit_direction(b)}};
    }
}

inline Branch branch_from_label(const std::string &label)
{
    for (const auto b : {Branch::plus_1, Branch::plus_2, Branch::minus_1, Branch::minus_2, Branch::minus_3}) {
        if (label == to_string(b)) {
            return b;
        }
    }
    throw std::logic_error("unknown branch label " + label);
}

} // namespace detail

// Functions attaining each side of gamma_diff_bounds (for class S, the
// functions the theorem names; the lower one is the claimed attainer).
inline std::vector<ExtremalDescriptor> extremals_for(const ClassSpec &cs)
{
    if (is_class_s(cs)) {
        return {{Side::upper, NamedFunction::koebe, 0.5, "bieberbach", std::nullopt},
                {Side::lower, NamedFunction::one_over_one_plus_z_plus_z2,
                 class_S_lower_bound(SRegime::abs_a2_le_1), to_string(SRegime::abs_a2_le_1), std::nullopt}};
    }
    const auto bp = gamma_diff_bounds(cs);
    const auto lower = detail::lower_extremal(cs, detail::branch_from_label(bp.lower_branch));
    return {{Side::upper, RationalP{rational::Symmetric{}}, bp.upper, bp.upper_branch, std::nullopt},
            {Side::lower, lower.first, bp.lower, bp.lower_branch, lower.second}};
}

// |Gamma_2| - |Gamma_1| for an extremal function, via the exact formula path.
inline double extremal_value(const ClassSpec &cs, const ExtremalFunction &f)
{
    if (const auto *name = std::get_if<NamedFunction>(&f)) {
        const auto s = named_series(*name, 3);
        return gamma_diff(s[2], s[3]);
    }
    return gamma_diff_from_point(cs, leading_point(p_series(std::get<RationalP>(f), 2)));
}

// Deterministic (a2, a3) samples from S: Koebe rotations, z/(1+z+z^2), the
// identity, then `count` draws from the p-representable subclasses.
inline std::vector<Coefficients> class_S_samples(std::size_t count)
{
    if (count < 1) {
        throw std::invalid_argument("class_S_samples: count must be at least 1");
    }
    std::vector<Coefficients> out;
    for (int k = 0; k < 8; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / 8.0;
        out.push_back({2.0 * std::polar(1.0, theta), 3.0 * std::polar(1.0, 2.0 * theta)});
    }
    out.push_back({-1.0, 0.0});
    out.push_back({0.0, 0.0});

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    const double half_pi = std::numbers::pi / 2;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = unit(rng);
        const double u = unit(rng);
        ClassSpec cs;
        switch (i % 6) {
        case 0:
            cs = make_class<classes::StronglyStarlike>(1.0 - t);
            break;
        case 1:
            cs = make_class<classes::StronglyConvex>(1.0 - t);
            break;
        case 2:
            cs = make_class<classes::Ozaki>(1.0 - t);
            break;
        case 3:
            cs = make_class<classes::F0>(1.0 - 1.5 * t * 0.999);
            break;
        case 4:
            cs = make_class<classes::Spirallike>(0.99 * half_pi * (2.0 * t - 1.0), 0.99 * u);
            break;
        default: {
            // univalent for gamma = 0 or cos gamma <= 1/2
            const double wide = std::numbers::pi / 3 + (half_pi - std::numbers::pi / 3) * 0.99 * u;
            const double gamma = t < 0.5 ? 0.0 : (t < 0.75 ? wide : -wide);
            cs = make_class<classes::GammaConvex>(gamma, 0.99 * u);
            break;
        }
        }
        complex q1;
        do {
            q1 = complex(sym(rng), sym(rng));
        } while (std::abs(q1) > 1.0);
        const RationalP kinds[] = {rational::HalfPlane{}, rational::Symmetric{}, rational::MobiusA{sym(rng)},
                                   rational::InverseMobius{sym(rng)},
                                   rational::Blaschke2{q1, std::polar(1.0, 2.0 * std::numbers::pi * unit(rng))}};
        const auto &rp = kinds[(i / 6) % 5];
        out.push_back(a2_a3(cs, leading_point(p_series(rp, 2))));
    }
    return out;
}

} // namespace schlicht

#endif
