#ifndef SCHLICHT_CARATHEODORY_HPP
#define SCHLICHT_CARATHEODORY_HPP

#include <schlicht/power_series.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace schlicht {

// Leading coefficients (c1, c2) of p(z) = 1 + c1 z + c2 z^2 + ... in the class P.
struct CaratheodoryPoint {
    complex c1;
    complex c2;
};

inline constexpr double body_epsilon = 1e-12;

// Membership in the (c1, c2) coefficient body of P:
// |c1| <= 2 and |c2 - c1^2/2| <= 2 - |c1|^2/2.
inline bool is_valid(complex c1, complex c2, double eps = body_epsilon)
{
    const double m = std::abs(c1);
    if (!(m <= 2.0 + eps)) {
        return false;
    }
    return std::abs(c2 - c1 * c1 / 2.0) <= 2.0 - m * m / 2.0 + eps;
}

inline bool is_valid(const CaratheodoryPoint &pt, double eps = body_epsilon)
{
    return is_valid(pt.c1, pt.c2, eps);
}

// (r, r^2/2 + x (2 - r^2/2)) for r in [0, 2], |x| <= 1. Every point of the
// body with real c1 >= 0 arises this way; rotations give the rest.
inline CaratheodoryPoint point_from_fiber(double r, complex x)
{
    if (!(r >= 0.0 && r <= 2.0)) {
        throw std::domain_error("point_from_fiber: r must lie in [0, 2]");
    }
    if (!(std::abs(x) <= 1.0 + body_epsilon)) {
        throw std::domain_error("point_from_fiber: |x| must not exceed 1");
    }
    const double half = r * r / 2.0;
    return {complex(r), half + x * (2.0 - half)};
}

// Explicit rational members of P used as extremal functions.
namespace rational {

struct HalfPlane {};  // (1+z)/(1-z)
struct Symmetric {};  // (1+z^2)/(1-z^2)
struct MobiusA {      // (1+2Az+z^2)/(1-z^2)
    double a;
};
struct InverseMobius {  // (1-z^2)/(1-2tz+z^2)
    double t;
};
// (1+z w(z))/(1-z w(z)) with w(z) = (q1 + q2 z)/(1 + conj(q1) q2 z):
//   (1 + (q1 + conj(q1) q2) z + q2 z^2) / (1 + (conj(q1) q2 - q1) z - q2 z^2)
struct Blaschke2 {
    complex q1;
    complex q2;
};

} // namespace rational

using RationalP = std::variant<rational::HalfPlane, rational::Symmetric, rational::MobiusA,
                               rational::InverseMobius, rational::Blaschke2>;

namespace detail {

struct RationalCoeffs {
    complex num[3];
    complex den[3];
};

inline RationalCoeffs rational_coeffs(const RationalP &rp)
{
    using namespace rational;
    struct Visitor {
        RationalCoeffs operator()(HalfPlane) const { return {{1.0, 1.0, 0.0}, {1.0, -1.0, 0.0}}; }
        RationalCoeffs operator()(Symmetric) const { return {{1.0, 0.0, 1.0}, {1.0, 0.0, -1.0}}; }
        RationalCoeffs operator()(MobiusA m) const
        {
            return {{1.0, 2.0 * m.a, 1.0}, {1.0, 0.0, -1.0}};
        }
        RationalCoeffs operator()(InverseMobius m) const
        {
            return {{1.0, 0.0, -1.0}, {1.0, -2.0 * m.t, 1.0}};
        }
        RationalCoeffs operator()(const Blaschke2 &b) const
        {
            const complex cq1 = std::conj(b.q1);
            return {{1.0, b.q1 + cq1 * b.q2, b.q2}, {1.0, cq1 * b.q2 - b.q1, -b.q2}};
        }
    };
    return std::visit(Visitor{}, rp);
}

inline void check_parameters(const RationalP &rp)
{
    using namespace rational;
    if (const auto *m = std::get_if<MobiusA>(&rp); m && !(std::abs(m->a) <= 1.0)) {
        throw std::domain_error("mobius_A: |A| must not exceed 1");
    }
    if (const auto *m = std::get_if<InverseMobius>(&rp); m && !(std::abs(m->t) <= 1.0)) {
        throw std::domain_error("inverse_mobius: |t| must not exceed 1");
    }
    if (const auto *b = std::get_if<Blaschke2>(&rp)) {
        if (!(std::abs(b->q1) <= 1.0 + body_epsilon)) {
            throw std::domain_error("blaschke2: |q1| must not exceed 1");
        }
        if (!(std::abs(std::abs(b->q2) - 1.0) <= 1e-12)) {
            throw std::domain_error("blaschke2: q2 must be unimodular");
        }
    }
}

} // namespace detail

inline std::string kind_name(const RationalP &rp)
{
    static constexpr const char *names[] = {"half_plane", "symmetric", "mobius_A",
                                            "inverse_mobius", "blaschke2"};
    return names[rp.index()];
}

inline complex evaluate(const RationalP &rp, complex z)
{
    const auto rc = detail::rational_coeffs(rp);
    const complex num = rc.num[0] + z * (rc.num[1] + z * rc.num[2]);
    const complex den = rc.den[0] + z * (rc.den[1] + z * rc.den[2]);
    return num / den;
}

// Necessary check for Re p > 0: samples the circle |z| = 0.999 at 4096 angles.
inline bool has_positive_real_part(const RationalP &rp)
{
    constexpr int samples = 4096;
    constexpr double radius = 0.999;
    for (int k = 0; k < samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / samples;
        if (evaluate(rp, std::polar(radius, theta)).real() < -1e-9) {
            return false;
        }
    }
    return true;
}

// Taylor series of the rational function to order N.
inline PowerSeries p_series(const RationalP &rp, std::size_t order)
{
    detail::check_parameters(rp);
    if (!has_positive_real_part(rp)) {
        throw std::domain_error("p_series: " + kind_name(rp) + " fails the positivity check");
    }
    const auto rc = detail::rational_coeffs(rp);
    std::vector<complex> c(order + 1, complex{0.0});
    for (std::size_t n = 0; n <= order; ++n) {
        complex acc = n < 3 ? rc.num[n] : complex{0.0};
        for (std::size_t k = 1; k <= std::min<std::size_t>(n, 2); ++k) {
            acc -= rc.den[k] * c[n - k];
        }
        c[n] = acc;
    }
    return PowerSeries(std::move(c));
}

inline CaratheodoryPoint leading_point(const PowerSeries &p)
{
    return {p[1], p[2]};
}

// Grid resolution (n_r, n_rho, n_phi) of the coefficient-body enumeration.
struct GridResolution {
    std::size_t n_r = 201;
    std::size_t n_rho = 101;
    std::size_t n_phi = 256;

    std::size_t size() const noexcept { return n_r * n_rho * n_phi; }
    friend bool operator==(const GridResolution &, const GridResolution &) = default;
};

inline void check_resolution(const GridResolution &res)
{
    if (res.n_r < 2 || res.n_rho < 2 || res.n_phi < 4) {
        throw std::invalid_argument("grid resolution must be at least (2, 2, 4)");
    }
}

// Deterministic enumeration of point_from_fiber over
//   r   = 2 i / (n_r - 1),        i in [0, n_r)
//   rho = j / (n_rho - 1),        j in [0, n_rho)
//   phi = 2 pi k / n_phi,         k in [0, n_phi)
// in row-major order (r outer, rho middle, phi inner). Index-addressable,
// so any sub-range can be processed independently.
class Grid {
public:
    explicit Grid(GridResolution res) : res_(res) { check_resolution(res_); }

    const GridResolution &resolution() const noexcept { return res_; }
    std::size_t size() const noexcept { return res_.size(); }

    double r(std::size_t i) const noexcept
    {
        return 2.0 * static_cast<double>(i) / static_cast<double>(res_.n_r - 1);
    }
    double rho(std::size_t j) const noexcept
    {
        return static_cast<double>(j) / static_cast<double>(res_.n_rho - 1);
    }
    double phi(std::size_t k) const noexcept
    {
        return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(res_.n_phi);
    }

    CaratheodoryPoint operator[](std::size_t index) const
    {
        const auto k = index % res_.n_phi;
        const auto j = (index / res_.n_phi) % res_.n_rho;
        const auto i = index / (res_.n_phi * res_.n_rho);
        return point_from_fiber(r(i), std::polar(rho(j), phi(k)));
    }

    template <typename F>
    void for_each(std::size_t begin, std::size_t end, F &&f) const
    {
        for (std::size_t idx = begin; idx < end && idx < size(); ++idx) {
            f(idx, (*this)[idx]);
        }
    }

private:
    GridResolution res_;
};

} // namespace schlicht

#endif
