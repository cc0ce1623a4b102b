#ifndef SCHLICHT_POWER_SERIES_HPP
#define SCHLICHT_POWER_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schlicht {

using complex = std::complex<double>;

// Truncated power series c[0] + c[1] z + ... + c[N] z^N with complex
// double coefficients. Immutable after construction.
class PowerSeries {
public:
    PowerSeries() : coeffs_{complex{0.0}} {}

    explicit PowerSeries(std::vector<complex> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw std::invalid_argument("PowerSeries: at least one coefficient is required");
        }
        for (const auto &c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw std::invalid_argument("PowerSeries: non-finite coefficient");
            }
        }
    }

    PowerSeries(std::initializer_list<complex> coeffs)
        : PowerSeries(std::vector<complex>(coeffs)) {}

    // The series 1 (order N).
    static PowerSeries one(std::size_t order)
    {
        std::vector<complex> c(order + 1, complex{0.0});
        c[0] = 1.0;
        return PowerSeries(std::move(c));
    }

    // The series z (order N >= 1).
    static PowerSeries identity(std::size_t order)
    {
        std::vector<complex> c(std::max<std::size_t>(order, 1) + 1, complex{0.0});
        c[1] = 1.0;
        return PowerSeries(std::move(c));
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }

    // Coefficients beyond the truncation order read as zero.
    complex operator[](std::size_t n) const noexcept
    {
        return n < coeffs_.size() ? coeffs_[n] : complex{0.0};
    }

    std::span<const complex> coefficients() const noexcept { return coeffs_; }

    PowerSeries truncated(std::size_t order) const
    {
        std::vector<complex> c(order + 1, complex{0.0});
        std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
        return PowerSeries(std::move(c));
    }

private:
    std::vector<complex> coeffs_;
};

// A PowerSeries with c[0] = 0 and c[1] = 1 (f(0) = 0, f'(0) = 1).
class NormalizedSeries {
public:
    explicit NormalizedSeries(PowerSeries s) : series_(std::move(s))
    {
        if (series_.order() < 1) {
            throw std::invalid_argument("NormalizedSeries: order must be at least 1");
        }
        if (series_[0] != complex{0.0} || series_[1] != complex{1.0}) {
            throw std::invalid_argument("NormalizedSeries: requires c[0] = 0 and c[1] = 1");
        }
    }

    // z + a_2 z^2 + ... + a_N z^N from the tail {a_2, ..., a_N}.
    static NormalizedSeries from_tail(std::span<const complex> tail)
    {
        std::vector<complex> c{complex{0.0}, complex{1.0}};
        c.insert(c.end(), tail.begin(), tail.end());
        return NormalizedSeries(PowerSeries(std::move(c)));
    }

    std::size_t order() const noexcept { return series_.order(); }
    complex operator[](std::size_t n) const noexcept { return series_[n]; }
    const PowerSeries &series() const noexcept { return series_; }

private:
    PowerSeries series_;
};

namespace detail {

inline void require_unit(const PowerSeries &p, const char *what)
{
    if (p[0] != complex{1.0}) {
        throw std::invalid_argument(std::string(what) + ": constant term must be 1");
    }
}

} // namespace detail

// Cauchy product, truncated at the smaller of the two orders.
inline PowerSeries mul(const PowerSeries &a, const PowerSeries &b)
{
    const auto n = std::min(a.order(), b.order());
    std::vector<complex> c(n + 1, complex{0.0});
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; i + j <= n; ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return PowerSeries(std::move(c));
}

inline PowerSeries add(const PowerSeries &a, const PowerSeries &b)
{
    const auto n = std::min(a.order(), b.order());
    std::vector<complex> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = a[i] + b[i];
    }
    return PowerSeries(std::move(c));
}

inline PowerSeries scale(const PowerSeries &a, complex k)
{
    std::vector<complex> c(a.coefficients().begin(), a.coefficients().end());
    for (auto &x : c) {
        x *= k;
    }
    return PowerSeries(std::move(c));
}

// log(p) for p with p[0] = 1, from p L' = p'.
inline PowerSeries log_unit(const PowerSeries &p, std::size_t order)
{
    detail::require_unit(p, "log_unit");
    const auto n = std::min(order, p.order());
    std::vector<complex> l(n + 1, complex{0.0});
    for (std::size_t k = 1; k <= n; ++k) {
        complex acc = static_cast<double>(k) * p[k];
        for (std::size_t j = 1; j < k; ++j) {
            acc -= static_cast<double>(j) * l[j] * p[k - j];
        }
        l[k] = acc / static_cast<double>(k);
    }
    return PowerSeries(std::move(l));
}

// exp(L) for L with L[0] = 0, from E' = L' E.
inline PowerSeries exp_series(const PowerSeries &l, std::size_t order)
{
    if (l[0] != complex{0.0}) {
        throw std::invalid_argument("exp_series: constant term must be 0");
    }
    const auto n = std::min(order, l.order());
    std::vector<complex> e(n + 1, complex{0.0});
    e[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        complex acc{0.0};
        for (std::size_t j = 1; j <= k; ++j) {
            acc += static_cast<double>(j) * l[j] * e[k - j];
        }
        e[k] = acc / static_cast<double>(k);
    }
    return PowerSeries(std::move(e));
}

// p^alpha = exp(alpha log p), principal branch at p(0) = 1.
inline PowerSeries pow_real(const PowerSeries &p, double alpha, std::size_t order)
{
    detail::require_unit(p, "pow_real");
    return exp_series(scale(log_unit(p, order), alpha), order);
}

// f(g(z)) for g with g[0] = 0, truncated at min(f.order, g.order).
inline PowerSeries compose(const PowerSeries &f, const PowerSeries &g)
{
    if (g[0] != complex{0.0}) {
        throw std::invalid_argument("compose: inner series must vanish at 0");
    }
    const auto n = std::min(f.order(), g.order());
    // Horner: f0 + g (f1 + g (f2 + ...)).
    PowerSeries acc = scale(PowerSeries::one(n), f[n]);
    for (std::size_t k = n; k-- > 0;) {
        auto next = mul(acc, g.truncated(n));
        std::vector<complex> c(next.coefficients().begin(), next.coefficients().end());
        c[0] += f[k];
        acc = PowerSeries(std::move(c));
    }
    return acc;
}

// Compositional inverse F with f(F(w)) = w, solved order by order: with
// A_n set to zero, the w^n coefficient of f(F) is exactly -A_n.
inline NormalizedSeries revert(const NormalizedSeries &f, std::size_t order)
{
    const auto n = std::min(order, f.order());
    std::vector<complex> big(n + 1, complex{0.0});
    big[1] = 1.0;
    const auto fs = f.series().truncated(n);
    for (std::size_t k = 2; k <= n; ++k) {
        const auto partial = PowerSeries(big).truncated(k);
        big[k] = -compose(fs.truncated(k), partial)[k];
    }
    return NormalizedSeries(PowerSeries(std::move(big)));
}

// gamma_n = (1/2) [z^n] log(f(z)/z), n = 1..min(N, order(f) - 1).
// Element i of the result holds gamma_{i+1}.
inline std::vector<complex> log_coefficients(const NormalizedSeries &f, std::size_t n)
{
    const auto m = std::min(n, f.order() - 1);
    std::vector<complex> quotient(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        quotient[k] = f[k + 1];
    }
    const auto l = log_unit(PowerSeries(std::move(quotient)), m);
    std::vector<complex> gamma(m);
    for (std::size_t k = 1; k <= m; ++k) {
        gamma[k - 1] = 0.5 * l[k];
    }
    return gamma;
}

// Gamma_n: the logarithmic coefficients of the inverse function.
inline std::vector<complex> inverse_log_coefficients(const NormalizedSeries &f, std::size_t n)
{
    return log_coefficients(revert(f, std::min(n + 1, f.order())), n);
}

} // namespace schlicht

#endif
