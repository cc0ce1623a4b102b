#ifndef SCHLICHT_PSI_LEMMA_HPP
#define SCHLICHT_PSI_LEMMA_HPP

#include <schlicht/caratheodory.hpp>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace schlicht {

// Coefficients of Psi_+(c1, c2) = |B2 c1^2 + B3 c2| - |B1 c1|.
class PsiParams {
public:
    PsiParams(double b1, complex b2, double b3) : b1_(b1), b2_(b2), b3_(b3)
    {
        if (!(b1_ > 0.0) || !std::isfinite(b1_)) {
            throw std::domain_error("PsiParams: B1 must be a positive finite number");
        }
        if (!std::isfinite(b2_.real()) || !std::isfinite(b2_.imag()) || !std::isfinite(b3_)) {
            throw std::domain_error("PsiParams: B2 and B3 must be finite");
        }
        if (b2_ == complex{0.0} && b3_ == 0.0) {
            throw std::domain_error("PsiParams: B2 = B3 = 0 is degenerate");
        }
    }

    double b1() const noexcept { return b1_; }
    complex b2() const noexcept { return b2_; }
    double b3() const noexcept { return b3_; }
    double b4() const noexcept { return std::abs(4.0 * b2_ + 2.0 * b3_); }

private:
    double b1_;
    complex b2_;
    double b3_;
};

enum class Sign { plus, minus };

inline const char *to_string(Sign s) noexcept { return s == Sign::plus ? "plus" : "minus"; }

// Branches of the piecewise bounds, in the order the lemma lists them.
enum class Branch { plus_1, plus_2, minus_1, minus_2, minus_3 };

inline const char *to_string(Branch b) noexcept
{
    switch (b) {
    case Branch::plus_1:
        return "plus_1";
    case Branch::plus_2:
        return "plus_2";
    case Branch::minus_1:
        return "minus_1";
    case Branch::minus_2:
        return "minus_2";
    case Branch::minus_3:
        return "minus_3";
    }
    return "?";
}

struct LemmaBound {
    double value;
    Branch branch;
};

namespace detail {

inline double psi_plus_raw(const PsiParams &b, complex c1, complex c2) noexcept
{
    return std::abs(b.b2() * c1 * c1 + b.b3() * c2) - b.b1() * std::abs(c1);
}

} // namespace detail

inline double psi_value(const PsiParams &b, const CaratheodoryPoint &pt, Sign sign)
{
    if (!is_valid(pt)) {
        throw std::domain_error("psi_value: point outside the Caratheodory body");
    }
    const double v = detail::psi_plus_raw(b, pt.c1, pt.c2);
    return sign == Sign::plus ? v : -v;
}

// Sharp upper bound of Psi_+; ties at the branch condition take the first branch.
inline LemmaBound psi_plus_bound(const PsiParams &b)
{
    if (std::abs(2.0 * b.b2() + b.b3()) >= std::abs(b.b3()) + b.b1()) {
        return {b.b4() - 2.0 * b.b1(), Branch::plus_1};
    }
    return {2.0 * std::abs(b.b3()), Branch::plus_2};
}

// Sharp upper bound of Psi_- = -Psi_+.
inline LemmaBound psi_minus_bound(const PsiParams &b)
{
    const double b1 = b.b1();
    const double b4 = b.b4();
    const double a3 = std::abs(b.b3());
    const double denom = b4 + 2.0 * a3;  // > 0 unless B2 = B3 = 0
    if (b1 >= denom) {
        return {2.0 * b1 - b4, Branch::minus_1};
    }
    if (b1 * b1 <= 2.0 * a3 * denom) {
        return {2.0 * b1 * std::sqrt(2.0 * a3 / denom), Branch::minus_2};
    }
    return {2.0 * a3 + b1 * b1 / denom, Branch::minus_3};
}

inline LemmaBound psi_bound(const PsiParams &b, Sign sign)
{
    return sign == Sign::plus ? psi_plus_bound(b) : psi_minus_bound(b);
}

// A point of the body (real c1 >= 0) at which the bound is attained.
inline CaratheodoryPoint closed_form_maximizer(const PsiParams &b, Sign sign)
{
    const auto lb = psi_bound(b, sign);
    const double a3 = std::abs(b.b3());
    const double k = (b.b4() + 2.0 * a3) / 4.0;
    // x on the unit circle with B3 s x pointing against w = (B2 + B3/2) r^2.
    auto at = [&](double r) {
        const complex w = (b.b2() + b.b3() / 2.0) * r * r;
        const double s = b.b3() * (2.0 - r * r / 2.0);
        complex x = 1.0;
        if (std::abs(w) > 0.0 && s != 0.0) {
            x = -(w / std::abs(w)) * (s > 0.0 ? 1.0 : -1.0);
        }
        return point_from_fiber(std::min(r, 2.0), x);
    };
    switch (lb.branch) {
    case Branch::plus_1:
    case Branch::minus_1:
        return point_from_fiber(2.0, 1.0);
    case Branch::plus_2:
        return point_from_fiber(0.0, 1.0);
    case Branch::minus_2:
        return at(std::sqrt(2.0 * a3 / k));
    case Branch::minus_3:
        return at(b.b1() / (2.0 * k));
    }
    return point_from_fiber(0.0, 1.0);
}

struct OracleResult {
    double value = 0.0;
    CaratheodoryPoint argmax{};
    GridResolution grid{};
    double coarse_value = 0.0;        // best value on the grid itself
    std::size_t coarse_index = 0;     // its enumeration index
};

// Thread count from SCHLICHT_THREADS (0 or unset: hardware concurrency).
inline unsigned oracle_threads()
{
    unsigned n = 0;
    if (const char *env = std::getenv("SCHLICHT_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            n = static_cast<unsigned>(v);
        }
    }
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    return n;
}

// Maximum over an explicit point list; first index wins ties.
inline OracleResult oracle_max_over(const PsiParams &b, Sign sign,
                                    std::span<const CaratheodoryPoint> points)
{
    if (points.empty()) {
        throw std::invalid_argument("oracle_max_over: empty point set");
    }
    OracleResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double v = psi_value(b, points[i], sign);
        if (v > best.value) {
            best.value = v;
            best.argmax = points[i];
            best.coarse_index = i;
        }
    }
    best.coarse_value = best.value;
    return best;
}

namespace detail {

struct Candidate {
    double value;
    std::size_t index;
};

inline bool better(const Candidate &a, const Candidate &b) noexcept
{
    return a.value > b.value || (a.value == b.value && a.index < b.index);
}

// Best point over r-rows [row_begin, row_end) of the grid.
inline Candidate scan_rows(const PsiParams &b, Sign sign, const Grid &grid,
                           std::span<const complex> x_table, std::size_t row_begin,
                           std::size_t row_end)
{
    const double flip = sign == Sign::plus ? 1.0 : -1.0;
    const complex lead = b.b2() + b.b3() / 2.0;
    const std::size_t row_size = x_table.size();
    Candidate best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const double r = grid.r(i);
        const complex w = lead * (r * r);
        const double s = b.b3() * (2.0 - r * r / 2.0);
        const double lin = b.b1() * r;
        for (std::size_t m = 0; m < row_size; ++m) {
            const double re = w.real() + s * x_table[m].real();
            const double im = w.imag() + s * x_table[m].imag();
            const double v = flip * (std::sqrt(re * re + im * im) - lin);
            if (v > best.value) {
                best = {v, i * row_size + m};
            }
        }
    }
    return best;
}

struct FiberCoords {
    double r;
    double rho;
    double phi;
};

inline CaratheodoryPoint from_coords(const FiberCoords &c)
{
    return point_from_fiber(std::clamp(c.r, 0.0, 2.0), std::polar(std::clamp(c.rho, 0.0, 1.0), c.phi));
}

inline double polish_objective_at(const PsiParams &b, Sign sign, const FiberCoords &c)
{
    return -psi_value(b, from_coords(c), sign);
}

struct PolishContext {
    const PsiParams *params;
    Sign sign;
};

inline double polish_objective(const gsl_vector *v, void *ctx)
{
    const auto *pc = static_cast<const PolishContext *>(ctx);
    const FiberCoords c{gsl_vector_get(v, 0), gsl_vector_get(v, 1), gsl_vector_get(v, 2)};
    return polish_objective_at(*pc->params, pc->sign, c);
}

// Nelder-Mead from `start` in (r, rho, phi) coordinates, clamped to the body.
inline FiberCoords polish(const PsiParams &b, Sign sign, FiberCoords start,
                          std::array<double, 3> step)
{
    gsl_set_error_handler_off();
    PolishContext ctx{&b, sign};
    gsl_multimin_function fn{&polish_objective, 3, &ctx};
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(3), &gsl_vector_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> ss(gsl_vector_alloc(3), &gsl_vector_free);
    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3),
        &gsl_multimin_fminimizer_free);

    FiberCoords best = start;
    double best_value = -polish_objective_at(b, sign, best);
    for (int restart = 0; restart < 6; ++restart) {
        gsl_vector_set(x.get(), 0, best.r);
        gsl_vector_set(x.get(), 1, best.rho);
        gsl_vector_set(x.get(), 2, best.phi);
        for (std::size_t d = 0; d < 3; ++d) {
            gsl_vector_set(ss.get(), d, step[d]);
        }
        gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get());
        for (int iter = 0; iter < 20000; ++iter) {
            if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) {
                break;
            }
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), 1e-13) == GSL_SUCCESS) {
                break;
            }
        }
        const gsl_vector *m = gsl_multimin_fminimizer_x(s.get());
        const FiberCoords found{gsl_vector_get(m, 0), gsl_vector_get(m, 1), gsl_vector_get(m, 2)};
        const double v = -polish_objective_at(b, sign, found);
        if (!(v > best_value)) {
            break;
        }
        best = found;
        best_value = v;
    }
    return best;
}

} // namespace detail

// Brute-force maximum of psi_value over grid(res), followed by local
// refinement around the grid argmax: a sub-grid with 10x finer spacing over
// the neighbouring cells, then a Nelder-Mead polish in (r, rho, phi). Every
// candidate is a body point, so the result never exceeds the true maximum.
// Rows of the grid are scanned in parallel; the reduction compares values and
// breaks ties by enumeration index, so the result is schedule-independent.
inline OracleResult oracle_max(const PsiParams &b, Sign sign, GridResolution res = {},
                               unsigned threads = oracle_threads())
{
    const Grid grid(res);
    std::vector<complex> x_table;
    x_table.reserve(res.n_rho * res.n_phi);
    for (std::size_t j = 0; j < res.n_rho; ++j) {
        for (std::size_t k = 0; k < res.n_phi; ++k) {
            x_table.push_back(std::polar(grid.rho(j), grid.phi(k)));
        }
    }

    const std::size_t workers = std::clamp<std::size_t>(threads, 1, res.n_r);
    std::vector<detail::Candidate> partial(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = res.n_r * w / workers;
            const std::size_t end = res.n_r * (w + 1) / workers;
            auto job = [&, w, begin, end] {
                partial[w] = detail::scan_rows(b, sign, grid, x_table, begin, end);
            };
            if (w + 1 == workers) {
                job();
            } else {
                pool.emplace_back(job);
            }
        }
    }
    detail::Candidate coarse = partial.front();
    for (const auto &c : partial) {
        if (detail::better(c, coarse)) {
            coarse = c;
        }
    }

    OracleResult out;
    out.grid = res;
    out.coarse_index = coarse.index;
    const auto k = coarse.index % res.n_phi;
    const auto j = (coarse.index / res.n_phi) % res.n_rho;
    const auto i = coarse.index / (res.n_phi * res.n_rho);
    detail::FiberCoords best{grid.r(i), grid.rho(j), grid.phi(k)};
    out.coarse_value = psi_value(b, detail::from_coords(best), sign);
    double best_value = out.coarse_value;

    const std::array<double, 3> cell{grid.r(1), grid.rho(1), grid.phi(1)};
    constexpr int sub = 10;
    const detail::FiberCoords centre = best;
    for (int di = -sub; di <= sub; ++di) {
        for (int dj = -sub; dj <= sub; ++dj) {
            for (int dk = -sub; dk <= sub; ++dk) {
                const detail::FiberCoords c{centre.r + di * cell[0] / sub,
                                            centre.rho + dj * cell[1] / sub,
                                            centre.phi + dk * cell[2] / sub};
                const double v = psi_value(b, detail::from_coords(c), sign);
                if (v > best_value) {
                    best_value = v;
                    best = c;
                }
            }
        }
    }

    const auto polished = detail::polish(b, sign, best, cell);
    const double pv = psi_value(b, detail::from_coords(polished), sign);
    if (pv > best_value) {
        best_value = pv;
        best = polished;
    }
    out.value = best_value;
    out.argmax = detail::from_coords(best);
    return out;
}

} // namespace schlicht

#endif
