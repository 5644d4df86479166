#include "svlab/optimize.hpp"

#include "svlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace svlab {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    if (dim == 0) throw Error(ErrorCode::InvalidParams, "nelder_mead needs at least one parameter");

    NelderMeadResult result;
    auto eval = [&](const std::vector<double>& x) {
        ++result.n_evals;
        const double v = objective(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    const double f0 = objective(start);
    ++result.n_evals;
    if (!std::isfinite(f0)) throw Error(ErrorCode::DomainError, "objective is not finite at the start point");

    std::vector<std::vector<double>> simplex(dim + 1, start);
    std::vector<double> values(dim + 1, f0);
    for (std::size_t i = 0; i < dim; ++i) {
        auto& vertex = simplex[i + 1];
        vertex[i] = vertex[i] != 0.0 ? vertex[i] * (1.0 + options.initial_step) : 0.00025;
        values[i + 1] = eval(vertex);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim);
    auto along = [&](double t, const std::vector<double>& worst) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d) p[d] = centroid[d] + t * (worst[d] - centroid[d]);
        return p;
    };

    while (result.n_evals < options.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double x_spread = 0.0;
        double x_scale = 0.0;
        for (std::size_t d = 0; d < dim; ++d) x_scale = std::max(x_scale, std::abs(simplex[best][d]));
        for (const auto& vertex : simplex) {
            for (std::size_t d = 0; d < dim; ++d) {
                x_spread = std::max(x_spread, std::abs(vertex[d] - simplex[best][d]));
            }
        }
        const double f_spread = values[worst] - values[best];
        if (x_spread <= options.tolerance * (1.0 + x_scale) &&
            f_spread <= options.tolerance * (1.0 + std::abs(values[best]))) {
            result.converged = true;
            break;
        }
        ++result.n_iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        const auto reflected = along(-1.0, simplex[worst]);
        const double f_reflected = eval(reflected);
        if (f_reflected < values[best]) {
            const auto expanded = along(-2.0, simplex[worst]);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        if (f_reflected < values[worst]) {
            const auto outside = along(-0.5, simplex[worst]);
            const double f_outside = eval(outside);
            if (f_outside <= f_reflected) {
                simplex[worst] = outside;
                values[worst] = f_outside;
                continue;
            }
        } else {
            const auto inside = along(0.5, simplex[worst]);
            const double f_inside = eval(inside);
            if (f_inside < values[worst]) {
                simplex[worst] = inside;
                values[worst] = f_inside;
                continue;
            }
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < dim; ++d) {
                simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.argmin = simplex[best];
    result.value = values[best];
    return result;
}

} // namespace svlab
