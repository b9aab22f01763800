#include "gdpcast/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gdpcast {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const std::vector<double>& steps,
                             const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    if (steps.size() != dim) throw std::invalid_argument("nelder_mead: steps size mismatch");

    NelderMeadResult result;
    if (dim == 0) {
        result.value = objective(start);
        result.x = std::move(start);
        result.converged = true;
        return result;
    }

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += steps[i];
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim);
    auto point = [&](double t, const std::vector<double>& worst) {
        std::vector<double> p(dim);
        for (std::size_t j = 0; j < dim; ++j) p[j] = centroid[j] + t * (worst[j] - centroid[j]);
        return p;
    };

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // stable: equal values keep vertex order, so the run is reproducible
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        const auto& best = simplex[order.front()];
        double diameter = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            diameter = std::max(diameter, distance(simplex[order[i]], best));
        }
        if (diameter < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[order[i]][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        const std::size_t worst = order[dim];
        const double f_best = values[order.front()];
        const double f_second_worst = values[order[dim - 1]];
        const double f_worst = values[worst];

        auto reflected = point(-1.0, simplex[worst]);
        const double f_reflected = objective(reflected);

        if (f_reflected < f_best) {
            auto expanded = point(-2.0, simplex[worst]);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                values[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < f_second_worst) {
            simplex[worst] = std::move(reflected);
            values[worst] = f_reflected;
            continue;
        }

        // contraction: outside if the reflection improved on the worst vertex
        const bool outside = f_reflected < f_worst;
        auto contracted = point(outside ? -0.5 : 0.5, simplex[worst]);
        const double f_contracted = objective(contracted);
        if (f_contracted < (outside ? f_reflected : f_worst)) {
            simplex[worst] = std::move(contracted);
            values[worst] = f_contracted;
            continue;
        }

        // shrink toward the best vertex
        const std::size_t b = order.front();
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == b) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[b][j] + 0.5 * (simplex[i][j] - simplex[b][j]);
            }
            values[i] = objective(simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best_index = static_cast<std::size_t>(best_it - values.begin());
    result.x = simplex[best_index];
    result.value = *best_it;
    result.iterations = iter;
    return result;
}

}  // namespace gdpcast
