#include "gdpcast/sarima.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "gdpcast/error.hpp"
#include "gdpcast/format.hpp"
#include "gdpcast/nelder_mead.hpp"

namespace gdpcast::sarima {

namespace {

constexpr double kInfeasiblePenalty = 1e12;
constexpr double kInitialCoefficient = 0.1;

// (1 - sum a_i B^i)(1 - sum b_j B^{s j}) as a sparse map of the subtracted terms.
LagMap multiply_factors(const std::vector<double>& regular, const std::vector<double>& seasonal,
                        int s) {
    // Work with full signed polynomial coefficients c_k where poly = sum c_k B^k.
    std::map<int, double> left{{0, 1.0}};
    for (std::size_t i = 0; i < regular.size(); ++i) left[static_cast<int>(i) + 1] = -regular[i];
    std::map<int, double> right{{0, 1.0}};
    for (std::size_t j = 0; j < seasonal.size(); ++j) {
        right[s * (static_cast<int>(j) + 1)] = -seasonal[j];
    }
    std::map<int, double> product;
    for (const auto& [li, lc] : left) {
        for (const auto& [ri, rc] : right) product[li + ri] += lc * rc;
    }
    LagMap out;
    for (const auto& [lag, c] : product) {
        if (lag == 0) continue;
        out[lag] = -c;
    }
    return out;
}

std::vector<double> dense(const LagMap& map, int max_lag) {
    std::vector<double> out(static_cast<std::size_t>(max_lag), 0.0);
    for (const auto& [lag, c] : map) out[static_cast<std::size_t>(lag) - 1] = c;
    return out;
}

void check_dimensions(const SarimaOrder& order, const SarimaParams& params) {
    auto mismatch = [](const char* name, std::size_t got, int want) {
        return std::invalid_argument(std::string("SARIMA params: ") + name + " has " +
                                     std::to_string(got) + " coefficients, order needs " +
                                     std::to_string(want));
    };
    if (params.phi.size() != static_cast<std::size_t>(order.p)) throw mismatch("phi", params.phi.size(), order.p);
    if (params.theta.size() != static_cast<std::size_t>(order.q)) throw mismatch("theta", params.theta.size(), order.q);
    if (params.seasonal_phi.size() != static_cast<std::size_t>(order.P)) {
        throw mismatch("seasonal_phi", params.seasonal_phi.size(), order.P);
    }
    if (params.seasonal_theta.size() != static_cast<std::size_t>(order.Q)) {
        throw mismatch("seasonal_theta", params.seasonal_theta.size(), order.Q);
    }
}

struct DenseModel {
    std::vector<double> ar;
    std::vector<double> ma;
    double mu = 0.0;
};

DenseModel dense_model(const SarimaOrder& order, const SarimaParams& params) {
    const auto polys = expand_polynomials(order, params);
    return DenseModel{dense(polys.ar, order.max_ar_lag()), dense(polys.ma, order.max_ma_lag()),
                      params.mu.value_or(0.0)};
}

SarimaParams unpack(const SarimaOrder& order, const std::vector<double>& x) {
    SarimaParams params;
    auto it = x.begin();
    auto take = [&it](int n) {
        std::vector<double> v(it, it + n);
        it += n;
        return v;
    };
    params.phi = take(order.p);
    params.theta = take(order.q);
    params.seasonal_phi = take(order.P);
    params.seasonal_theta = take(order.Q);
    if (order.has_mean()) params.mu = *it;
    return params;
}

}  // namespace

void SarimaOrder::validate() const {
    if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0) {
        throw std::invalid_argument("SARIMA orders must be >= 0: " + to_string());
    }
    if (s < 1) throw std::invalid_argument("SARIMA season length must be >= 1");
}

std::string SarimaOrder::to_string() const {
    std::ostringstream out;
    out << '(' << p << ',' << d << ',' << q << ")(" << P << ',' << D << ',' << Q << ")_" << s;
    return out.str();
}

ExpandedPolynomials expand_polynomials(const SarimaOrder& order, const SarimaParams& params) {
    order.validate();
    check_dimensions(order, params);
    return ExpandedPolynomials{multiply_factors(params.phi, params.seasonal_phi, order.s),
                               multiply_factors(params.theta, params.seasonal_theta, order.s)};
}

bool roots_outside(std::span<const double> coefficients, double radius) {
    std::vector<double> a(coefficients.begin(), coefficients.end());
    double scale = 1.0;
    for (double& c : a) {
        scale *= radius;
        c *= scale;
    }
    for (std::size_t m = a.size(); m >= 1; --m) {
        const double k = a[m - 1];
        if (!std::isfinite(k) || std::abs(k) >= 1.0) return false;
        const double denom = 1.0 - k * k;
        std::vector<double> next(m - 1);
        for (std::size_t j = 1; j < m; ++j) next[j - 1] = (a[j - 1] + k * a[m - j - 1]) / denom;
        a = std::move(next);
    }
    return true;
}

bool is_feasible(const SarimaOrder& order, const SarimaParams& params) {
    const auto model = dense_model(order, params);
    return roots_outside(model.ar) && roots_outside(model.ma);
}

CssEvaluation css_objective(std::span<const double> w, const SarimaOrder& order,
                            const SarimaParams& params, std::size_t burn_in) {
    const auto model = dense_model(order, params);
    if (!roots_outside(model.ar)) {
        throw InfeasibleParameters("non-stationary AR polynomial for " + order.to_string());
    }
    if (!roots_outside(model.ma)) {
        throw InfeasibleParameters("non-invertible MA polynomial for " + order.to_string());
    }
    const std::size_t burn = std::max(static_cast<std::size_t>(order.max_ar_lag()), burn_in);
    if (w.size() <= burn) {
        throw std::invalid_argument("css_objective: series of length " + std::to_string(w.size()) +
                                    " not longer than AR lag " + std::to_string(burn));
    }

    CssEvaluation out;
    out.residuals.assign(w.size(), 0.0);
    double sse = 0.0;
    for (std::size_t t = burn; t < w.size(); ++t) {
        double e = w[t] - model.mu;
        for (std::size_t j = 1; j <= model.ar.size(); ++j) e -= model.ar[j - 1] * (w[t - j] - model.mu);
        for (std::size_t j = 1; j <= model.ma.size() && j <= t; ++j) {
            e += model.ma[j - 1] * out.residuals[t - j];
        }
        out.residuals[t] = e;
        sse += e * e;
    }
    out.n_effective = w.size() - burn;
    const double n = static_cast<double>(out.n_effective);
    // A perfect fit would give sigma2 = 0; keep the likelihood finite.
    out.sigma2 = std::max(sse / n, std::numeric_limits<double>::min());
    out.loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * out.sigma2) + 1.0);
    return out;
}

double aic_of(const SarimaOrder& order, double loglik) noexcept {
    return 2.0 * order.parameter_count() - 2.0 * loglik;
}

SarimaFit fit(std::span<const double> series, const SarimaOrder& order,
              const FitOptions& options) {
    order.validate();
    const std::size_t lost = static_cast<std::size_t>(order.d + order.D * order.s);
    const std::size_t burn_natural = static_cast<std::size_t>(order.max_ar_lag());
    const std::size_t needed = lost + burn_natural + 10;
    if (series.size() <= needed) {
        throw std::invalid_argument("SARIMA " + order.to_string() + " needs more than " +
                                    std::to_string(needed) + " observations, got " +
                                    std::to_string(series.size()));
    }
    std::size_t burn = burn_natural;
    if (options.score_from) {
        if (*options.score_from < lost + burn_natural) {
            throw std::invalid_argument("SARIMA " + order.to_string() +
                                        ": scoring cannot start before observation " +
                                        std::to_string(lost + burn_natural));
        }
        burn = *options.score_from - lost;
        if (series.size() <= *options.score_from + 10) {
            throw std::invalid_argument("SARIMA " + order.to_string() +
                                        ": too few observations after the common burn-in");
        }
    }
    const auto w = difference(series, order.d, order.D, order.s);

    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    double var = 0.0;
    for (double v : w) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(w.size()));

    const int n_coef = order.p + order.q + order.P + order.Q;
    std::vector<double> start(static_cast<std::size_t>(n_coef), kInitialCoefficient);
    std::vector<double> steps(static_cast<std::size_t>(n_coef), kInitialCoefficient);
    if (order.has_mean()) {
        start.push_back(mean);
        steps.push_back(sd > 0.0 ? 0.1 * sd : 0.1 * std::max(std::abs(mean), 1.0));
    }

    auto objective = [&](const std::vector<double>& x) {
        const auto params = unpack(order, x);
        if (!is_feasible(order, params)) return kInfeasiblePenalty;
        const double loglik = css_objective(w, order, params, burn).loglik;
        return std::isfinite(loglik) ? -loglik : kInfeasiblePenalty;
    };
    const auto opt = nelder_mead(objective, start, steps);
    if (!(opt.value < kInfeasiblePenalty)) {
        throw std::runtime_error("SARIMA " + order.to_string() + ": no feasible parameters found");
    }

    SarimaFit out;
    out.order = order;
    out.params = unpack(order, opt.x);
    const auto eval = css_objective(w, order, out.params, burn);
    out.params.sigma2 = eval.sigma2;
    out.loglik = eval.loglik;
    out.aic = aic_of(order, eval.loglik);
    out.n_effective = eval.n_effective;
    out.converged = opt.converged;
    out.iterations = opt.iterations;
    return out;
}

std::vector<double> forecast(const SarimaFit& fit, std::span<const double> history, int h) {
    if (h < 1) throw std::invalid_argument("forecast horizon must be >= 1");
    const auto& order = fit.order;
    const auto w = difference(history, order.d, order.D, order.s);
    const auto model = dense_model(order, fit.params);

    std::vector<double> residuals(w.size(), 0.0);
    if (w.size() > static_cast<std::size_t>(order.max_ar_lag())) {
        residuals = css_objective(w, order, fit.params).residuals;
    }

    std::vector<double> ext_w(w.begin(), w.end());
    std::vector<double> ext_e = residuals;
    std::vector<double> diffs;
    diffs.reserve(static_cast<std::size_t>(h));
    for (int step = 0; step < h; ++step) {
        const std::size_t t = ext_w.size();
        double value = model.mu;
        for (std::size_t j = 1; j <= model.ar.size(); ++j) {
            if (j > t) break;
            value += model.ar[j - 1] * (ext_w[t - j] - model.mu);
        }
        for (std::size_t j = 1; j <= model.ma.size(); ++j) {
            if (j > t) break;
            value -= model.ma[j - 1] * ext_e[t - j];
        }
        ext_w.push_back(value);
        ext_e.push_back(0.0);
        diffs.push_back(value);
    }
    return integrate_forecasts(history, diffs, order.d, order.D, order.s);
}

std::vector<SarimaOrder> OrderRanges::candidates() const {
    std::vector<SarimaOrder> out;
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    for (int p_ : sorted(p))
        for (int d_ : sorted(d))
            for (int q_ : sorted(q))
                for (int P_ : sorted(P))
                    for (int D_ : sorted(D))
                        for (int Q_ : sorted(Q)) out.push_back(SarimaOrder{p_, d_, q_, P_, D_, Q_, s});
    return out;
}

AicSearchResult aic_search(std::span<const double> series, const OrderRanges& ranges, int workers) {
    const auto candidates = ranges.candidates();
    if (candidates.empty()) throw std::invalid_argument("aic_search: empty order ranges");

    std::size_t score_from = 0;
    for (const auto& c : candidates) {
        score_from = std::max(score_from, static_cast<std::size_t>(c.d + c.D * c.s + c.max_ar_lag()));
    }
    const FitOptions options{score_from};

    std::vector<SearchEntry> table(candidates.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++) {
            table[i].order = candidates[i];
            try {
                table[i].fit = fit(series, candidates[i], options);
            } catch (const std::exception& e) {
                table[i].error = e.what();
            }
        }
    };
    const int n_threads = std::clamp(workers, 1, static_cast<int>(candidates.size()));
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }

    const SearchEntry* best = nullptr;
    for (const auto& entry : table) {
        if (!entry.fit) continue;
        if (best == nullptr) {
            best = &entry;
            continue;
        }
        const auto& a = *entry.fit;
        const auto& b = *best->fit;
        const int ka = a.order.parameter_count();
        const int kb = b.order.parameter_count();
        if (a.aic < b.aic || (a.aic == b.aic && (ka < kb || (ka == kb && a.order < b.order)))) {
            best = &entry;
        }
    }
    if (best == nullptr) throw std::runtime_error("aic_search: every candidate failed");
    return AicSearchResult{*best->fit, std::move(table)};
}

void write_search_table_csv(std::ostream& out, const std::vector<SearchEntry>& table) {
    out << "p,d,q,P,D,Q,s,k,loglik,aic,converged\n";
    for (const auto& entry : table) {
        if (!entry.fit) continue;
        const auto& o = entry.order;
        out << o.p << ',' << o.d << ',' << o.q << ',' << o.P << ',' << o.D << ',' << o.Q << ','
            << o.s << ',' << o.parameter_count() << ',' << format_double(entry.fit->loglik) << ','
            << format_double(entry.fit->aic) << ',' << (entry.fit->converged ? "true" : "false")
            << '\n';
    }
}

void to_json(nlohmann::json& j, const SarimaOrder& o) {
    j = nlohmann::json{{"p", o.p}, {"d", o.d}, {"q", o.q}, {"P", o.P},
                       {"D", o.D}, {"Q", o.Q}, {"s", o.s}};
}

void to_json(nlohmann::json& j, const SarimaFit& f) {
    j = nlohmann::json{{"order", f.order},
                       {"phi", f.params.phi},
                       {"theta", f.params.theta},
                       {"seasonal_phi", f.params.seasonal_phi},
                       {"seasonal_theta", f.params.seasonal_theta},
                       {"mu", f.params.mu ? nlohmann::json(*f.params.mu) : nlohmann::json(nullptr)},
                       {"sigma2", f.params.sigma2},
                       {"k", f.order.parameter_count()},
                       {"loglik", f.loglik},
                       {"aic", f.aic},
                       {"n_effective", f.n_effective},
                       {"converged", f.converged},
                       {"iterations", f.iterations}};
}

}  // namespace gdpcast::sarima
