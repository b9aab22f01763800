#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gdpcast/series.hpp"

namespace gdpcast::sarima {

/// (p,d,q)(P,D,Q)_s. Upper-case fields are the seasonal orders.
struct SarimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
    int P = 0;
    int D = 0;
    int Q = 0;
    int s = 4;

    void validate() const;
    [[nodiscard]] int max_ar_lag() const noexcept { return p + s * P; }
    [[nodiscard]] int max_ma_lag() const noexcept { return q + s * Q; }
    /// Mean term only for undifferenced models.
    [[nodiscard]] bool has_mean() const noexcept { return d + D == 0; }
    /// Coefficients plus optional mean plus the innovation variance.
    [[nodiscard]] int parameter_count() const noexcept {
        return p + q + P + Q + (has_mean() ? 1 : 0) + 1;
    }
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const SarimaOrder&, const SarimaOrder&) = default;
};

/// Box-Jenkins sign convention:
///   phi(B) Phi(B^s) (w_t - mu) = theta(B) Theta(B^s) e_t
/// with phi(B) = 1 - phi_1 B - ..., theta(B) = 1 - theta_1 B - ....
struct SarimaParams {
    std::vector<double> phi;
    std::vector<double> theta;
    std::vector<double> seasonal_phi;
    std::vector<double> seasonal_theta;
    std::optional<double> mu;
    double sigma2 = 1.0;
};

/// Sparse coefficients a_j of an expanded lag polynomial 1 - sum_j a_j B^j.
using LagMap = std::map<int, double>;

struct ExpandedPolynomials {
    LagMap ar;
    LagMap ma;
};

ExpandedPolynomials expand_polynomials(const SarimaOrder& order, const SarimaParams& params);

/// True when every root of 1 - sum_j a_j z^j (a dense, a[0] is lag 1) has
/// modulus greater than `radius`. Uses the Schur-Cohn step-down recursion.
bool roots_outside(std::span<const double> coefficients, double radius = 1.0 + 1e-6);

/// Stationary AR part and invertible MA part.
bool is_feasible(const SarimaOrder& order, const SarimaParams& params);

struct CssEvaluation {
    std::vector<double> residuals;  // same length as the input; burn-in entries are 0
    double sigma2 = 0.0;
    double loglik = 0.0;
    std::size_t n_effective = 0;
};

/// Conditional sum of squares on an already differenced series. The first
/// max(max_ar_lag(), burn_in) observations are conditioned on and not scored.
/// Throws InfeasibleParameters for non-stationary or non-invertible
/// coefficients.
CssEvaluation css_objective(std::span<const double> differenced, const SarimaOrder& order,
                            const SarimaParams& params, std::size_t burn_in = 0);

struct SarimaFit {
    SarimaOrder order;
    SarimaParams params;
    double loglik = 0.0;
    double aic = 0.0;
    std::size_t n_effective = 0;
    bool converged = false;
    int iterations = 0;
};

/// 2k - 2 loglik with k = order.parameter_count().
double aic_of(const SarimaOrder& order, double loglik) noexcept;

struct FitOptions {
    /// Index (on the original series) of the first scored observation. By
    /// default scoring starts right after the AR burn-in. Fits that share
    /// this value score the same observations and have comparable AICs.
    std::optional<std::size_t> score_from;
};

/// Maximizes the CSS log-likelihood with Nelder-Mead. Deterministic.
SarimaFit fit(std::span<const double> series, const SarimaOrder& order,
              const FitOptions& options = {});
inline SarimaFit fit(const TimeSeries& series, const SarimaOrder& order,
                     const FitOptions& options = {}) {
    return fit(series.values(), order, options);
}

/// Point forecasts on the original scale for the `h` periods after `history`,
/// which must be the series the fit was estimated on.
std::vector<double> forecast(const SarimaFit& fit, std::span<const double> history, int h);

/// Candidate values per order component. Defaults to p,d,q in {0,1,2} and
/// P,D,Q in {0,1} with s = 4 (216 candidates).
struct OrderRanges {
    std::vector<int> p{0, 1, 2};
    std::vector<int> d{0, 1, 2};
    std::vector<int> q{0, 1, 2};
    std::vector<int> P{0, 1};
    std::vector<int> D{0, 1};
    std::vector<int> Q{0, 1};
    int s = 4;

    [[nodiscard]] std::vector<SarimaOrder> candidates() const;
};

struct SearchEntry {
    SarimaOrder order;
    std::optional<SarimaFit> fit;
    std::string error;  // why the candidate was skipped
};

struct AicSearchResult {
    SarimaFit best;
    std::vector<SearchEntry> table;  // candidate order, including failures
};

/// Fits every candidate and keeps the minimum AIC. All candidates are scored
/// from the same original-scale observation (the largest d + D*s + p + s*P in
/// the ranges) so their likelihoods are comparable. Ties go to fewer
/// parameters, then to the lexicographically smaller (p,d,q,P,D,Q). `workers`
/// > 1 fits candidates concurrently; the result does not depend on it.
AicSearchResult aic_search(std::span<const double> series, const OrderRanges& ranges = {},
                           int workers = 1);
inline AicSearchResult aic_search(const TimeSeries& series, const OrderRanges& ranges = {},
                                  int workers = 1) {
    return aic_search(series.values(), ranges, workers);
}

/// Columns p,d,q,P,D,Q,s,k,loglik,aic,converged. Failed candidates are omitted.
void write_search_table_csv(std::ostream& out, const std::vector<SearchEntry>& table);

void to_json(nlohmann::json& j, const SarimaOrder& order);
void to_json(nlohmann::json& j, const SarimaFit& fit);

}  // namespace gdpcast::sarima
