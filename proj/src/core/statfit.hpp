#pragma once

#include <cstddef>
#include <vector>

namespace socio {

enum class FitModel : int { PowerLaw = 0, Exponential = 1, PowerLawStretched = 2 };

const char* fit_model_name(FitModel m);

struct FitPoint {
    double x = 0.0;
    double y = 0.0;
};

// Least-squares fit summary. `flat` marks the zero-variance-target
// convention: slope 0, scale = geometric mean of y, r_squared 1.
struct FitResult {
    FitModel model = FitModel::PowerLaw;
    double param_a_or_k = 0.0;      // a (power laws) or k (exponential)
    double param_beta_or_alpha = 0.0;
    double r_squared = 0.0;         // in the space the fit ran in
    std::size_t n_points = 0;
    bool log_space = true;
    bool flat = false;
};

// y = a * x^(-beta), fitted as OLS on (ln x, ln y).
// contract_error: fewer than 3 points or any nonpositive coordinate.
// singular_fit_error: all x equal.
FitResult fit_power_law(const std::vector<FitPoint>& points);

// y = k * e^(alpha x), fitted as OLS on (x, ln y).
// contract_error: fewer than 3 points or any nonpositive y.
// singular_fit_error: all x equal.
FitResult fit_exponential(const std::vector<FitPoint>& points);

// y = a * x^(-beta x), fitted as OLS on (x ln x, ln y). Same preconditions
// as fit_power_law.
FitResult fit_power_law_stretched(const std::vector<FitPoint>& points);

// 1 - SS_res/SS_tot. contract_error on length mismatch or fewer than 2
// values; undefined_metric_error when observed has zero variance.
double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted);

} // namespace socio
