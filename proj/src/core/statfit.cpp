#include "core/statfit.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace socio {

const char* fit_model_name(FitModel m) {
    switch (m) {
        case FitModel::PowerLaw: return "power_law";
        case FitModel::Exponential: return "exponential";
        case FitModel::PowerLawStretched: return "power_law_stretched";
    }
    return "power_law";
}

namespace {

// OLS of w on u. Fills slope/intercept/r2; returns false when the target w
// has zero variance (the flat convention applies).
bool ols(const std::vector<double>& u, const std::vector<double>& w,
         double& slope, double& intercept, double& r2) {
    const std::size_t n = u.size();
    double mu = 0.0, mw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mu += u[i];
        mw += w[i];
    }
    mu /= static_cast<double>(n);
    mw /= static_cast<double>(n);

    double suu = 0.0, suw = 0.0, sww = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double du = u[i] - mu, dw = w[i] - mw;
        suu += du * du;
        suw += du * dw;
        sww += dw * dw;
    }
    if (suu == 0.0) throw singular_fit_error("fit is singular: abscissa has zero variance");
    if (sww == 0.0) {
        slope = 0.0;
        intercept = mw;
        r2 = 1.0;
        return false;
    }
    slope = suw / suu;
    intercept = mw - slope * mu;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = w[i] - (intercept + slope * u[i]);
        ss_res += resid * resid;
    }
    r2 = 1.0 - ss_res / sww;
    return true;
}

enum class Abscissa { LogX, X, XLogX };

FitResult log_target_fit(const std::vector<FitPoint>& points, FitModel model, Abscissa form,
                         bool require_positive_x, bool negate_slope) {
    if (points.size() < 3) throw contract_error("fit requires at least 3 points");
    std::vector<double> u(points.size()), w(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.y <= 0.0) throw contract_error("fit requires strictly positive y values");
        if (require_positive_x && p.x <= 0.0)
            throw contract_error("fit requires strictly positive x values");
        switch (form) {
            case Abscissa::LogX: u[i] = std::log(p.x); break;
            case Abscissa::X: u[i] = p.x; break;
            case Abscissa::XLogX: u[i] = p.x * std::log(p.x); break;
        }
        w[i] = std::log(p.y);
    }

    FitResult r;
    r.model = model;
    r.n_points = points.size();
    r.log_space = true;
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
    r.flat = !ols(u, w, slope, intercept, r2);
    r.param_a_or_k = std::exp(intercept);
    r.param_beta_or_alpha = negate_slope ? -slope : slope;
    r.r_squared = r2;
    return r;
}

} // namespace

FitResult fit_power_law(const std::vector<FitPoint>& points) {
    return log_target_fit(points, FitModel::PowerLaw, Abscissa::LogX, true, true);
}

FitResult fit_exponential(const std::vector<FitPoint>& points) {
    return log_target_fit(points, FitModel::Exponential, Abscissa::X, false, false);
}

FitResult fit_power_law_stretched(const std::vector<FitPoint>& points) {
    return log_target_fit(points, FitModel::PowerLawStretched, Abscissa::XLogX, true, true);
}

double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted) {
    if (observed.size() != predicted.size())
        throw contract_error("r_squared requires equal-length sequences");
    if (observed.size() < 2) throw contract_error("r_squared requires at least 2 values");

    double mean = 0.0;
    for (double v : observed) mean += v;
    mean /= static_cast<double>(observed.size());

    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
        ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    }
    if (ss_tot == 0.0) throw undefined_metric_error("r_squared undefined: observed values have zero variance");
    return 1.0 - ss_res / ss_tot;
}

} // namespace socio
