#include "matchstudy/models/market_model.h"

#include <algorithm>
#include <cmath>

#include "matchstudy/common/errors.h"

namespace matchstudy::models {

namespace {

// Index of `ts` in the series, or npos. Timestamps are strictly increasing.
std::size_t locate(const SeriesView& view, Instant ts) {
    const auto& stamps = *view.timestamps;
    const auto it = std::lower_bound(stamps.begin(), stamps.end(), ts);
    if (it == stamps.end() || *it != ts) {
        return static_cast<std::size_t>(-1);
    }
    return static_cast<std::size_t>(it - stamps.begin());
}

struct WindowSample {
    std::vector<double> dependent;
    std::vector<double> reference;  // empty for constant_mean
};

WindowSample collect_window(const SeriesView& dependent, const SeriesView* reference,
                            const EstimationWindow& window, Instant anchor,
                            bool need_reference) {
    WindowSample sample;
    const std::int64_t total = window.length();
    std::int64_t observed_count = 0;

    for (std::int64_t k = window.start_offset; k <= window.end_offset; ++k) {
        const Instant ts = add_bars(anchor, k, dependent.frequency);
        const std::size_t i = locate(dependent, ts);
        if (i == static_cast<std::size_t>(-1)) {
            continue;
        }
        const bool obs = dependent.observed->empty() || (*dependent.observed)[i] != 0;
        if (obs) {
            ++observed_count;
        }
        if (window.drop_gap_filled && !obs) {
            continue;
        }
        if (need_reference) {
            const std::size_t j = locate(*reference, ts);
            if (j == static_cast<std::size_t>(-1)) {
                throw InsufficientCoverage(
                    "reference series missing timestamp " + format_iso8601_utc(ts) +
                    " required for market-model estimation");
            }
            sample.reference.push_back((*reference->values)[j]);
        }
        sample.dependent.push_back((*dependent.values)[i]);
    }

    const double coverage = static_cast<double>(observed_count) / static_cast<double>(total);
    if (coverage < window.min_coverage) {
        throw InsufficientCoverage(
            "estimation coverage " + std::to_string(coverage) + " below minimum " +
            std::to_string(window.min_coverage));
    }
    return sample;
}

}  // namespace

ModelFit fit_model(const SeriesView& dependent, const SeriesView* reference,
                   const EstimationWindow& window, Instant anchor, const ModelKind& kind) {
    if (window.start_offset >= window.end_offset || window.end_offset >= 0) {
        throw ConfigError("estimation window offsets must satisfy start < end < 0");
    }
    const bool market = kind.is_market_model();
    if (market && reference == nullptr) {
        throw ConfigError("market_model fit requires a reference series");
    }

    const WindowSample sample = collect_window(dependent, reference, window, anchor, market);
    const std::size_t n = sample.dependent.size();
    const std::size_t min_n = market ? 3 : 2;
    if (n < min_n) {
        throw InsufficientCoverage("estimation window resolved to " + std::to_string(n) +
                                   " observations, need at least " + std::to_string(min_n));
    }

    ModelFit fit;
    fit.kind = kind;
    fit.n_obs = n;
    const double nd = static_cast<double>(n);

    double mean_y = 0.0;
    for (double v : sample.dependent) {
        mean_y += v;
    }
    mean_y /= nd;

    if (!market) {
        fit.alpha = mean_y;
        fit.beta = 0.0;
        double ssr = 0.0;
        for (double v : sample.dependent) {
            ssr += (v - mean_y) * (v - mean_y);
        }
        fit.residual_stddev = std::sqrt(ssr / (nd - 1.0));
        return fit;
    }

    double mean_x = 0.0;
    for (double v : sample.reference) {
        mean_x += v;
    }
    mean_x /= nd;

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = sample.reference[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (sample.dependent[i] - mean_y);
    }
    if (sxx == 0.0) {
        throw DegenerateRegressor("reference series has zero variance over the "
                                  "estimation window");
    }

    fit.beta = sxy / sxx;
    fit.alpha = mean_y - fit.beta * mean_x;
    fit.reference_mean = mean_x;
    fit.reference_ss = sxx;

    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = sample.dependent[i] - fit.alpha - fit.beta * sample.reference[i];
        ssr += resid * resid;
    }
    fit.residual_stddev = std::sqrt(std::max(0.0, ssr) / (nd - 2.0));
    return fit;
}

namespace {

double fitted_value(const ModelFit& fit, const SeriesView* reference, Instant ts) {
    if (!fit.kind.is_market_model()) {
        return fit.alpha;
    }
    const std::size_t j = locate(*reference, ts);
    if (j == static_cast<std::size_t>(-1)) {
        throw SpanNotCovered("reference series missing timestamp " + format_iso8601_utc(ts));
    }
    return fit.alpha + fit.beta * (*reference->values)[j];
}

}  // namespace

AbnormalSeries abnormal_series(const std::string& event_id, Instant span_start,
                               Instant span_end, const SeriesView& dependent_returns,
                               const SeriesView* reference_returns,
                               const SeriesView& dependent_volume,
                               const SeriesView* reference_volume,
                               const ModelFit& fit_return, const ModelFit& fit_volume) {
    if (span_start >= span_end) {
        throw ConfigError("abnormal_series: empty span");
    }
    const Frequency freq = dependent_returns.frequency;
    const std::int64_t step = frequency_seconds(freq);
    if ((unix_seconds(span_end) - unix_seconds(span_start)) % step != 0) {
        throw ConfigError("abnormal_series: span not aligned to bar grid");
    }

    AbnormalSeries out;
    out.event_id = event_id;
    out.frequency = freq;
    out.fit_return = fit_return;
    out.fit_volume = fit_volume;

    for (std::int64_t t = unix_seconds(span_start); t < unix_seconds(span_end); t += step) {
        const Instant ts = instant_from_unix(t);
        const std::size_t i = locate(dependent_returns, ts);
        const std::size_t v = locate(dependent_volume, ts);
        if (i == static_cast<std::size_t>(-1) || v == static_cast<std::size_t>(-1)) {
            throw SpanNotCovered("event span not covered at " + format_iso8601_utc(ts));
        }
        out.timestamps.push_back(ts);
        out.abnormal_return.push_back((*dependent_returns.values)[i] -
                                      fitted_value(fit_return, reference_returns, ts));
        out.abnormal_log_volume.push_back((*dependent_volume.values)[v] -
                                          fitted_value(fit_volume, reference_volume, ts));
    }
    return out;
}

}  // namespace matchstudy::models
