#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchstudy/common/time.h"
#include "matchstudy/ts/bar_series.h"

namespace matchstudy::models {

// Expected-return (or expected-log-volume) model taxonomy: constant mean, or
// a single-factor market model against a named reference asset.
struct ModelKind {
    enum class Variant { constant_mean, market_model };
    Variant variant = Variant::constant_mean;
    std::string reference_asset_id;  // set only for market_model

    static ModelKind constant_mean() { return {Variant::constant_mean, ""}; }
    static ModelKind market_model(std::string reference) {
        return {Variant::market_model, std::move(reference)};
    }
    bool is_market_model() const { return variant == Variant::market_model; }
    std::string name() const {
        return is_market_model() ? "market_model(" + reference_asset_id + ")"
                                 : "constant_mean";
    }
};

// Bar-count offsets relative to the event anchor (offset 0 = anchor bar),
// both ends inclusive. The defaults give the 1,440-bar pre-event day at
// minute frequency.
struct EstimationWindow {
    std::int64_t start_offset = -1500;
    std::int64_t end_offset = -61;
    double min_coverage = 0.8;  // fraction of observed (non-gap-filled) bars
    bool drop_gap_filled = false;  // sensitivity mode: estimate on observed bars only

    std::int64_t length() const { return end_offset - start_offset + 1; }
};

struct ModelFit {
    double alpha = 0.0;
    double beta = 0.0;  // exactly 0 for constant_mean
    double residual_stddev = 0.0;
    std::size_t n_obs = 0;
    ModelKind kind;

    // Estimation-window reference statistics, kept for forecast-error
    // adjustment when standardizing CARs. Unused for constant_mean.
    double reference_mean = 0.0;
    double reference_ss = 0.0;  // sum of squared deviations of the regressor
};

// Generic dependent/regressor view shared by ReturnSeries and LogVolumeSeries.
struct SeriesView {
    const std::vector<Instant>* timestamps = nullptr;
    const std::vector<double>* values = nullptr;
    const std::vector<std::uint8_t>* observed = nullptr;
    Frequency frequency = Frequency::minute;

    static SeriesView of(const ts::ReturnSeries& s) {
        return {&s.timestamps, &s.values, &s.observed, s.frequency};
    }
    static SeriesView of(const ts::LogVolumeSeries& s) {
        return {&s.timestamps, &s.values, &s.observed, s.frequency};
    }
    std::size_t size() const { return values->size(); }
};

// Fits the expectation model over the estimation window anchored at `anchor`.
// constant_mean: alpha = sample mean. market_model: OLS with intercept of
// dependent on reference, aligned timestamps required.
// Throws InsufficientCoverage and DegenerateRegressor.
ModelFit fit_model(const SeriesView& dependent, const SeriesView* reference,
                   const EstimationWindow& window, Instant anchor, const ModelKind& kind);

// Abnormal return and abnormal log-volume over one contiguous event span,
// [span_start, span_end) on the bar grid.
struct AbnormalSeries {
    std::string event_id;
    Frequency frequency = Frequency::minute;
    std::vector<Instant> timestamps;
    std::vector<double> abnormal_return;
    std::vector<double> abnormal_log_volume;
    ModelFit fit_return;
    ModelFit fit_volume;

    std::size_t size() const { return timestamps.size(); }
};

// Evaluates observed - fitted on both channels over [span_start, span_end).
// Every grid timestamp in the span must be present in both dependents (and
// the references under a market model); otherwise throws SpanNotCovered.
AbnormalSeries abnormal_series(const std::string& event_id, Instant span_start,
                               Instant span_end, const SeriesView& dependent_returns,
                               const SeriesView* reference_returns,
                               const SeriesView& dependent_volume,
                               const SeriesView* reference_volume,
                               const ModelFit& fit_return, const ModelFit& fit_volume);

}  // namespace matchstudy::models
