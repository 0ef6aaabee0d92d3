#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matchstudy/events/match_event.h"
#include "matchstudy/events/windows.h"
#include "matchstudy/models/market_model.h"
#include "matchstudy/stats/inference.h"
#include "matchstudy/ts/bar_series.h"

namespace matchstudy::events {

// Per-event accumulation for one window: CAR in percent-log units, CAV in
// log-volume units, plus their standardized counterparts for the Boehmer
// column.
struct EventOutcomeRow {
    std::string event_id;
    std::string window;
    double car = 0.0;
    double cav = 0.0;
    double scar = 0.0;
    double scav = 0.0;
};

// Cross-sectional mean and standard error of a list of per-event CARs.
// A single event is degenerate: the mean is that CAR and the SE is unset.
struct CaarFragment {
    double caar = 0.0;
    std::optional<double> se;
    std::size_t n = 0;
    bool degenerate = false;
};

CaarFragment caar(const std::vector<double>& cars);

struct ChannelStats {
    double mean = 0.0;
    std::optional<double> se;
    std::optional<stats::TestResult> t_test;
    std::optional<stats::TestResult> z_test;
    std::optional<stats::TestResult> boehmer;
    double pos_share = 0.0;
    std::size_t n = 0;
};

struct StudyRow {
    std::string window;  // segment label or offset-range label
    std::string model;
    ChannelStats returns;
    ChannelStats volume;
};

struct ExcludedEvent {
    std::string event_id;
    std::string reason;
};

struct StudyTable {
    std::string model;
    Frequency frequency = Frequency::minute;
    std::vector<StudyRow> rows;
    std::vector<ExcludedEvent> excluded;
    std::vector<EventOutcomeRow> event_rows;  // per-event detail, event-id order
};

struct StudyDataset {
    // Keyed by asset id; must contain every event's token_id and, under a
    // market model, the reference asset.
    std::map<std::string, ts::BarSeries> bars;
    std::vector<MatchEvent> matches;
};

struct StudyOptions {
    models::EstimationWindow estimation;
    double volume_shift = 1.0;
    bool regular_includes_half_time = true;
    stats::WilcoxonOptions wilcoxon;
};

// Standard deviation of a CAR over an `n_bars` window implied by the
// estimation fit; market-model fits carry the forecast-error adjustment
// (reference_window_sum is the sum of the reference values inside the event
// window). Used to standardize CARs for the Boehmer column.
double car_forecast_stddev(const models::ModelFit& fit, std::int64_t n_bars,
                           double reference_window_sum);

// Runs the full per-match study at the dataset's native frequency: resolve
// windows, fit models, accumulate CAR/CAV per event, aggregate CAAR plus
// t / Wilcoxon / Boehmer / positive-share per window. Events failing
// estimation coverage are reported in `excluded`, never dropped silently.
StudyTable run_event_study(const StudyDataset& dataset, const models::ModelKind& kind,
                           const StudyOptions& options = {});

// Offset-window mode: every asset in `token_ids` is one event anchored at
// `anchor`, with windows given as inclusive bar-offset ranges. This serves
// the daily pre/post-tournament study.
struct OffsetWindow {
    std::string label;
    std::int64_t start_offset = 0;
    std::int64_t end_offset = 0;  // inclusive
};

StudyTable run_offset_study(const StudyDataset& dataset,
                            const std::vector<std::string>& token_ids, Instant anchor,
                            const std::vector<OffsetWindow>& windows,
                            const models::ModelKind& kind, const StudyOptions& options = {});

}  // namespace matchstudy::events
