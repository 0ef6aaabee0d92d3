#include "matchstudy/events/study.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "matchstudy/common/errors.h"

namespace matchstudy::events {

namespace {

using models::AbnormalSeries;
using models::EstimationWindow;
using models::ModelFit;
using models::ModelKind;
using models::SeriesView;

struct PreparedAsset {
    ts::ReturnSeries returns;
    ts::LogVolumeSeries volume;
};

PreparedAsset prepare_asset(const ts::BarSeries& raw, Instant first_bar, Instant last_bar,
                            double volume_shift) {
    const ts::BarSeries reg = ts::regularize(raw, first_bar, last_bar);
    PreparedAsset out;
    out.returns = ts::log_returns(reg);
    out.volume = ts::log_volume(reg, volume_shift);
    return out;
}

double reference_window_sum(const SeriesView& reference, Instant start, Instant end) {
    double sum = 0.0;
    const auto& stamps = *reference.timestamps;
    auto it = std::lower_bound(stamps.begin(), stamps.end(), start);
    for (; it != stamps.end() && *it < end; ++it) {
        sum += (*reference.values)[static_cast<std::size_t>(it - stamps.begin())];
    }
    return sum;
}

double standardize(double accumulated, double forecast_sd) {
    if (forecast_sd > 0.0) {
        return accumulated / forecast_sd;
    }
    // Degenerate perfect fit: zero abnormality standardizes to zero, anything
    // else has no finite scale.
    return accumulated == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
}

struct WindowAccumulator {
    std::vector<double> cars;
    std::vector<double> cavs;
    std::vector<double> scars;
    std::vector<double> scavs;
};

ChannelStats aggregate_channel(const std::vector<double>& values,
                               const std::vector<double>& standardized,
                               const stats::WilcoxonOptions& wilcoxon) {
    ChannelStats out;
    const CaarFragment fragment = caar(values);
    out.mean = fragment.caar;
    out.se = fragment.se;
    out.n = fragment.n;
    out.pos_share = stats::positive_share(values);
    try {
        out.t_test = stats::t_test_cross_sectional(values);
    } catch (const Error&) {
    }
    try {
        out.z_test = stats::wilcoxon_signed_rank(values, wilcoxon);
    } catch (const Error&) {
    }
    const bool scars_usable =
        !standardized.empty() &&
        std::all_of(standardized.begin(), standardized.end(),
                    [](double v) { return std::isfinite(v); });
    if (scars_usable) {
        try {
            out.boehmer = stats::boehmer_test(standardized);
        } catch (const Error&) {
        }
    }
    return out;
}

}  // namespace

CaarFragment caar(const std::vector<double>& cars) {
    if (cars.empty()) {
        throw EmptyInput("caar on empty CAR list");
    }
    CaarFragment fragment;
    fragment.n = cars.size();
    fragment.caar = stats::mean(cars);
    if (cars.size() == 1) {
        fragment.degenerate = true;
    } else {
        fragment.se = stats::sample_stddev(cars) / std::sqrt(static_cast<double>(cars.size()));
    }
    return fragment;
}

double car_forecast_stddev(const ModelFit& fit, std::int64_t n_bars,
                           double reference_window_sum) {
    const double L = static_cast<double>(n_bars);
    const double s = fit.residual_stddev;
    if (!fit.kind.is_market_model()) {
        return s * std::sqrt(L);
    }
    const double T = static_cast<double>(fit.n_obs);
    const double dev = reference_window_sum - L * fit.reference_mean;
    double variance_factor = L + L * L / T;
    if (fit.reference_ss > 0.0) {
        variance_factor += dev * dev / fit.reference_ss;
    }
    return s * std::sqrt(variance_factor);
}

StudyTable run_event_study(const StudyDataset& dataset, const ModelKind& kind,
                           const StudyOptions& options) {
    StudyTable table;
    table.model = kind.name();
    if (dataset.matches.empty()) {
        throw EmptyInput("event study needs at least one match");
    }
    table.frequency = dataset.bars.begin()->second.frequency;
    const Frequency freq = table.frequency;

    std::vector<MatchEvent> matches = dataset.matches;
    std::sort(matches.begin(), matches.end(),
              [](const MatchEvent& a, const MatchEvent& b) { return a.event_id < b.event_id; });
    {
        std::set<std::string> ids;
        for (const MatchEvent& m : matches) {
            if (!ids.insert(m.event_id).second) {
                throw ConfigError("duplicate event_id '" + m.event_id + "'");
            }
        }
    }

    const ts::BarSeries* reference_bars = nullptr;
    if (kind.is_market_model()) {
        const auto it = dataset.bars.find(kind.reference_asset_id);
        if (it == dataset.bars.end()) {
            throw ConfigError("reference asset '" + kind.reference_asset_id +
                              "' not present in dataset");
        }
        reference_bars = &it->second;
    }

    // Labels in Table-2 order; per-window cross sections fill up as events
    // complete.
    const std::vector<WindowLabel> labels = {
        WindowLabel::pre_match,   WindowLabel::first_half,    WindowLabel::half_time,
        WindowLabel::second_half, WindowLabel::regular_match, WindowLabel::full_match,
        WindowLabel::post_match,
    };
    std::map<WindowLabel, WindowAccumulator> acc;

    for (const MatchEvent& event : matches) {
        const auto token_it = dataset.bars.find(event.token_id);
        if (token_it == dataset.bars.end()) {
            throw ConfigError("token '" + event.token_id + "' for event '" + event.event_id +
                              "' not present in dataset");
        }
        const std::vector<EventWindow> windows = resolve_windows(event);
        const Instant span_start = windows.front().start;  // pre_match start
        const Instant span_end = windows.back().end;       // post_match end

        // Bars must reach one step before the earliest return point needed,
        // which is the start of the estimation window.
        const Instant first_bar = add_bars(event.kickoff, options.estimation.start_offset - 1, freq);
        const Instant last_bar = add_bars(span_end, -1, freq);

        try {
            const PreparedAsset token =
                prepare_asset(token_it->second, first_bar, last_bar, options.volume_shift);
            PreparedAsset reference;
            if (reference_bars != nullptr) {
                reference = prepare_asset(*reference_bars, first_bar, last_bar,
                                          options.volume_shift);
            }

            const SeriesView dep_r = SeriesView::of(token.returns);
            const SeriesView dep_v = SeriesView::of(token.volume);
            SeriesView ref_r;
            SeriesView ref_v;
            const SeriesView* ref_r_ptr = nullptr;
            const SeriesView* ref_v_ptr = nullptr;
            if (reference_bars != nullptr) {
                ref_r = SeriesView::of(reference.returns);
                ref_v = SeriesView::of(reference.volume);
                ref_r_ptr = &ref_r;
                ref_v_ptr = &ref_v;
            }

            const ModelFit fit_r =
                models::fit_model(dep_r, ref_r_ptr, options.estimation, event.kickoff, kind);
            const ModelFit fit_v =
                models::fit_model(dep_v, ref_v_ptr, options.estimation, event.kickoff, kind);

            const AbnormalSeries abnormal =
                models::abnormal_series(event.event_id, span_start, span_end, dep_r,
                                        ref_r_ptr, dep_v, ref_v_ptr, fit_r, fit_v);

            auto window_by_label = [&](WindowLabel label) -> const EventWindow& {
                for (const EventWindow& w : windows) {
                    if (w.label == label) return w;
                }
                throw ConfigError("window label missing");
            };

            for (WindowLabel label : labels) {
                double car_value = 0.0;
                double cav_value = 0.0;
                std::int64_t n_bars = 0;
                double ref_sum_r = 0.0;
                double ref_sum_v = 0.0;

                auto add_window = [&](const EventWindow& w) {
                    car_value += car(abnormal, w);
                    cav_value += cav(abnormal, w);
                    n_bars += w.bar_count(freq);
                    if (ref_r_ptr != nullptr) {
                        ref_sum_r += reference_window_sum(ref_r, w.start, w.end);
                        ref_sum_v += reference_window_sum(ref_v, w.start, w.end);
                    }
                };

                if (label == WindowLabel::regular_match &&
                    !options.regular_includes_half_time) {
                    add_window(window_by_label(WindowLabel::first_half));
                    add_window(window_by_label(WindowLabel::second_half));
                } else {
                    add_window(window_by_label(label));
                }

                EventOutcomeRow row;
                row.event_id = event.event_id;
                row.window = window_label_name(label);
                row.car = car_value;
                row.cav = cav_value;
                row.scar = standardize(car_value,
                                       car_forecast_stddev(fit_r, n_bars, ref_sum_r));
                row.scav = standardize(cav_value,
                                       car_forecast_stddev(fit_v, n_bars, ref_sum_v));
                table.event_rows.push_back(row);

                WindowAccumulator& bucket = acc[label];
                bucket.cars.push_back(row.car);
                bucket.cavs.push_back(row.cav);
                bucket.scars.push_back(row.scar);
                bucket.scavs.push_back(row.scav);
            }
        } catch (const InsufficientCoverage& e) {
            table.excluded.push_back({event.event_id, e.what()});
        } catch (const LeadingGap& e) {
            table.excluded.push_back({event.event_id, e.what()});
        } catch (const SpanNotCovered& e) {
            table.excluded.push_back({event.event_id, e.what()});
        }
    }

    for (WindowLabel label : labels) {
        const auto it = acc.find(label);
        if (it == acc.end()) {
            continue;  // every event excluded
        }
        StudyRow row;
        row.window = window_label_name(label);
        row.model = table.model;
        row.returns = aggregate_channel(it->second.cars, it->second.scars, options.wilcoxon);
        row.volume = aggregate_channel(it->second.cavs, it->second.scavs, options.wilcoxon);
        table.rows.push_back(std::move(row));
    }
    return table;
}

StudyTable run_offset_study(const StudyDataset& dataset,
                            const std::vector<std::string>& token_ids, Instant anchor,
                            const std::vector<OffsetWindow>& windows, const ModelKind& kind,
                            const StudyOptions& options) {
    if (token_ids.empty()) {
        throw EmptyInput("offset study needs at least one asset");
    }
    if (windows.empty()) {
        throw EmptyInput("offset study needs at least one window");
    }
    StudyTable table;
    table.model = kind.name();
    table.frequency = dataset.bars.begin()->second.frequency;
    const Frequency freq = table.frequency;
    if (!aligned_to(anchor, freq)) {
        throw ConfigError("offset study anchor not aligned to bar grid");
    }

    std::int64_t min_start = windows.front().start_offset;
    std::int64_t max_end = windows.front().end_offset;
    for (const OffsetWindow& w : windows) {
        if (w.start_offset > w.end_offset) {
            throw ConfigError("offset window '" + w.label + "' has start > end");
        }
        min_start = std::min(min_start, w.start_offset);
        max_end = std::max(max_end, w.end_offset);
    }

    const ts::BarSeries* reference_bars = nullptr;
    if (kind.is_market_model()) {
        const auto it = dataset.bars.find(kind.reference_asset_id);
        if (it == dataset.bars.end()) {
            throw ConfigError("reference asset '" + kind.reference_asset_id +
                              "' not present in dataset");
        }
        reference_bars = &it->second;
    }

    const Instant first_bar = add_bars(anchor, options.estimation.start_offset - 1, freq);
    const Instant last_bar = add_bars(anchor, max_end, freq);
    const Instant span_start = add_bars(anchor, min_start, freq);
    const Instant span_end = add_bars(anchor, max_end + 1, freq);

    std::vector<std::string> tokens = token_ids;
    std::sort(tokens.begin(), tokens.end());

    std::map<std::string, WindowAccumulator> acc;

    for (const std::string& token_id : tokens) {
        const auto token_it = dataset.bars.find(token_id);
        if (token_it == dataset.bars.end()) {
            throw ConfigError("asset '" + token_id + "' not present in dataset");
        }
        try {
            const PreparedAsset token =
                prepare_asset(token_it->second, first_bar, last_bar, options.volume_shift);
            PreparedAsset reference;
            if (reference_bars != nullptr) {
                reference =
                    prepare_asset(*reference_bars, first_bar, last_bar, options.volume_shift);
            }

            const SeriesView dep_r = SeriesView::of(token.returns);
            const SeriesView dep_v = SeriesView::of(token.volume);
            SeriesView ref_r;
            SeriesView ref_v;
            const SeriesView* ref_r_ptr = nullptr;
            const SeriesView* ref_v_ptr = nullptr;
            if (reference_bars != nullptr) {
                ref_r = SeriesView::of(reference.returns);
                ref_v = SeriesView::of(reference.volume);
                ref_r_ptr = &ref_r;
                ref_v_ptr = &ref_v;
            }

            const ModelFit fit_r =
                models::fit_model(dep_r, ref_r_ptr, options.estimation, anchor, kind);
            const ModelFit fit_v =
                models::fit_model(dep_v, ref_v_ptr, options.estimation, anchor, kind);
            const AbnormalSeries abnormal = models::abnormal_series(
                token_id, span_start, span_end, dep_r, ref_r_ptr, dep_v, ref_v_ptr, fit_r,
                fit_v);

            for (const OffsetWindow& w : windows) {
                EventWindow window;
                window.label = WindowLabel::full_match;  // label unused in offset mode
                window.start = add_bars(anchor, w.start_offset, freq);
                window.end = add_bars(anchor, w.end_offset + 1, freq);

                const double car_value = car(abnormal, window);
                const double cav_value = cav(abnormal, window);
                const std::int64_t n_bars = window.bar_count(freq);
                double ref_sum_r = 0.0;
                double ref_sum_v = 0.0;
                if (ref_r_ptr != nullptr) {
                    ref_sum_r = reference_window_sum(ref_r, window.start, window.end);
                    ref_sum_v = reference_window_sum(ref_v, window.start, window.end);
                }

                WindowAccumulator& bucket = acc[w.label];
                bucket.cars.push_back(car_value);
                bucket.cavs.push_back(cav_value);
                bucket.scars.push_back(
                    standardize(car_value, car_forecast_stddev(fit_r, n_bars, ref_sum_r)));
                bucket.scavs.push_back(
                    standardize(cav_value, car_forecast_stddev(fit_v, n_bars, ref_sum_v)));

                EventOutcomeRow row;
                row.event_id = token_id;
                row.window = w.label;
                row.car = car_value;
                row.cav = cav_value;
                row.scar = bucket.scars.back();
                row.scav = bucket.scavs.back();
                table.event_rows.push_back(row);
            }
        } catch (const InsufficientCoverage& e) {
            table.excluded.push_back({token_id, e.what()});
        } catch (const LeadingGap& e) {
            table.excluded.push_back({token_id, e.what()});
        } catch (const SpanNotCovered& e) {
            table.excluded.push_back({token_id, e.what()});
        }
    }

    for (const OffsetWindow& w : windows) {
        const auto it = acc.find(w.label);
        if (it == acc.end()) {
            continue;
        }
        StudyRow row;
        row.window = w.label;
        row.model = table.model;
        row.returns = aggregate_channel(it->second.cars, it->second.scars, options.wilcoxon);
        row.volume = aggregate_channel(it->second.cavs, it->second.scavs, options.wilcoxon);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace matchstudy::events
