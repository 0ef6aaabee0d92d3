#pragma once

#include <map>
#include <string>

#include "matchstudy/ts/bar_series.h"

namespace matchstudy::report {

struct PlotOutput {
    std::string csv;  // timestamp column plus one cumulative-return column per asset
    std::string svg;  // self-contained line chart, no external assets
};

// Cumulative sums of percent-log returns per asset over a common grid.
// All series must share identical timestamps; throws EmptyInput / ConfigError.
PlotOutput cumulative_return_plot(const std::map<std::string, ts::ReturnSeries>& series);

}  // namespace matchstudy::report
