#pragma once

#include <string>
#include <vector>

#include "matchstudy/events/study.h"
#include "matchstudy/regress/run.h"

namespace matchstudy::report {

enum class TableFormat { csv, markdown };

// Serializes one or more study tables (panels). CSV keeps machine labels and
// full-precision values; markdown mirrors the published layout: panels
// (a)(b)(c) by table order, segment rows (i)-(vii), percent values with
// 3 decimals and significance stars on the test columns.
std::string emit_study_table(const std::vector<events::StudyTable>& tables,
                             TableFormat format);

// Daily-mode variant: one panel, returns channel only, offset-range row labels.
std::string emit_offset_study_table(const events::StudyTable& table, TableFormat format);

// Per-event CAR/CAV detail rows for one or more study tables.
std::string emit_event_rows_csv(const std::vector<events::StudyTable>& tables);

// Events excluded from estimation, with reasons.
std::string emit_excluded_csv(const std::vector<events::StudyTable>& tables);

// Determinants tables: markdown renders the (a)-(j) column grid with
// "coef (se)" cells and stars; CSV delegates to emit_regression_csv.
std::string emit_determinants_table(const std::vector<regress::DeterminantsColumn>& columns,
                                    TableFormat format);

// Round-trip: parse a study CSV produced by emit_study_table back into
// tables (used by the report subcommand, which never recomputes).
std::vector<events::StudyTable> parse_study_csv(const std::string& text);

// Display-name helpers shared by emitters.
std::string window_display_name(const std::string& machine_label);
std::string panel_title(const std::string& model_name);

}  // namespace matchstudy::report
