#include "matchstudy/report/emit.h"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "matchstudy/common/csv.h"
#include "matchstudy/common/errors.h"

namespace matchstudy::report {

using events::ChannelStats;
using events::StudyRow;
using events::StudyTable;

namespace {

constexpr const char* kStudyCsvHeader =
    "model,window,n,car_mean,car_se,car_t,car_t_p,car_z,car_z_p,car_pos,car_boehmer,"
    "car_boehmer_p,cav_mean,cav_se,cav_t,cav_t_p,cav_z,cav_z_p,cav_pos,cav_boehmer,"
    "cav_boehmer_p";

std::string opt_full(const std::optional<double>& v) {
    return v ? csv::format_full(*v) : "";
}

std::string test_stat_full(const std::optional<stats::TestResult>& t) {
    return t ? csv::format_full(t->statistic) : "";
}

std::string test_p_full(const std::optional<stats::TestResult>& t) {
    return t ? csv::format_full(t->p_value) : "";
}

void append_channel_csv(std::string& out, const ChannelStats& ch) {
    out += csv::format_full(ch.mean);
    out += ',';
    out += opt_full(ch.se);
    out += ',';
    out += test_stat_full(ch.t_test);
    out += ',';
    out += test_p_full(ch.t_test);
    out += ',';
    out += test_stat_full(ch.z_test);
    out += ',';
    out += test_p_full(ch.z_test);
    out += ',';
    out += csv::format_full(ch.pos_share);
    out += ',';
    out += test_stat_full(ch.boehmer);
    out += ',';
    out += test_p_full(ch.boehmer);
}

std::string starred(const std::optional<stats::TestResult>& t) {
    if (!t) {
        return "";
    }
    return csv::format_fixed(t->statistic, 2) + stats::significance_stars(t->p_value);
}

std::string pct3(double v) { return csv::format_fixed(v, 3) + "%"; }

std::string pct3_opt(const std::optional<double>& v) { return v ? pct3(*v) : ""; }

std::string fix3_opt(const std::optional<double>& v) {
    return v ? csv::format_fixed(*v, 3) : "";
}

std::string pos_pct(double share) { return csv::format_fixed(share * 100.0, 0) + "%"; }

std::optional<double> parse_opt(const std::string& field) {
    double v = 0.0;
    if (!csv::parse_double(field, v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<stats::TestResult> parse_test(const std::string& stat_field,
                                            const std::string& p_field) {
    const auto stat = parse_opt(stat_field);
    const auto p = parse_opt(p_field);
    if (!stat || !p) {
        return std::nullopt;
    }
    stats::TestResult t;
    t.statistic = *stat;
    t.p_value = *p;
    return t;
}

}  // namespace

std::string window_display_name(const std::string& machine_label) {
    static const std::map<std::string, std::string> names = {
        {"pre_match", "(i) Pre-match (-60 to 0)"},
        {"first_half", "(ii) First half (0 to 45)"},
        {"half_time", "(iii) Half time (45 to 60)"},
        {"second_half", "(iv) Second half (60 to 105)"},
        {"regular_match", "(v) Regular match (0 to 105)"},
        {"full_match", "(vi) Full match (0 to lambda)"},
        {"post_match", "(vii) Post match (lambda to lambda+60)"},
    };
    const auto it = names.find(machine_label);
    return it != names.end() ? it->second : machine_label;
}

std::string panel_title(const std::string& model_name) {
    if (model_name == "constant_mean") {
        return "Constant Mean Return";
    }
    const std::string prefix = "market_model(";
    if (model_name.rfind(prefix, 0) == 0 && model_name.back() == ')') {
        return "Market Model (" +
               model_name.substr(prefix.size(), model_name.size() - prefix.size() - 1) + ")";
    }
    return model_name;
}

std::string emit_study_table(const std::vector<StudyTable>& tables, TableFormat format) {
    if (tables.empty()) {
        throw EmptyInput("emit_study_table on empty table list");
    }

    if (format == TableFormat::csv) {
        std::string out = kStudyCsvHeader;
        out += '\n';
        for (const StudyTable& table : tables) {
            for (const StudyRow& row : table.rows) {
                out += table.model;
                out += ',';
                out += row.window;
                out += ',';
                out += std::to_string(row.returns.n);
                out += ',';
                append_channel_csv(out, row.returns);
                out += ',';
                append_channel_csv(out, row.volume);
                out += '\n';
            }
        }
        return out;
    }

    std::string out;
    char panel = 'a';
    for (const StudyTable& table : tables) {
        out += "### (";
        out += panel;
        out += ") ";
        out += panel_title(table.model);
        out += "\n\n";
        ++panel;
        out += "| Period | CARs | SE | t-test | z-test | Pos. | CAVs | SE | t-test | z-test "
               "| Pos. |\n";
        out += "|---|---|---|---|---|---|---|---|---|---|---|\n";
        for (const StudyRow& row : table.rows) {
            out += "| " + window_display_name(row.window);
            out += " | " + pct3(row.returns.mean);
            out += " | " + pct3_opt(row.returns.se);
            out += " | " + starred(row.returns.t_test);
            out += " | " + starred(row.returns.z_test);
            out += " | " + pos_pct(row.returns.pos_share);
            out += " | " + csv::format_fixed(row.volume.mean, 3);
            out += " | " + fix3_opt(row.volume.se);
            out += " | " + starred(row.volume.t_test);
            out += " | " + starred(row.volume.z_test);
            out += " | " + pos_pct(row.volume.pos_share);
            out += " |\n";
        }
        if (!table.excluded.empty()) {
            out += "\nExcluded events:\n";
            for (const auto& e : table.excluded) {
                out += "- " + e.event_id + ": " + e.reason + "\n";
            }
        }
        out += '\n';
    }
    return out;
}

std::string emit_offset_study_table(const StudyTable& table, TableFormat format) {
    if (format == TableFormat::csv) {
        return emit_study_table({table}, TableFormat::csv);
    }
    std::string out;
    out += "| Days to the event in t = 0 | CARs | Std. Err. | t-test | z-test | Pos. |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const StudyRow& row : table.rows) {
        out += "| " + row.window;
        out += " | " + pct3(row.returns.mean);
        out += " | " + pct3_opt(row.returns.se);
        out += " | " + starred(row.returns.t_test);
        out += " | " + starred(row.returns.z_test);
        out += " | " + pos_pct(row.returns.pos_share);
        out += " |\n";
    }
    if (!table.excluded.empty()) {
        out += "\nExcluded assets:\n";
        for (const auto& e : table.excluded) {
            out += "- " + e.event_id + ": " + e.reason + "\n";
        }
    }
    return out;
}

std::string emit_event_rows_csv(const std::vector<StudyTable>& tables) {
    std::string out = "model,event_id,window,car,cav,scar,scav\n";
    for (const StudyTable& table : tables) {
        for (const events::EventOutcomeRow& row : table.event_rows) {
            out += table.model;
            out += ',';
            out += row.event_id;
            out += ',';
            out += row.window;
            out += ',';
            out += csv::format_full(row.car);
            out += ',';
            out += csv::format_full(row.cav);
            out += ',';
            out += std::isfinite(row.scar) ? csv::format_full(row.scar) : "";
            out += ',';
            out += std::isfinite(row.scav) ? csv::format_full(row.scav) : "";
            out += '\n';
        }
    }
    return out;
}

std::string emit_excluded_csv(const std::vector<StudyTable>& tables) {
    std::string out = "model,event_id,reason\n";
    for (const StudyTable& table : tables) {
        for (const events::ExcludedEvent& e : table.excluded) {
            std::string reason = e.reason;
            for (char& c : reason) {
                if (c == ',' || c == '\n') {
                    c = ';';
                }
            }
            out += table.model + ',' + e.event_id + ',' + reason + '\n';
        }
    }
    return out;
}

std::string emit_determinants_table(const std::vector<regress::DeterminantsColumn>& columns,
                                    TableFormat format) {
    if (format == TableFormat::csv) {
        return regress::emit_regression_csv(columns);
    }
    if (columns.empty()) {
        throw EmptyInput("emit_determinants_table on empty column list");
    }

    // Display rows in the published order; terms absent from a column render
    // blank.
    const std::vector<std::pair<std::string, std::string>> display_terms = {
        {"victory", "(i) Victory"},
        {"victory_low_stake", "(ii) Victory (Low-Stake)"},
        {"victory_high_stake", "(iii) Victory (High-Stake)"},
        {"defeat", "(iv) Defeat"},
        {"defeat_low_stake", "(v) Defeat (Low-Stake)"},
        {"defeat_high_stake", "(vi) Defeat (High-Stake)"},
        {"defeat_knockout", "(vii) Defeat & Knockout"},
    };

    std::string out = "| Outcome |";
    for (const auto& col : columns) {
        out += " " + col.label + " |";
    }
    out += "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += "---|";
    }
    out += '\n';

    for (const auto& [term, display] : display_terms) {
        out += "| " + display + " |";
        for (const auto& col : columns) {
            std::string cell;
            for (std::size_t j = 0; j < col.result.terms.size(); ++j) {
                if (col.result.terms[j] == term) {
                    const Eigen::Index idx = static_cast<Eigen::Index>(j);
                    cell = csv::format_fixed(col.result.coefficients[idx], 4) +
                           stats::significance_stars(col.result.p_values[idx]) + " (" +
                           csv::format_fixed(col.result.std_errors[idx], 4) + ")";
                    break;
                }
            }
            out += " " + cell + " |";
        }
        out += '\n';
    }

    out += "| R2 |";
    for (const auto& col : columns) {
        out += " " + csv::format_fixed(col.result.r_squared, 4) + " |";
    }
    out += "\n| Adj. R2 [pseudo R2] |";
    for (const auto& col : columns) {
        const std::string value = csv::format_fixed(col.result.adj_or_pseudo_r_squared, 4);
        out += col.spec.estimator == regress::Estimator::mm ? " [" + value + "] |"
                                                            : " " + value + " |";
    }
    out += "\n| Controls |";
    for (const auto& col : columns) {
        const bool controls =
            col.spec.form == regress::RegressionForm::eq5_outcome_controls ||
            col.spec.form == regress::RegressionForm::eq8_knockout_controls;
        out += controls ? " Yes |" : " No |";
    }
    out += "\n| Method |";
    for (const auto& col : columns) {
        out += col.spec.estimator == regress::Estimator::ols ? " OLS |" : " MM |";
    }
    out += '\n';
    return out;
}

std::vector<StudyTable> parse_study_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || csv::trim(line) != kStudyCsvHeader) {
        throw ParseError("unrecognized study CSV header", 1);
    }

    std::vector<StudyTable> tables;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (csv::trim(line).empty()) {
            continue;
        }
        const auto fields = csv::split_line(line);
        if (fields.size() != 21) {
            throw ParseError("study CSV row needs 21 fields", row_no);
        }
        StudyRow row;
        row.model = fields[0];
        row.window = fields[1];
        std::size_t n = 0;
        try {
            n = static_cast<std::size_t>(std::stoul(fields[2]));
        } catch (const std::exception&) {
            throw ParseError("bad n field", row_no);
        }

        auto read_channel = [&](std::size_t base) {
            ChannelStats ch;
            ch.n = n;
            const auto mean = parse_opt(fields[base]);
            if (!mean) {
                throw ParseError("bad mean field", row_no);
            }
            ch.mean = *mean;
            ch.se = parse_opt(fields[base + 1]);
            ch.t_test = parse_test(fields[base + 2], fields[base + 3]);
            ch.z_test = parse_test(fields[base + 4], fields[base + 5]);
            const auto pos = parse_opt(fields[base + 6]);
            ch.pos_share = pos ? *pos : 0.0;
            ch.boehmer = parse_test(fields[base + 7], fields[base + 8]);
            return ch;
        };
        row.returns = read_channel(3);
        row.volume = read_channel(12);

        if (tables.empty() || tables.back().model != row.model) {
            StudyTable table;
            table.model = row.model;
            tables.push_back(std::move(table));
        }
        tables.back().rows.push_back(std::move(row));
    }
    return tables;
}

}  // namespace matchstudy::report
