#include "delta/harness/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace delta::harness {

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "table" || name == "table-text")
        return ReportFormat::TableText;
    if (name == "csv")
        return ReportFormat::Csv;
    if (name == "json" || name == "structured")
        return ReportFormat::Json;
    throw std::invalid_argument("unknown report format '" + name + "' (table|csv|json)");
}

namespace {

std::string fmt_number(double v, int max_decimals = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(max_decimals) << v;
    std::string s = os.str();
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0')
            s.pop_back();
        if (s.back() == '.')
            s.pop_back();
    }
    return s;
}

std::string fmt_opt(const std::optional<double>& v, int decimals = 2) {
    return v ? fmt_number(*v, decimals) : "x";
}

std::string fmt_rate(int hits, int total) {
    return total == 0 ? "x" : fmt_number(100.0 * hits / total, 1);
}

struct Row {
    std::vector<std::string> cells;
};

std::vector<std::string> header() {
    return {"domain",        "scene",        "model",         "trials",
            "success_orig",  "success_decomp", "len_orig",    "len_decomp",
            "gt",            "time_orig_s",  "time_decomp_s", "expanded_orig",
            "expanded_decomp"};
}

Row make_row(const Aggregate& a, bool include_times) {
    Row r;
    r.cells = {
        a.domain_id,
        a.scene_id,
        a.model,
        std::to_string(a.trials),
        fmt_rate(a.orig_successes, a.trials),
        fmt_rate(a.decomp_successes, a.trials),
        fmt_opt(a.mean_len_orig),
        fmt_opt(a.mean_len_decomp),
        a.gt_length ? std::to_string(*a.gt_length) : "-",
        include_times ? fmt_opt(a.mean_time_orig, 4) : "-",
        include_times ? fmt_opt(a.mean_time_decomp, 4) : "-",
        fmt_opt(a.mean_expanded_orig),
        fmt_opt(a.mean_expanded_decomp),
    };
    return r;
}

}  // namespace

std::string emit_report(const std::vector<Aggregate>& rows, ReportFormat format,
                        bool include_times) {
    std::vector<std::string> head = header();
    std::vector<Row> body;
    body.reserve(rows.size());
    for (const auto& a : rows)
        body.push_back(make_row(a, include_times));

    switch (format) {
        case ReportFormat::Csv: {
            std::string out;
            for (size_t i = 0; i < head.size(); ++i)
                out += (i ? "," : "") + head[i];
            out += '\n';
            for (const auto& r : body) {
                for (size_t i = 0; i < r.cells.size(); ++i)
                    out += (i ? "," : "") + r.cells[i];
                out += '\n';
            }
            return out;
        }
        case ReportFormat::TableText: {
            std::vector<size_t> width(head.size());
            for (size_t i = 0; i < head.size(); ++i)
                width[i] = head[i].size();
            for (const auto& r : body)
                for (size_t i = 0; i < r.cells.size(); ++i)
                    width[i] = std::max(width[i], r.cells[i].size());
            std::ostringstream os;
            auto emit_line = [&](const std::vector<std::string>& cells) {
                for (size_t i = 0; i < cells.size(); ++i)
                    os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i]))
                       << cells[i];
                os << '\n';
            };
            emit_line(head);
            for (const auto& r : body)
                emit_line(r.cells);
            return os.str();
        }
        case ReportFormat::Json: {
            nlohmann::json doc = nlohmann::json::array();
            for (size_t k = 0; k < rows.size(); ++k) {
                nlohmann::json jr;
                for (size_t i = 0; i < head.size(); ++i)
                    jr[head[i]] = body[k].cells[i];
                doc.push_back(std::move(jr));
            }
            return doc.dump(2) + "\n";
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace delta::harness
