#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "dtilt/cli.hpp"

namespace dtilt::cli {

namespace {

std::string human_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

std::string cell_text(const Cell& c, bool human) {
    if (const double* d = std::get_if<double>(&c)) return human ? human_number(*d) : format_number(*d);
    return std::get<std::string>(c);
}

std::string render_table(const Table& t) {
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
    std::vector<std::vector<std::string>> text;
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t j = 0; j < row.size(); ++j) {
            line.push_back(cell_text(row[j], true));
            width[j] = std::max(width[j], line.back().size());
        }
        text.push_back(std::move(line));
    }
    std::ostringstream os;
    if (!t.title.empty()) os << t.title << '\n';
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j) os << "  ";
            os << std::string(width[j] - cells[j].size(), ' ') << cells[j];
        }
        os << '\n';
    };
    emit(t.columns);
    for (const auto& line : text) emit(line);
    return os.str();
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string render_csv(const Table& t) {
    std::string s;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (j) s += ',';
        s += t.columns[j];
    }
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) s += ',';
            s += cell_text(row[j], false);
        }
        s += '\n';
    }
    return s;
}

std::string render_json(const std::vector<Table>& tables) {
    nlohmann::ordered_json doc;
    doc["tables"] = nlohmann::ordered_json::array();
    for (const Table& t : tables) {
        nlohmann::ordered_json jt;
        jt["title"] = t.title;
        jt["columns"] = t.columns;
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json jr;
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (const double* d = std::get_if<double>(&row[j])) {
                    if (std::isfinite(*d)) jr[t.columns[j]] = *d;
                    else jr[t.columns[j]] = format_number(*d);
                } else {
                    jr[t.columns[j]] = std::get<std::string>(row[j]);
                }
            }
            jt["rows"].push_back(std::move(jr));
        }
        doc["tables"].push_back(std::move(jt));
    }
    return doc.dump(2) + "\n";
}

std::string render(const std::vector<Table>& tables, OutputFormat format) {
    switch (format) {
        case OutputFormat::json:
            return render_json(tables);
        case OutputFormat::csv: {
            std::string s;
            for (std::size_t i = 0; i < tables.size(); ++i) {
                if (i) s += '\n';
                s += render_csv(tables[i]);
            }
            return s;
        }
        case OutputFormat::table:
            break;
    }
    std::string s;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) s += '\n';
        s += render_table(tables[i]);
    }
    return s;
}

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = l.find(',', start);
            cells.push_back(l.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    if (!std::getline(in, line)) return t;
    t.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<Cell> row;
        for (const std::string& c : split(line)) {
            double v = 0.0;
            const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec == std::errc() && res.ptr == c.data() + c.size()) row.emplace_back(v);
            else row.emplace_back(c);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace dtilt::cli
