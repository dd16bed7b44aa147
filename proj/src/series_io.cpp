#include "pvg/series_io.hpp"

#include "pvg/error.hpp"
#include "pvg/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace pvg {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (field.empty()) return std::nullopt;
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
    return v;
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& msg) {
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

TimeSeries parse_series_csv(std::istream& in, double default_dt, const std::string& source) {
    std::vector<double> times;
    std::vector<double> values;
    std::optional<std::size_t> columns;
    std::size_t line_no = 0;
    bool seen_data = false;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            fields.push_back(text.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() > 3) {
            parse_fail(source, line_no, "expected `value`, `time,value` or `index,time,value`");
        }

        std::vector<double> parsed;
        bool numeric = true;
        for (auto f : fields) {
            const auto v = parse_number(f);
            if (!v) {
                numeric = false;
                break;
            }
            parsed.push_back(*v);
        }
        if (!numeric) {
            if (!seen_data && line_no == 1) continue;  // header
            parse_fail(source, line_no, "non-numeric field");
        }
        if (columns && *columns != fields.size()) {
            parse_fail(source, line_no, "inconsistent column count");
        }
        columns = fields.size();
        seen_data = true;
        for (double v : parsed) {
            if (!std::isfinite(v)) parse_fail(source, line_no, "non-finite value");
        }
        if (fields.size() >= 2) {
            times.push_back(parsed[fields.size() - 2]);
            values.push_back(parsed.back());
        } else {
            values.push_back(parsed[0]);
        }
    }

    if (values.size() < 2) {
        throw Error(ErrorCode::ParseError, source + ": need at least 2 samples, found " +
                                               std::to_string(values.size()));
    }
    if (times.empty()) return TimeSeries(std::move(values), default_dt);

    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw Error(ErrorCode::ParseError, source + ": times must increase");
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double step = times[i] - times[i - 1];
        if (std::abs(step - dt) > 1e-9 * dt) {
            throw Error(ErrorCode::ParseError,
                        source + ": non-uniform sampling near data row " + std::to_string(i + 1));
        }
    }
    return TimeSeries(std::move(values), dt, times.front());
}

TimeSeries load_series_csv(const std::filesystem::path& path, double default_dt) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return parse_series_csv(in, default_dt, path.string());
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    out << "index,time,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << i << ',' << format_double(series.time(i)) << ',' << format_double(series[i]) << '\n';
    }
}

void save_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    write_series_csv(out, series);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace pvg
