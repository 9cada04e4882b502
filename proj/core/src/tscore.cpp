#include "tcoint/tscore.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tcoint/errors.hpp"

namespace tcoint {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError("unparseable date '" + std::string(whole) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

Timestamp Timestamp::parse(std::string_view s) {
    s = trim(s);
    Timestamp t;
    t.text = std::string(s);
    if (s.size() != 7 && s.size() != 10) throw DataError("unparseable date '" + t.text + "'");
    if (s[4] != '-') throw DataError("unparseable date '" + t.text + "'");
    t.year = parse_int(s.substr(0, 4), s);
    t.month = parse_int(s.substr(5, 2), s);
    if (s.size() == 10) {
        if (s[7] != '-') throw DataError("unparseable date '" + t.text + "'");
        t.day = parse_int(s.substr(8, 2), s);
        if (t.day < 1 || t.day > 31) throw DataError("unparseable date '" + t.text + "'");
    }
    if (t.month < 1 || t.month > 12) throw DataError("unparseable date '" + t.text + "'");
    return t;
}

Timestamp Timestamp::monthly(int year, int month) {
    Timestamp t;
    t.year = year;
    t.month = month;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    t.text = buf;
    return t;
}

Series::Series(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) throw DataError("series '" + label_ + "' is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("series '" + label_ + "' has a non-finite value at index " +
                            std::to_string(i));
        }
    }
}

Panel::Panel(std::vector<Timestamp> timestamps, Series benchmark, Series target)
    : timestamps_(std::move(timestamps)), benchmark_(std::move(benchmark)), target_(std::move(target)) {
    if (benchmark_.size() != timestamps_.size() || target_.size() != timestamps_.size()) {
        throw DataError("panel columns have unequal lengths");
    }
    if (timestamps_.size() < 2) throw DataError("panel needs at least 2 observations");
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
        if (!(timestamps_[i - 1] < timestamps_[i])) {
            throw DataError("non-monotone timestamps at '" + timestamps_[i].text + "'");
        }
    }
}

Eigen::MatrixXd Panel::levels() const {
    Eigen::MatrixXd m(size(), 2);
    for (std::size_t i = 0; i < size(); ++i) {
        m(i, 0) = benchmark_[i];
        m(i, 1) = target_[i];
    }
    return m;
}

Panel panel_from_levels(const Eigen::MatrixXd& levels, const std::string& start,
                        const std::string& benchmarkLabel, const std::string& targetLabel) {
    if (levels.cols() != 2) throw_invalid("level matrix must have 2 columns");
    const Timestamp first = Timestamp::parse(start);
    std::vector<Timestamp> stamps;
    std::vector<double> b, t;
    stamps.reserve(levels.rows());
    int y = first.year, m = first.month;
    for (Eigen::Index i = 0; i < levels.rows(); ++i) {
        stamps.push_back(Timestamp::monthly(y, m));
        if (++m > 12) {
            m = 1;
            ++y;
        }
        b.push_back(levels(i, 0));
        t.push_back(levels(i, 1));
    }
    return Panel(std::move(stamps), Series(std::move(b), benchmarkLabel), Series(std::move(t), targetLabel));
}

Panel log_transform(const Panel& panel) {
    auto logged = [](const Series& s) {
        std::vector<double> v(s.values().begin(), s.values().end());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0)) {
                throw DataError("log transform needs positive values; '" + s.label() + "' has " +
                                format_double(v[i]) + " at index " + std::to_string(i));
            }
            v[i] = std::log(v[i]);
        }
        return Series(std::move(v), s.label());
    };
    return Panel(panel.timestamps(), logged(panel.benchmark()), logged(panel.target()));
}

Panel read_panel_csv(std::istream& in, const std::string& benchmarkColumn,
                     const std::string& targetColumn, const std::string& dateColumn,
                     const std::string& sourceName) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(sourceName + ": missing header row");
    const auto header = split_csv(line);
    auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw DataError(sourceName + ": no column named '" + name + "'");
    };
    const std::size_t dateCol = find_col(dateColumn);
    const std::size_t benchCol = find_col(benchmarkColumn);
    const std::size_t targetCol = find_col(targetColumn);

    std::vector<Timestamp> stamps;
    std::vector<double> bench, target;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        auto cell_value = [&](std::size_t col, const std::string& name) {
            if (col >= cells.size() || cells[col].empty()) {
                throw DataError(sourceName + ": missing value in row " + std::to_string(row) +
                                ", column '" + name + "'");
            }
            double v = 0.0;
            const auto s = cells[col];
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
                throw DataError(sourceName + ": unparseable value '" + std::string(s) + "' in row " +
                                std::to_string(row) + ", column '" + name + "'");
            }
            return v;
        };
        if (dateCol >= cells.size() || cells[dateCol].empty()) {
            throw DataError(sourceName + ": missing value in row " + std::to_string(row) +
                            ", column '" + dateColumn + "'");
        }
        Timestamp ts = Timestamp::parse(cells[dateCol]);
        if (!stamps.empty() && !(stamps.back() < ts)) {
            throw DataError(sourceName + ": non-monotone timestamps at row " + std::to_string(row) +
                            " ('" + ts.text + "')");
        }
        stamps.push_back(std::move(ts));
        bench.push_back(cell_value(benchCol, benchmarkColumn));
        target.push_back(cell_value(targetCol, targetColumn));
    }
    if (stamps.size() < 2) {
        throw DataError(sourceName + ": need at least 2 data rows, found " + std::to_string(stamps.size()));
    }
    return Panel(std::move(stamps), Series(std::move(bench), benchmarkColumn),
                 Series(std::move(target), targetColumn));
}

Panel load_panel(const std::filesystem::path& path, const std::string& benchmarkColumn,
                 const std::string& targetColumn, const std::string& dateColumn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return read_panel_csv(in, benchmarkColumn, targetColumn, dateColumn, path.string());
}

void write_panel_csv(const Panel& panel, std::ostream& out, const std::string& dateColumn) {
    out << dateColumn << ',' << panel.benchmark().label() << ',' << panel.target().label() << '\n';
    for (std::size_t i = 0; i < panel.size(); ++i) {
        out << panel.timestamps()[i].text << ',' << format_double(panel.benchmark()[i]) << ','
            << format_double(panel.target()[i]) << '\n';
    }
}

void save_panel(const Panel& panel, const std::filesystem::path& path, const std::string& dateColumn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_panel_csv(panel, out, dateColumn);
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<double> difference(std::span<const double> values) {
    if (values.size() < 2) throw DataError("difference needs at least 2 observations");
    std::vector<double> out(values.size() - 1);
    for (std::size_t t = 0; t + 1 < values.size(); ++t) out[t] = values[t + 1] - values[t];
    return out;
}

Series difference(const Series& series) {
    return Series(difference(series.values()), series.label());
}

std::vector<double> error_correction(const Panel& panel, double beta) {
    std::vector<double> z(panel.size());
    for (std::size_t t = 0; t < panel.size(); ++t) {
        z[t] = panel.benchmark()[t] - beta * panel.target()[t];
    }
    return z;
}

std::vector<std::string> regressor_names(int q, const std::string& benchmarkLabel,
                                         const std::string& targetLabel) {
    std::vector<std::string> names{"Constant", "z_t"};
    for (int i = 1; i <= q; ++i) {
        names.push_back("d" + benchmarkLabel + "(-" + std::to_string(i) + ")");
        names.push_back("d" + targetLabel + "(-" + std::to_string(i) + ")");
    }
    return names;
}

RegressorSet build_regressors(const Panel& panel, int q, double beta, int alignLag) {
    if (q < 0) throw_invalid("lag order q must be >= 0");
    if (alignLag < 0) alignLag = q;
    if (alignLag < q) throw_invalid("alignment lag must be >= q");
    const int T = static_cast<int>(panel.size());
    if (T < alignLag + 3) {
        throw DataError("sample of " + std::to_string(T) + " observations too short for lag order " +
                        std::to_string(alignLag) + "; need at least " + std::to_string(alignLag + 3));
    }
    const auto b = panel.benchmark().values();
    const auto g = panel.target().values();
    const int first = alignLag + 1;
    const int rows = T - first;
    const int cols = 2 + 2 * q;

    RegressorSet r;
    r.q = q;
    r.firstIndex = first;
    r.X.resize(rows, cols);
    r.Y.resize(rows, 2);
    r.zLag.resize(rows);
    for (int i = 0; i < rows; ++i) {
        const int t = first + i;
        const double z = b[t - 1] - beta * g[t - 1];
        r.X(i, 0) = 1.0;
        r.X(i, 1) = z;
        r.zLag(i) = z;
        for (int l = 1; l <= q; ++l) {
            r.X(i, 2 * l) = b[t - l] - b[t - l - 1];
            r.X(i, 2 * l + 1) = g[t - l] - g[t - l - 1];
        }
        r.Y(i, 0) = b[t] - b[t - 1];
        r.Y(i, 1) = g[t] - g[t - 1];
    }
    r.columnNames = regressor_names(q, panel.benchmark().label(), panel.target().label());
    return r;
}

}  // namespace tcoint
