#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tcoint {

/// Calendar key parsed from "YYYY-MM" or "YYYY-MM-DD". Only the ordering is
/// used downstream; `text` keeps the original spelling for output.
struct Timestamp {
    int year = 0;
    int month = 0;
    int day = 0;  ///< 0 for monthly keys
    std::string text;

    static Timestamp parse(std::string_view s);
    static Timestamp monthly(int year, int month);

    friend bool operator==(const Timestamp& a, const Timestamp& b) {
        return a.year == b.year && a.month == b.month && a.day == b.day;
    }
    friend std::strong_ordering operator<=>(const Timestamp& a, const Timestamp& b) {
        if (auto c = a.year <=> b.year; c != 0) return c;
        if (auto c = a.month <=> b.month; c != 0) return c;
        return a.day <=> b.day;
    }
};

/// Ordered, finite observations of one price index.
class Series {
public:
    explicit Series(std::vector<double> values, std::string label = {});

    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<double> values_;
    std::string label_;
};

/// Aligned bivariate system X_t = (benchmark_t, target_t).
class Panel {
public:
    Panel(std::vector<Timestamp> timestamps, Series benchmark, Series target);

    [[nodiscard]] std::size_t size() const { return timestamps_.size(); }
    [[nodiscard]] const std::vector<Timestamp>& timestamps() const { return timestamps_; }
    [[nodiscard]] const Series& benchmark() const { return benchmark_; }
    [[nodiscard]] const Series& target() const { return target_; }

    /// T x 2 matrix of levels, benchmark in column 0.
    [[nodiscard]] Eigen::MatrixXd levels() const;

    friend bool operator==(const Panel&, const Panel&) = default;

private:
    std::vector<Timestamp> timestamps_;
    Series benchmark_;
    Series target_;
};

/// Builds a panel from a T x 2 level matrix with monthly keys starting at
/// `start` ("YYYY-MM").
Panel panel_from_levels(const Eigen::MatrixXd& levels, const std::string& start,
                        const std::string& benchmarkLabel, const std::string& targetLabel);

/// Natural log of both series; every value must be positive.
Panel log_transform(const Panel& panel);

Panel load_panel(const std::filesystem::path& path, const std::string& benchmarkColumn,
                 const std::string& targetColumn, const std::string& dateColumn = "date");
Panel read_panel_csv(std::istream& in, const std::string& benchmarkColumn,
                     const std::string& targetColumn, const std::string& dateColumn = "date",
                     const std::string& sourceName = "<stream>");

/// Writes `date,<benchmark label>,<target label>` with shortest round-trip
/// number formatting, so load_panel recovers the panel exactly.
void write_panel_csv(const Panel& panel, std::ostream& out, const std::string& dateColumn = "date");
void save_panel(const Panel& panel, const std::filesystem::path& path,
                const std::string& dateColumn = "date");

/// First differences: out[t] = in[t+1] - in[t].
Series difference(const Series& series);
std::vector<double> difference(std::span<const double> values);

/// Regressor layout of the error-correction model. Row for time t holds
/// (1, z_{t-1}, dX_{t-1}, ..., dX_{t-q}) with dX = (d benchmark, d target),
/// and the response row is dX_t.
struct RegressorSet {
    Eigen::MatrixXd X;          ///< T_eff x (2 + 2q)
    Eigen::MatrixXd Y;          ///< T_eff x 2
    Eigen::VectorXd zLag;       ///< z_{t-1}, same as column 1 of X
    int q = 0;
    int firstIndex = 0;         ///< sample index of the first response row
    std::vector<std::string> columnNames;

    [[nodiscard]] int rows() const { return static_cast<int>(X.rows()); }
};

/// z_t = benchmark_t - beta * target_t.
std::vector<double> error_correction(const Panel& panel, double beta);

/// `alignLag` >= q drops leading rows so fits with different q share a
/// sample (pass -1 for alignLag = q).
RegressorSet build_regressors(const Panel& panel, int q, double beta, int alignLag = -1);

std::vector<std::string> regressor_names(int q, const std::string& benchmarkLabel,
                                         const std::string& targetLabel);

}  // namespace tcoint
