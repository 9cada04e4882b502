#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcoint/suplm.hpp"
#include "tcoint/tvecm.hpp"

namespace tcoint {

/// printf("%.*f") without a negative zero.
std::string format_fixed(double x, int decimals);

/// Two decimals, or three when the value would otherwise print as zero
/// (so an exact zero reads "0.000"). "n/a" for NaN.
std::string format_coefficient(double x);

/// "est (se)".
std::string format_estimate(const CoefficientCell& c);

/// Percentage with one decimal; anything below 0.05% prints "<0.1%".
std::string format_percent(double p);

std::string format_test_table(std::span<const TestTableRow> rows);
nlohmann::json test_table_json(std::span<const MarketTest> results);

std::string format_fit_table(std::span<const FitTableRow> rows);
nlohmann::json fit_table_json(std::span<const FitTableRow> rows);

}  // namespace tcoint
