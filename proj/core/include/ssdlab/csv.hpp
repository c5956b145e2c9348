#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ssdlab/metrics.hpp"
#include "ssdlab/schelling.hpp"
#include "ssdlab/theory.hpp"

namespace ssdlab {

enum class ColumnType { Integer, Real, OptionalReal, Boolean, Text };

struct Column {
  std::string_view name;
  ColumnType type;
};

struct CsvSchema {
  std::string_view name;
  std::vector<Column> columns;

  std::string header() const;
};

const CsvSchema& metrics_schema();
const CsvSchema& diagram_schema();
const CsvSchema& verdict_schema();
const CsvSchema& theory_schema();
const CsvSchema& button_schema();
std::vector<const CsvSchema*> all_schemas();

// Checks the header and every row against the schema. Throws ParseError at the
// first offending line.
void validate_csv(std::string_view text, const CsvSchema& schema);

// Row writers. Each returns one line without the trailing newline.
std::string metrics_row(int episode, int worker, const MetricsRow& m);
std::string diagram_rows(const SchellingDiagram& d);  // all rows, newline-terminated
std::string verdict_row(std::string_view source, const SsdVerdict& v);
std::string theory_rows(std::string_view transform, const std::vector<TheoryRow>& rows,
                        const TransformedPayoffs& t);

}  // namespace ssdlab
