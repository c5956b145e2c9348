#include "ssdlab/csv.hpp"

#include <charconv>

#include "ssdlab/config.hpp"
#include "ssdlab/errors.hpp"

namespace ssdlab {

std::string CsvSchema::header() const {
  std::string out;
  for (const auto& c : columns) {
    if (!out.empty()) out += ',';
    out += c.name;
  }
  return out;
}

const CsvSchema& metrics_schema() {
  static const CsvSchema s{"metrics",
                           {{"episode", ColumnType::Integer},
                            {"worker", ColumnType::Integer},
                            {"utilitarian", ColumnType::Real},
                            {"equality", ColumnType::Real},
                            {"sustainability", ColumnType::Real},
                            {"contribution", ColumnType::OptionalReal},
                            {"apples", ColumnType::Integer},
                            {"fines", ColumnType::Integer},
                            {"negative_total", ColumnType::Boolean}}};
  return s;
}

const CsvSchema& diagram_schema() {
  static const CsvSchema s{"diagram",
                           {{"l", ColumnType::Integer},
                            {"cooperators_incl_self", ColumnType::Integer},
                            {"rc", ColumnType::Real},
                            {"rc_stderr", ColumnType::OptionalReal},
                            {"rd", ColumnType::Real},
                            {"rd_stderr", ColumnType::OptionalReal}}};
  return s;
}

const CsvSchema& verdict_schema() {
  static const CsvSchema s{"verdict",
                           {{"source", ColumnType::Text},
                            {"is_ssd", ColumnType::Text},
                            {"mutual_cooperation", ColumnType::Text},
                            {"cooperation_beats_exploited", ColumnType::Text},
                            {"fear", ColumnType::Text},
                            {"greed", ColumnType::Text}}};
  return s;
}

const CsvSchema& theory_schema() {
  static const CsvSchema s{"theory",
                           {{"transform", ColumnType::Text},
                            {"x", ColumnType::Real},
                            {"cooperator", ColumnType::Real},
                            {"defector", ColumnType::Real},
                            {"average", ColumnType::Real},
                            {"crossing", ColumnType::OptionalReal},
                            {"interior", ColumnType::Boolean}}};
  return s;
}

const CsvSchema& button_schema() {
  static const CsvSchema s{"buttons",
                           {{"game", ColumnType::Text},
                            {"population", ColumnType::Text},
                            {"episodes", ColumnType::Integer},
                            {"press_frequency", ColumnType::Real},
                            {"owner_return", ColumnType::Real},
                            {"other_return", ColumnType::Real}}};
  return s;
}

std::vector<const CsvSchema*> all_schemas() {
  return {&metrics_schema(), &diagram_schema(), &verdict_schema(), &theory_schema(),
          &button_schema()};
}

namespace {

bool is_integer(std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  return !v.empty() && ec == std::errc{} && ptr == v.data() + v.size();
}

bool is_real(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  return !v.empty() && ec == std::errc{} && ptr == v.data() + v.size();
}

bool matches(ColumnType type, std::string_view v) {
  switch (type) {
    case ColumnType::Integer: return is_integer(v);
    case ColumnType::Real: return is_real(v);
    case ColumnType::OptionalReal: return v.empty() || is_real(v);
    case ColumnType::Boolean: return v == "true" || v == "false";
    case ColumnType::Text: return v.find_first_of(",\"\n") == std::string_view::npos;
  }
  return false;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string opt(double v, bool present) { return present ? format_double(v) : std::string(); }

}  // namespace

void validate_csv(std::string_view text, const CsvSchema& schema) {
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != schema.header()) {
        throw ParseError("header does not match the " + std::string(schema.name) + " schema",
                         line_no);
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != schema.columns.size()) {
      throw ParseError("expected " + std::to_string(schema.columns.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::size_t col = 1;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!matches(schema.columns[i].type, fields[i])) {
        throw ParseError("bad value '" + std::string(fields[i]) + "' in column " +
                             std::string(schema.columns[i].name),
                         line_no, col);
      }
      col += fields[i].size() + 1;
    }
  }
  if (!header_seen) throw ParseError("missing header", 1);
}

std::string metrics_row(int episode, int worker, const MetricsRow& m) {
  return std::to_string(episode) + ',' + std::to_string(worker) + ',' +
         format_double(m.utilitarian) + ',' + format_double(m.equality) + ',' +
         format_double(m.sustainability) + ',' +
         opt(m.contribution.value_or(0.0), m.contribution.has_value()) + ',' +
         std::to_string(m.apples) + ',' + std::to_string(m.fines) + ',' +
         (m.negative_total ? "true" : "false");
}

std::string diagram_rows(const SchellingDiagram& d) {
  std::string out;
  for (int l = 0; l < d.num_players; ++l) {
    const auto i = static_cast<std::size_t>(l);
    out += std::to_string(l) + ',' + std::to_string(l + 1) + ',' + format_double(d.cooperator[i]) +
           ',' + opt(d.has_errors() ? d.cooperator_stderr[i] : 0.0, d.has_errors()) + ',' +
           format_double(d.defector[i]) + ',' +
           opt(d.has_errors() ? d.defector_stderr[i] : 0.0, d.has_errors()) + '\n';
  }
  return out;
}

std::string verdict_row(std::string_view source, const SsdVerdict& v) {
  return std::string(source) + ',' + std::string(to_string(v.is_ssd)) + ',' +
         std::string(to_string(v.mutual_cooperation_beats_defection)) + ',' +
         std::string(to_string(v.cooperation_beats_exploited)) + ',' +
         std::string(to_string(v.fear)) + ',' + std::string(to_string(v.greed));
}

std::string theory_rows(std::string_view transform, const std::vector<TheoryRow>& rows,
                        const TransformedPayoffs& t) {
  std::string out;
  for (const auto& r : rows) {
    out += std::string(transform) + ',' + format_double(r.x) + ',' + format_double(r.cooperator) +
           ',' + format_double(r.defector) + ',' + format_double(r.average) + ',' +
           opt(t.crossing.value_or(0.0), t.crossing.has_value()) + ',' +
           (t.interior ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace ssdlab
