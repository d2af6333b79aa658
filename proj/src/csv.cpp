#include "mobility/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "mobility/error.hpp"
#include "mobility/format.hpp"

namespace mobility {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// Splits one physical line into fields. Quoted fields may not span lines.
std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  for (;;) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(line[i++]);
        }
      }
      if (!closed) {
        throw ParseError(line_no, "", "line " + std::to_string(line_no) + ": unterminated quote");
      }
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        throw ParseError(line_no, "",
                         "line " + std::to_string(line_no) + ": text after closing quote");
      }
    } else {
      const auto comma = line.find(',', i);
      const auto end = comma == std::string_view::npos ? line.size() : comma;
      field = std::string(trim(line.substr(i, end - i)));
      i = end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // skip comma
  }
  return fields;
}

std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;  // UTF-8 BOM
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    if (line.ends_with('\r')) line.remove_suffix(1);
    ++line_no;
    if (!trim(line).empty()) out.emplace_back(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::string describe(const ColumnRef& ref) {
  if (const auto* name = std::get_if<std::string>(&ref)) return "'" + *name + "'";
  return "#" + std::to_string(std::get<std::size_t>(ref));
}

std::size_t resolve(const ColumnRef& ref, const std::vector<std::string>* header) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) {
    if (header && *index >= header->size()) {
      throw MissingColumn("column index " + std::to_string(*index) + " beyond header width " +
                          std::to_string(header->size()));
    }
    return *index;
  }
  const auto& name = std::get<std::string>(ref);
  if (!header) throw MissingColumn("column " + describe(ref) + " requested but file has no header");
  for (std::size_t i = 0; i < header->size(); ++i) {
    if ((*header)[i] == name) return i;
  }
  throw MissingColumn("column " + describe(ref) + " not found in header");
}

double parse_cell(const std::string& cell, std::size_t line_no, const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(line_no, column,
                     "line " + std::to_string(line_no) + ", column " + column +
                         ": not a finite number: '" + cell + "'");
  }
  return value;
}

}  // namespace

Sample parse_csv(std::string_view text, const DatasetSpec& spec) {
  const auto lines = lines_of(text);
  std::size_t next = 0;
  std::vector<std::string> header;
  if (spec.has_header) {
    if (lines.empty()) throw InsufficientData("file is empty");
    header = split_fields(lines[0].second, lines[0].first);
    next = 1;
  }
  const std::vector<std::string>* header_ptr = spec.has_header ? &header : nullptr;
  const std::size_t pcol = resolve(spec.parent_column, header_ptr);
  const std::size_t ccol = resolve(spec.child_column, header_ptr);
  if (pcol == ccol) throw InvalidArgument("parent and child columns must differ");
  const std::string pname = spec.has_header ? header[pcol] : std::to_string(pcol);
  const std::string cname = spec.has_header ? header[ccol] : std::to_string(ccol);

  std::vector<double> parent;
  std::vector<double> child;
  parent.reserve(lines.size());
  child.reserve(lines.size());
  for (; next < lines.size(); ++next) {
    const auto [line_no, line] = lines[next];
    const auto fields = split_fields(line, line_no);
    if (fields.size() <= std::max(pcol, ccol)) {
      throw ParseError(line_no, fields.size() <= pcol ? pname : cname,
                       "line " + std::to_string(line_no) + ": expected at least " +
                           std::to_string(std::max(pcol, ccol) + 1) + " fields, got " +
                           std::to_string(fields.size()));
    }
    const double p = parse_cell(fields[pcol], line_no, pname);
    const double c = parse_cell(fields[ccol], line_no, cname);
    if (spec.income_scale == IncomeScale::raw_money) {
      for (const auto& [v, name] : {std::pair{p, pname}, std::pair{c, cname}}) {
        if (!(v > 0.0)) {
          throw NonPositiveIncome(line_no, "line " + std::to_string(line_no) + ", column " +
                                               name + ": income must be > 0");
        }
      }
    }
    parent.push_back(p);
    child.push_back(c);
  }
  if (spec.income_scale == IncomeScale::raw_money) {
    return IncomeSample(std::move(parent), std::move(child));
  }
  return LogIncomeSample(std::move(parent), std::move(child));
}

Sample load_csv(const DatasetSpec& spec) {
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + spec.path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + spec.path.string() + "'");
  return parse_csv(buf.str(), spec);
}

std::string write_sample_csv(const LogIncomeSample& sample, IncomeScale scale) {
  std::string out = "parent,child\n";
  out.reserve(out.size() + sample.size() * 48);
  const auto parent = sample.parent();
  const auto child = sample.child();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const bool raw = scale == IncomeScale::raw_money;
    out += format_number(raw ? std::exp(parent[i]) : parent[i]);
    out += ',';
    out += format_number(raw ? std::exp(child[i]) : child[i]);
    out += '\n';
  }
  return out;
}

LogIncomeSample as_log_sample(const Sample& sample) {
  if (const auto* raw = std::get_if<IncomeSample>(&sample)) return log_transform(*raw);
  return std::get<LogIncomeSample>(sample);
}

}  // namespace mobility
