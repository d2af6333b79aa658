#include "mobility/report.hpp"

#include <cstdio>

#include <json.hpp>

#include "mobility/error.hpp"
#include "mobility/format.hpp"

namespace mobility {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

// Emits "key": value members with a fixed indent and comma placement.
class ObjectWriter {
 public:
  ObjectWriter(std::string& out, int indent) : out_(out), indent_(indent) { out_ += "{"; }

  void raw(std::string_view key, std::string_view value) {
    out_ += first_ ? "\n" : ",\n";
    first_ = false;
    out_.append(static_cast<std::size_t>(indent_ + 2), ' ');
    out_ += quote(key);
    out_ += ": ";
    out_ += value;
  }
  void number(std::string_view key, double v) { raw(key, format_number(v)); }
  void integer(std::string_view key, std::uint64_t v) { raw(key, std::to_string(v)); }
  void string(std::string_view key, std::string_view v) { raw(key, quote(v)); }

  void close() {
    if (!first_) {
      out_ += "\n";
      out_.append(static_cast<std::size_t>(indent_), ' ');
    }
    out_ += "}";
  }

 private:
  std::string& out_;
  int indent_;
  bool first_ = true;
};

std::string params_json(const ModelParams& p, int indent) {
  std::string s;
  ObjectWriter w(s, indent);
  w.number("mu_p", p.mu_p());
  w.number("sigma_p", p.sigma_p());
  w.number("mu_c", p.mu_c());
  w.number("sigma_c", p.sigma_c());
  w.number("rho", p.rho());
  w.close();
  return s;
}

std::string fit_json(const RegressionFit& f, int indent) {
  std::string s;
  ObjectWriter w(s, indent);
  w.number("alpha", f.alpha);
  w.number("beta", f.beta);
  w.integer("n", f.n);
  w.number("residual_variance", f.residual_variance);
  w.close();
  return s;
}

std::string measure_json(const MobilityReport& m, int indent) {
  std::string s;
  ObjectWriter w(s, indent);
  w.string("source", to_string(m.source));
  w.number("beta", m.beta);
  w.number("alpha", m.alpha);
  w.number("relative_mobility", m.relative_mobility);
  w.number("absolute_mobility", m.absolute_mobility);
  if (m.absolute_mobility_std_error) {
    w.number("absolute_mobility_std_error", *m.absolute_mobility_std_error);
  }
  w.close();
  return s;
}

std::string to_json(const ReportDocument& doc) {
  std::string out;
  ObjectWriter top(out, 0);
  top.integer("schema_version", kReportSchemaVersion);

  std::string meta;
  ObjectWriter m(meta, 2);
  m.string("tool_version", doc.metadata.tool_version);
  m.raw("seed", doc.metadata.seed ? std::to_string(*doc.metadata.seed) : "null");
  m.raw("n", doc.metadata.n ? std::to_string(*doc.metadata.n) : "null");
  m.raw("timestamp", doc.metadata.timestamp ? quote(*doc.metadata.timestamp) : "null");
  m.close();
  top.raw("metadata", meta);

  top.raw("params", doc.params ? params_json(*doc.params, 2) : "null");
  top.raw("fit", doc.fit ? fit_json(*doc.fit, 2) : "null");

  std::string measures = "[";
  for (std::size_t i = 0; i < doc.measures.size(); ++i) {
    measures += i == 0 ? "\n    " : ",\n    ";
    measures += measure_json(doc.measures[i], 4);
  }
  measures += doc.measures.empty() ? "]" : "\n  ]";
  top.raw("measures", measures);
  top.close();
  out += "\n";
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string to_csv(const ReportDocument& doc) {
  std::string out = "section,source,key,value\n";
  const auto row = [&](std::string_view section, std::string_view source, std::string_view key,
                       const std::string& value) {
    out += section;
    out += ',';
    out += source;
    out += ',';
    out += key;
    out += ',';
    out += value;
    out += '\n';
  };
  row("metadata", "", "schema_version", std::to_string(kReportSchemaVersion));
  row("metadata", "", "tool_version", csv_field(doc.metadata.tool_version));
  if (doc.metadata.seed) row("metadata", "", "seed", std::to_string(*doc.metadata.seed));
  if (doc.metadata.n) row("metadata", "", "n", std::to_string(*doc.metadata.n));
  if (doc.metadata.timestamp) row("metadata", "", "timestamp", csv_field(*doc.metadata.timestamp));
  if (doc.params) {
    const ModelParams& p = *doc.params;
    row("params", "", "mu_p", format_number(p.mu_p()));
    row("params", "", "sigma_p", format_number(p.sigma_p()));
    row("params", "", "mu_c", format_number(p.mu_c()));
    row("params", "", "sigma_c", format_number(p.sigma_c()));
    row("params", "", "rho", format_number(p.rho()));
  }
  if (doc.fit) {
    row("fit", "", "alpha", format_number(doc.fit->alpha));
    row("fit", "", "beta", format_number(doc.fit->beta));
    row("fit", "", "n", std::to_string(doc.fit->n));
    row("fit", "", "residual_variance", format_number(doc.fit->residual_variance));
  }
  for (const MobilityReport& m : doc.measures) {
    const auto src = to_string(m.source);
    row("measure", src, "beta", format_number(m.beta));
    row("measure", src, "alpha", format_number(m.alpha));
    row("measure", src, "relative_mobility", format_number(m.relative_mobility));
    row("measure", src, "absolute_mobility", format_number(m.absolute_mobility));
    if (m.absolute_mobility_std_error) {
      row("measure", src, "absolute_mobility_std_error",
          format_number(*m.absolute_mobility_std_error));
    }
  }
  return out;
}

using nlohmann::json;

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(0, key, std::string("report: missing member '") + key + "'");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key) {
  const json& v = member(obj, key);
  if (!v.is_number()) throw ParseError(0, key, std::string("report: '") + key + "' not a number");
  return v.get<double>();
}

}  // namespace

std::string write_report(const ReportDocument& doc, ReportFormat format) {
  return format == ReportFormat::json ? to_json(doc) : to_csv(doc);
}

ReportDocument read_report_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, "", std::string("report: ") + e.what());
  }
  try {
    if (member(root, "schema_version").get<int>() != kReportSchemaVersion) {
      throw ParseError(0, "schema_version", "report: unsupported schema_version");
    }
    ReportDocument doc;
    const json& meta = member(root, "metadata");
    doc.metadata.tool_version = member(meta, "tool_version").get<std::string>();
    if (const json& s = member(meta, "seed"); !s.is_null()) doc.metadata.seed = s.get<std::uint64_t>();
    if (const json& n = member(meta, "n"); !n.is_null()) doc.metadata.n = n.get<std::size_t>();
    if (const json& t = member(meta, "timestamp"); !t.is_null()) {
      doc.metadata.timestamp = t.get<std::string>();
    }
    if (const json& p = member(root, "params"); !p.is_null()) {
      doc.params = ModelParams({.mu_p = number(p, "mu_p"),
                                .sigma_p = number(p, "sigma_p"),
                                .mu_c = number(p, "mu_c"),
                                .sigma_c = number(p, "sigma_c"),
                                .rho = number(p, "rho")});
    }
    if (const json& f = member(root, "fit"); !f.is_null()) {
      doc.fit = RegressionFit{number(f, "alpha"), number(f, "beta"),
                              member(f, "n").get<std::size_t>(), number(f, "residual_variance")};
    }
    for (const json& m : member(root, "measures")) {
      MobilityReport r;
      r.source = source_from_string(member(m, "source").get<std::string>());
      r.beta = number(m, "beta");
      r.alpha = number(m, "alpha");
      r.relative_mobility = number(m, "relative_mobility");
      r.absolute_mobility = number(m, "absolute_mobility");
      if (m.contains("absolute_mobility_std_error")) {
        r.absolute_mobility_std_error = number(m, "absolute_mobility_std_error");
      }
      doc.measures.push_back(r);
    }
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(0, "", std::string("report: ") + e.what());
  }
}

}  // namespace mobility
