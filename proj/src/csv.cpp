#include <charconv>
#include <cstdio>
#include <sstream>

#include "tunnel/experiment.hpp"

namespace tunnel {

namespace {

constexpr const char* kColumns[] = {
    "lambda[k_M L]",          "w_ratio[sqrt(V0/E_M)]", "kappa_bar[k_M]",
    "tau_spm[hbar/E_M]",      "tau_spm_full[hbar/E_M]", "tau_spm_note",
    "tau_new[hbar/E_M]",      "tau_new_reduced[hbar/E_M]", "tau_num[hbar/E_M]",
    "v_transit[sqrt(V0/2m)]", "ratio_ana_num[1]",       "density_peak[arb]",
    "panels",                 "refine_steps",           "status"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("CSV: not a number: '" + s + "'");
  return v;
}

std::optional<double> to_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return to_double(s);
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("CSV: not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string to_csv_line(const ResultRow& r) {
  const std::string fields[] = {format_number(r.lambda),
                                format_number(r.w_ratio),
                                format_optional(r.kappa_bar),
                                format_optional(r.tau_spm),
                                format_optional(r.tau_spm_full),
                                r.spm_note,
                                format_optional(r.tau_new),
                                format_optional(r.tau_new_reduced),
                                format_optional(r.tau_num),
                                format_optional(r.v_transit),
                                format_optional(r.ratio_ana_num),
                                format_optional(r.density_peak),
                                std::to_string(r.panels),
                                std::to_string(r.refine_steps),
                                r.status};
  std::string out;
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i) out += ',';
    out += quote(fields[i]);
  }
  return out;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) out += to_csv_line(r) + "\n";
  return out;
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != csv_header()) throw ConfigError("CSV: unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != kColumnCount)
      throw ConfigError("CSV: expected " + std::to_string(kColumnCount) + " fields, got " +
                        std::to_string(f.size()));
    ResultRow r;
    r.lambda = to_double(f[0]);
    r.w_ratio = to_double(f[1]);
    r.kappa_bar = to_optional(f[2]);
    r.tau_spm = to_optional(f[3]);
    r.tau_spm_full = to_optional(f[4]);
    r.spm_note = f[5];
    r.tau_new = to_optional(f[6]);
    r.tau_new_reduced = to_optional(f[7]);
    r.tau_num = to_optional(f[8]);
    r.v_transit = to_optional(f[9]);
    r.ratio_ana_num = to_optional(f[10]);
    r.density_peak = to_optional(f[11]);
    r.panels = to_int(f[12]);
    r.refine_steps = to_int(f[13]);
    r.status = f[14];
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ConfigError("CSV: missing header");
  return rows;
}

std::string trace_to_csv(const DensityTrace& trace) {
  std::string out = "tau[hbar/E_M],density[arb]\n";
  for (std::size_t i = 0; i < trace.tau.size(); ++i)
    out += format_number(trace.tau[i]) + "," + format_number(trace.density[i]) + "\n";
  return out;
}

}  // namespace tunnel
