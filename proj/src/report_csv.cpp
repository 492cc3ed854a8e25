#include "hyperest/report_csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperest/errors.hpp"

namespace hyperest {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

double parse_field(const std::string& s) {
  if (s.empty()) return std::nan("");
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad number '" + s + "'");
  }
}

}  // namespace

bool CsvRow::operator==(const CsvRow& o) const {
  return level == o.level && same(h, o.h) && same(tau, o.tau) && q == o.q && flux == o.flux &&
         same(error_l2, o.error_l2) && same(residual_l2, o.residual_l2) && same(recon_gap, o.recon_gap) &&
         same(estimator_bound, o.estimator_bound) && same(eoc_error, o.eoc_error) &&
         same(eoc_residual, o.eoc_residual) && in_box == o.in_box;
}

std::vector<CsvRow> csv_rows(const RunReport& report) {
  std::vector<CsvRow> rows;
  const double nan = std::nan("");
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    const LevelResult& lv = report.levels[k];
    CsvRow r;
    r.level = lv.level;
    r.h = lv.h;
    r.tau = lv.tau;
    r.q = report.config.q;
    r.flux = to_string(report.config.flux.kind);
    r.error_l2 = lv.ok ? lv.error_l2 : nan;
    r.residual_l2 = lv.ok ? lv.residual_l2 : nan;
    r.recon_gap = lv.ok ? lv.recon_gap : nan;
    r.estimator_bound = lv.ok ? lv.estimator_bound : nan;
    r.eoc_error = k < report.eoc_error.size() ? report.eoc_error[k] : nan;
    r.eoc_residual = k < report.eoc_residual.size() ? report.eoc_residual[k] : nan;
    r.in_box = lv.ok && lv.in_box;
    rows.push_back(r);
  }
  return rows;
}

std::string write_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const CsvRow& r : rows) {
    out << r.level << ',' << format_double(r.h) << ',' << format_double(r.tau) << ',' << r.q << ',' << r.flux << ','
        << format_double(r.error_l2) << ',' << format_double(r.residual_l2) << ',' << format_double(r.recon_gap)
        << ',' << format_double(r.estimator_bound) << ',' << format_double(r.eoc_error) << ','
        << format_double(r.eoc_residual) << ',' << (r.in_box ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("CSV header mismatch");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 12) throw ConfigError("CSV line with " + std::to_string(f.size()) + " fields");
    CsvRow r;
    r.level = static_cast<int>(parse_field(f[0]));
    r.h = parse_field(f[1]);
    r.tau = parse_field(f[2]);
    r.q = static_cast<int>(parse_field(f[3]));
    r.flux = f[4];
    r.error_l2 = parse_field(f[5]);
    r.residual_l2 = parse_field(f[6]);
    r.recon_gap = parse_field(f[7]);
    r.estimator_bound = parse_field(f[8]);
    r.eoc_error = parse_field(f[9]);
    r.eoc_residual = parse_field(f[10]);
    if (f[11] != "0" && f[11] != "1") throw ConfigError("in_box must be 0 or 1");
    r.in_box = f[11] == "1";
    rows.push_back(r);
  }
  return rows;
}

std::vector<CsvRow> recompute_eoc(std::vector<CsvRow> rows) {
  std::vector<std::pair<double, double>> err, res;
  for (const CsvRow& r : rows) {
    err.emplace_back(r.h, r.error_l2);
    res.emplace_back(r.h, r.residual_l2);
  }
  const auto e = eoc(err);
  const auto s = eoc(res);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].eoc_error = e[k].eoc;
    rows[k].eoc_residual = s[k].eoc;
  }
  return rows;
}

std::string write_checkpoint_csv(const RunReport& report) {
  std::ostringstream out;
  out << "level,t,error_sq,recon_gap_sq,residual_sq,exp_factor,bound\n";
  for (const LevelResult& lv : report.levels) {
    for (const CheckpointResult& c : lv.checkpoints) {
      out << lv.level << ',' << format_double(c.t) << ',' << format_double(c.error_sq) << ','
          << format_double(c.recon_gap_sq) << ',' << format_double(c.residual_sq) << ','
          << format_double(c.exp_factor) << ',' << format_double(c.bound) << '\n';
    }
  }
  return out.str();
}

void write_plot_data(const RunReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto curve = [&](const std::string& name, auto value) {
    std::ofstream out(fs::path(dir) / (name + ".dat"));
    for (const LevelResult& lv : report.levels) {
      if (lv.ok) out << format_double(lv.h) << ' ' << format_double(value(lv)) << '\n';
    }
  };
  curve("error_l2", [](const LevelResult& l) { return l.error_l2; });
  curve("residual_l2", [](const LevelResult& l) { return l.residual_l2; });
  curve("recon_gap", [](const LevelResult& l) { return l.recon_gap; });
  curve("estimator_bound", [](const LevelResult& l) { return l.estimator_bound; });
  for (const LevelResult& lv : report.levels) {
    if (!lv.ok) continue;
    std::ofstream out(fs::path(dir) / ("sup_dx_level" + std::to_string(lv.level) + ".dat"));
    for (std::size_t n = 0; n < lv.sup_dx.size(); ++n) {
      out << format_double((n + 0.5) * lv.tau) << ' ' << format_double(lv.sup_dx[n]) << '\n';
    }
  }
}

}  // namespace hyperest
