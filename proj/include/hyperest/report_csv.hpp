#pragma once

#include <string>
#include <vector>

#include "hyperest/experiments.hpp"

namespace hyperest {

inline constexpr const char* kCsvHeader =
    "level,h,tau,q,flux,error_l2,residual_l2,recon_gap,estimator_bound,eoc_error,eoc_residual,in_box";

/// One line of the study CSV. NaN values are written as empty fields.
struct CsvRow {
  int level = 0;
  double h = 0.0;
  double tau = 0.0;
  int q = 0;
  std::string flux;
  double error_l2 = 0.0;
  double residual_l2 = 0.0;
  double recon_gap = 0.0;
  double estimator_bound = 0.0;
  double eoc_error = 0.0;
  double eoc_residual = 0.0;
  bool in_box = false;

  /// Field-wise equality with NaN == NaN.
  bool operator==(const CsvRow& other) const;
};

std::vector<CsvRow> csv_rows(const RunReport& report);
std::string write_csv(const std::vector<CsvRow>& rows);
/// Throws ConfigError on a wrong header or malformed line.
std::vector<CsvRow> parse_csv(const std::string& text);

/// Recomputes both EOC columns from the h, error and residual columns.
std::vector<CsvRow> recompute_eoc(std::vector<CsvRow> rows);

/// level,t,error_sq,recon_gap_sq,residual_sq,exp_factor,bound
std::string write_checkpoint_csv(const RunReport& report);

/// Two-column files (h, value) per curve plus (t, sup) histories, written to `dir`.
void write_plot_data(const RunReport& report, const std::string& dir);

std::string format_double(double v);

}  // namespace hyperest
