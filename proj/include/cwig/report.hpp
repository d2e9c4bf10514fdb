#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cwig/entropy.hpp"
#include "cwig/quadrature.hpp"

namespace cwig::report {

enum class Format { csv, json };

/// One run of the CLI. Unused fields are ignored by commands that do not
/// read them.
struct RunConfig {
  std::string command;
  std::string geometry = "flat";  // flat | ads2
  int n = 0;                      // flat level for wigner-grid
  int j = 1;                      // AdS2 level for wigner-grid
  int n_max = 5;
  int j_max = 8;
  double radius = 1.0;
  double alpha = 1.0;
  double tol = 1e-8;  // quadrature absolute/relative tolerance
  std::string out_path;
  Format format = Format::csv;
  // quasientropy-curve arguments
  double p_min = -0.5;
  double p_max = 1.5;
  int steps = 201;
  // wigner-grid window
  double x_min = -4.0, x_max = 4.0;
  double grid_p_min = -4.0, grid_p_max = 4.0;
  int nx = 101, np = 101;
  // verify
  std::string suite = "all";
  double perturb_entropy = 0.0;  // test hook: bias added to computed entropies
};

/// Rectangular numeric table plus its provenance block.
struct FigureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> provenance;
};

FigureTable cmd_quasientropy_curve(double p_min, double p_max, int steps);
FigureTable cmd_flat_levels(int n_max, double alpha, const quad::Config& cfg);
FigureTable cmd_ads2_levels(int j_max, double radius, const quad::Config& cfg);
FigureTable cmd_wigner_grid(const RunConfig& rc, const quad::Config& cfg);

void write_csv(const FigureTable& t, std::ostream& os);
void write_json(const FigureTable& t, const RunConfig& rc, std::ostream& os);
std::string entropy_report_json(const entropy::EntropyReport& rep);

/// One verification check: |actual - expected| <= tolerance.
struct CheckResult {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

CheckResult make_check(const std::string& name, double expected, double actual,
                       double tolerance);

// check groups (used by both the verify CLI and the acceptance suite)
std::vector<CheckResult> check_flat_ground(const quad::Config& cfg);
std::vector<CheckResult> check_flat_first_excited(const quad::Config& cfg);
std::vector<CheckResult> check_flat_closed_vs_quadrature(int n_max, const quad::Config& cfg);
std::vector<CheckResult> check_ads2_units_independence(const quad::Config& cfg);
std::vector<CheckResult> check_footnote_integral(const quad::Config& cfg);
std::vector<CheckResult> check_ads2_marginals(const quad::Config& cfg);
std::vector<CheckResult> check_residue_formula(const quad::Config& cfg);
std::vector<CheckResult> check_appendix_identity(int n_max, const quad::Config& cfg);
std::vector<CheckResult> check_normalizations(const quad::Config& cfg);
std::vector<CheckResult> check_bbm_bounds(const quad::Config& cfg, double perturb);
std::vector<CheckResult> check_flat_n1_violation(const quad::Config& cfg, double perturb);
std::vector<CheckResult> check_ads2_decomposition(const quad::Config& cfg, double perturb);
std::vector<CheckResult> check_ads2_level_trend(const quad::Config& cfg, double perturb);
std::vector<CheckResult> check_invariance_suite(const quad::Config& cfg);
std::vector<CheckResult> check_quasientropy_properties();
std::vector<CheckResult> check_hamiltonian_residuals();

/// Runs the named suite (all | bounds | marginals | closedforms); returns
/// the aggregated checks, never short-circuiting on failure.
std::vector<CheckResult> run_verify_suite(const std::string& suite, const quad::Config& cfg,
                                          double perturb_entropy);

std::string checks_to_json(const RunConfig& rc, const std::vector<CheckResult>& checks);

/// Exit-code contract: 0 all checks pass, 1 numerical check failure,
/// 2 configuration error.
int run_command(const RunConfig& rc, std::ostream& out, std::ostream& err);

}  // namespace cwig::report
