#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cwig/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"curved-wigner: Wigner quasiprobability functions and invariant "
               "position/momentum/phase-space entropies on 1D Riemannian slices"};
  app.require_subcommand(1);

  cwig::report::RunConfig rc;
  std::string format = "csv";

  auto add_io = [&rc, &format](CLI::App* cmd) {
    cmd->add_option("--tol", rc.tol, "quadrature tolerance (absolute and relative)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", rc.out_path, "output path (default: stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* qc = app.add_subcommand("quasientropy-curve",
                                "two-state quasientropy as a function of one weight");
  qc->add_option("--p-min", rc.p_min, "lower quasiprobability");
  qc->add_option("--p-max", rc.p_max, "upper quasiprobability");
  qc->add_option("--steps", rc.steps, "number of samples")->check(CLI::Range(2, 1000000));
  add_io(qc);

  auto* fl = app.add_subcommand("flat-levels",
                                "flat-oscillator entropies for levels 0..n_max");
  fl->add_option("--n-max", rc.n_max, "highest level")->check(CLI::Range(0, 10));
  fl->add_option("--alpha", rc.alpha, "oscillator scale sqrt(kappa m)/hbar")
      ->check(CLI::PositiveNumber);
  add_io(fl);

  auto* al = app.add_subcommand("ads2-levels",
                                "AdS2 ground-state entropies for levels 1..j_max");
  al->add_option("--j-max", rc.j_max, "highest level")->check(CLI::Range(1, 8));
  al->add_option("--radius", rc.radius, "curvature radius R")->check(CLI::PositiveNumber);
  add_io(al);

  auto* wg = app.add_subcommand("wigner-grid", "sample a Wigner function on a grid");
  wg->add_option("--geometry", rc.geometry, "flat|ads2")
      ->check(CLI::IsMember({"flat", "ads2"}));
  wg->add_option("--n", rc.n, "flat level")->check(CLI::Range(0, 40));
  wg->add_option("--j", rc.j, "AdS2 level")->check(CLI::Range(1, 12));
  wg->add_option("--alpha", rc.alpha, "oscillator scale (flat)")->check(CLI::PositiveNumber);
  wg->add_option("--radius", rc.radius, "curvature radius (ads2)")
      ->check(CLI::PositiveNumber);
  wg->add_option("--x-min", rc.x_min);
  wg->add_option("--x-max", rc.x_max);
  wg->add_option("--p-min", rc.grid_p_min);
  wg->add_option("--p-max", rc.grid_p_max);
  wg->add_option("--nx", rc.nx)->check(CLI::Range(2, 100000));
  wg->add_option("--np", rc.np)->check(CLI::Range(2, 100000));
  add_io(wg);

  auto* vf = app.add_subcommand("verify", "run the numerical verification suites");
  vf->add_option("--suite", rc.suite, "all|bounds|marginals|closedforms")
      ->check(CLI::IsMember({"all", "bounds", "marginals", "closedforms"}));
  vf->add_option("--perturb-entropy", rc.perturb_entropy,
                 "testing aid: bias added to computed entropies before the checks");
  add_io(vf);

  CLI11_PARSE(app, argc, argv);

  rc.command = app.get_subcommands().front()->get_name();
  rc.format = (format == "json") ? cwig::report::Format::json : cwig::report::Format::csv;
  return cwig::report::run_command(rc, std::cout, std::cerr);
}
