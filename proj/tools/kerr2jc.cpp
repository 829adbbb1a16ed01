#include <iostream>

#include "CLI11.hpp"

#include "kerr2jc/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kerr-type two-photon Jaynes-Cummings simulator"};
  kerr2jc::Invocation inv;
  int n_max = 0;
  unsigned workers = 0;

  app.add_option("task", inv.task, "spectrum | steady | correlate | sweep | classify | figure")->required();
  app.add_option("--config", inv.config, "configuration file (sectioned key = value text or JSON sidecar)")
      ->required();
  app.add_option("--out", inv.out_dir, "output directory")->required();
  auto* n_max_opt = app.add_option("--n-max", n_max, "Fock truncation, overrides numerics.n_max");
  auto* workers_opt = app.add_option("--workers", workers, "sweep worker threads (default: KERR2JC_WORKERS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kerr2jc::kExitConfigError;
  }
  if (*n_max_opt) inv.n_max = n_max;
  if (*workers_opt) inv.workers = workers;
  return kerr2jc::run(inv, std::cerr);
}
