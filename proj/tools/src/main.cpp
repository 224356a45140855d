#include <cstdint>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rejectron/cli.hpp"
#include "rejectron/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"online active learning of linear and kernel classifiers with a reject option"};
  app.set_version_flag("--version", std::string(rejectron::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string suite;
  std::string csv_dir;
  std::uint64_t seed = 42;
  unsigned jobs = 1;

  auto* run = app.add_subcommand("run", "stream one configuration and write metric csvs");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  auto* run_seed = run->add_option("--seed", seed, "override the config seed");
  auto* run_jobs = run->add_option("--jobs", jobs, "parallel repetitions");

  auto* bench = app.add_subcommand("bench", "run a d-sweep directory and check trends");
  bench->add_option("--config", config_path, "directory of sweep .cfg files")->required();
  bench->add_option("--out", out_dir, "output directory")->required();
  auto* bench_seed = bench->add_option("--seed", seed, "override the config seeds");
  auto* bench_jobs = bench->add_option("--jobs", jobs, "parallel repetitions");

  auto* verify = app.add_subcommand("verify", "check analytic properties against oracles");
  verify->add_option("--suite", suite, "gradcheck, smoothness, mistake-bounds, regret, or kernel-equivalence")
      ->required();
  verify->add_option("--seed", seed, "base seed for the suite");

  auto* plot = app.add_subcommand("plot", "render metric csvs as svg curves");
  plot->add_option("csv_dir", csv_dir, "directory holding the metric csvs")->required();
  plot->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto opt_seed = [&](CLI::Option* o) {
    return o->count() > 0 ? std::optional<std::uint64_t>(seed) : std::nullopt;
  };
  const auto opt_jobs = [&](CLI::Option* o) {
    return o->count() > 0 ? std::optional<unsigned>(jobs) : std::nullopt;
  };

  if (run->parsed())
    return rejectron::cmd_run(config_path, out_dir, opt_seed(run_seed), opt_jobs(run_jobs));
  if (bench->parsed())
    return rejectron::cmd_bench(config_path, out_dir, opt_seed(bench_seed), opt_jobs(bench_jobs));
  if (verify->parsed()) return rejectron::cmd_verify(suite, seed);
  if (plot->parsed()) return rejectron::cmd_plot(csv_dir, out_dir);
  return 1;
}
