#include "rejectron/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rejectron/csv.hpp"
#include "rejectron/harness.hpp"
#include "rejectron/svg.hpp"

namespace rejectron {

namespace {

namespace fs = std::filesystem;

constexpr const char* kMetricFiles[] = {"risk.csv", "fraction_queried.csv",
                                        "fraction_misclassified.csv", "fraction_rejected.csv",
                                        "risk_vs_labels.csv"};

int run_config(const RunConfig& cfg, const std::string& out_dir) {
  try {
    const PreparedDataset ds = prepare_dataset(cfg);
    std::cout << "dataset " << ds.source << ": " << ds.data.size() << " examples, dim "
              << ds.data.dim << "\n";
    std::cout << "running " << cfg.repetitions << " repetitions of " << cfg.T << " trials\n";
    const std::vector<RunResult> runs = run_repetitions(cfg, ds);
    write_run_outputs(cfg, ds, runs, out_dir);
    std::cout << "wrote outputs to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

std::string strip_d_line(const std::string& rendered) {
  std::istringstream is(rendered);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("d=", 0) != 0) os << line << '\n';
  return os.str();
}

// the loss gradient fault seam used by the negative-control fixture
bool fault_flip_gradient() {
  const char* fault = std::getenv("REJECTRON_VERIFY_FAULT");
  return fault != nullptr && std::strcmp(fault, "flip-gradient-sign") == 0;
}

PlotSeries parse_metric_csv(const std::string& path, std::string& x_label) {
  const std::string text = read_text_file(path);
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty csv: " + path);
  const auto first_comma = line.find(',');
  x_label = first_comma == std::string::npos ? line : line.substr(0, first_comma);

  PlotSeries series;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) {
      std::size_t used = 0;
      cells.push_back(std::stod(cell, &used));
      if (used != cell.size())
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number");
    }
    if (cells.size() != 3)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 3 columns");
    series.x.push_back(cells[0]);
    series.mean.push_back(cells[1]);
    series.std_dev.push_back(cells[2]);
  }
  if (series.x.empty()) throw std::runtime_error("csv has no data rows: " + path);
  return series;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, std::optional<unsigned> jobs_override) {
  RunConfig cfg;
  try {
    cfg = parse_config_file(config_path);
    if (seed_override) cfg.base_seed = *seed_override;
    if (jobs_override) cfg.jobs = *jobs_override;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  return run_config(cfg, out_dir);
}

int cmd_bench(const std::string& config_dir, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override, std::optional<unsigned> jobs_override) {
  std::vector<std::pair<std::string, RunConfig>> sweep;
  try {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(config_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".cfg")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw ConfigError("no .cfg files in sweep directory " + config_dir);

    for (const auto& file : files) {
      RunConfig cfg = parse_config_file(file.string());
      if (seed_override) cfg.base_seed = *seed_override;
      if (jobs_override) cfg.jobs = *jobs_override;
      cfg.validate();
      sweep.emplace_back(file.stem().string(), std::move(cfg));
    }

    const std::string shape = strip_d_line(render_config(sweep.front().second));
    std::vector<double> d_values;
    for (const auto& [name, cfg] : sweep) {
      if (strip_d_line(render_config(cfg)) != shape)
        throw ConfigError("sweep configs must differ only in d; " + name + " does not");
      d_values.push_back(cfg.d);
    }
    std::sort(d_values.begin(), d_values.end());
    if (std::adjacent_find(d_values.begin(), d_values.end()) != d_values.end())
      throw ConfigError("sweep configs must use distinct d values");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::vector<std::pair<double, RunAggregate>> by_d;
    for (const auto& [name, cfg] : sweep) {
      std::cout << "sweep " << name << " (d=" << cfg.d << ")\n";
      const PreparedDataset ds = prepare_dataset(cfg);
      const std::vector<RunResult> runs = run_repetitions(cfg, ds);
      write_run_outputs(cfg, ds, runs, (fs::path(out_dir) / name).string());
      by_d.emplace_back(cfg.d, aggregate(runs));
    }
    const ObservationReport report = observation_checks(by_d);
    const std::string text = render_report(report);
    write_text_file((fs::path(out_dir) / "bench_report.txt").string(), text);
    std::cout << text;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  try {
    RunConfig cfg;
    cfg.base_seed = seed;
    std::string text;
    bool passed = false;

    if (suite == "gradcheck") {
      const GradcheckReport report = verify_gradcheck(1000, seed, fault_flip_gradient());
      text = render_report(report);
      passed = report.passed;
    } else if (suite == "smoothness") {
      const SmoothnessReport report = verify_smoothness(5000, seed);
      text = render_report(report);
      passed = report.passed;
    } else if (suite == "mistake-bounds") {
      cfg.learner = LearnerKind::dral;
      cfg.schedule.decrement = 0.0;
      const MistakeBoundReport report = verify_mistake_bounds(cfg);
      text = render_report(report);
      passed = report.passed;
    } else if (suite == "regret") {
      cfg.repetitions = 20;
      bool all = true;
      for (const LearnerKind kind : {LearnerKind::dsal, LearnerKind::dsol}) {
        cfg.learner = kind;
        const RegretReport report = verify_local_regret(cfg);
        text += "learner=" + learner_name(kind) + "\n" + render_report(report);
        all = all && report.passed;
      }
      passed = all;
    } else if (suite == "kernel-equivalence") {
      cfg.T = 1000;
      const EquivalenceReport report = verify_kernel_equivalence(cfg);
      text = render_report(report);
      passed = report.passed;
    } else {
      std::cerr << "config error: unknown suite " << suite << "\n";
      return 1;
    }

    std::cout << text;
    return passed ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_plot(const std::string& csv_dir, const std::string& out_dir) {
  try {
    fs::create_directories(out_dir);
    for (const char* name : kMetricFiles) {
      const fs::path csv_path = fs::path(csv_dir) / name;
      if (!fs::exists(csv_path))
        throw std::runtime_error("missing csv: " + csv_path.string());
      std::string x_label;
      const PlotSeries series = parse_metric_csv(csv_path.string(), x_label);
      const std::string stem = fs::path(name).stem().string();
      const std::string svg = render_plot_svg(stem, x_label, "mean", series);
      write_text_file((fs::path(out_dir) / (stem + ".svg")).string(), svg);
      std::cout << "plotted " << stem << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}
