#ifndef REJECTRON_CLI_HPP
#define REJECTRON_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace rejectron {

// exit codes: 0 success, 1 config error, 2 dataset or io error, 3 verification failure

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, std::optional<unsigned> jobs_override);

// runs every *.cfg in config_dir; the configs must differ only in d
int cmd_bench(const std::string& config_dir, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override, std::optional<unsigned> jobs_override);

// suites: gradcheck, smoothness, mistake-bounds, regret, kernel-equivalence
int cmd_verify(const std::string& suite, std::uint64_t seed);

int cmd_plot(const std::string& csv_dir, const std::string& out_dir);

}

#endif
