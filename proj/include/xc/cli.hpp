#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace xc {

// Shared experiment knobs; a --config JSON file seeds them and individual
// flags override.
struct ExperimentConfig {
    int n_min = 1;
    int n_max = 4;
    std::int64_t budget_ms = 10'000;
    std::int64_t max_rectangles = 200'000;
    int samples = 100'000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format;  // json, csv, dot, dimacs (per command defaults apply)
};

// Exit codes: 0 pass, 1 assertion failure, 2 input error, 3 budget-exhausted
// partial result.
int cmd_separation(const ExperimentConfig& cfg, std::ostream& os);
int cmd_verify(const std::string& suite, const ExperimentConfig& cfg, std::ostream& os,
               const std::string& fixture_path = "");
int cmd_gadget(const std::string& kind, const ExperimentConfig& cfg, std::ostream& os);

int run_cli(int argc, char** argv);

}  // namespace xc
