#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace nlp::app {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int overflow = 2;
inline constexpr int certificate = 3;
inline constexpr int oracle = 4;
}  // namespace exit_code

// Writes norms.csv, config.json, run_summary.json and snapshots/*.nlpf under
// out (or the config's output_dir). 0 completed, 2 overflow or Picard
// divergence, 1 on any config or I/O error (nothing is written for a config
// that fails validation).
int simulate(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out,
             std::ostream& log, std::ostream& err);

struct CertifyArgs {
    int dim = 2;
    int kmax = 6;
    // "auto" (2 A*), "<x>A*" (a multiple of the measured threshold) or a number.
    std::string A = "auto";
    double a = 0.0;
    std::string mode = "recursion_only";
    std::filesystem::path out = "certificate.json";
};
// 0 pass, 3 fail, 1 bad arguments.
int certify(const CertifyArgs& args, std::ostream& log, std::ostream& err);

struct LemmasArgs {
    std::string which;  // k_decay | duhamel | chandrasekhar
    std::filesystem::path out;
    int dim = 3;     // chandrasekhar only
    int panels = 8;  // coarse mesh of the refinement study
};
// 0 ok, 3 when a quadrature fails or drifts beyond its stability bound
// (2% kernel, 5% Duhamel) or a stationarity residual exceeds 1e-12, 1 bad arguments.
int lemmas(const LemmasArgs& args, std::ostream& log, std::ostream& err);

// Needs an "oracle" section. 0 when the sup discrepancy is <= 1e-6, 4 above, 1 config error.
int compare_oracle(const std::filesystem::path& config, std::ostream& log, std::ostream& err);

}  // namespace nlp::app
