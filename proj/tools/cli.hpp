#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twolayer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConsistency = 3;

struct SweepSpec {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::vector<double> grid() const;
};

// Parses "param:start:stop:count"; throws ValidationError naming the bad part.
SweepSpec parse_sweep(const std::string& text);

// Defaults: b = k = 1, unit circle.
struct RunConfig {
    std::string command;
    double beta = 0.5;
    double b = 1.0;
    double k = 1.0;
    std::string side = "U";
    double a = 0.5;
    double epsilon = 0.01;
    std::string shape = "circle";
    double r = 1.0;
    double a0 = 2.0;
    double b0 = 1.0;
    double theta0 = 0.0;
    std::string fourier_file;
    int N = 256;
    std::optional<double> g;
    std::string out = "twolayer_out";
    std::optional<SweepSpec> sweep;
    std::vector<double> alphas{0.5, 0.91, 0.97};  // sweep command only
};

// Flat `key = value` text with `#` comments, or a run manifest (JSON object
// whose "inputs" member holds the keys). Keys use the long flag names.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twolayer::cli
