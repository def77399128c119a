#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gwtqft {

struct RunOptions {
    std::optional<std::string> format;  // "text" or "json"; overrides the config
    std::optional<int> digits;
    std::optional<std::uint64_t> seed;
    bool timing = false;
};

/// Runs every task of a YAML config and writes the report to `out`.
/// Word files named in the config are resolved against `base_dir`.
/// Returns 0 on success, 2 when a validation fails, 1 on any other error.
int run_config(const std::string& config_text, const std::string& base_dir, const RunOptions& opts, std::ostream& out,
               std::ostream& err);

}  // namespace gwtqft
