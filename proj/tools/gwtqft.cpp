#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gwtqft/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact invariants of abelian Gaiotto-Witten theories"};
    std::string config;
    gwtqft::RunOptions opts;
    std::string format;
    int digits = 0;
    std::uint64_t seed = 0;
    app.add_option("config", config, "YAML config file")->required()->check(CLI::ExistingFile);
    auto* f = app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto* d = app.add_option("--digits", digits, "significant digits of decimal values")->check(CLI::Range(1, 200));
    auto* s = app.add_option("--seed", seed, "seed for generic probes");
    app.add_flag("--timing", opts.timing, "report wall time per task");
    CLI11_PARSE(app, argc, argv);
    if (*f) opts.format = format;
    if (*d) opts.digits = digits;
    if (*s) opts.seed = seed;

    std::ifstream in(config);
    std::ostringstream text;
    text << in.rdbuf();
    const auto base = std::filesystem::path(config).parent_path().string();
    return gwtqft::run_config(text.str(), base.empty() ? "." : base, opts, std::cout, std::cerr);
}
