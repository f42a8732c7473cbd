/**
 * @file sgmod_main.cpp
 * @brief Command line driver for the sgmod script engine.
 *
 * Reads a script from a file (or stdin with "-"), runs it, and prints the
 * report to stdout.  Wall-clock timing goes to stderr only, so stdout stays
 * byte-identical across runs.
 *
 * Exit codes: 0 all verdicts conclusive, 1 input error, 2 at least one
 * verdict Unknown, 3 internal invariant violation.
 *
 * @copyright Apache License 2.0
 */
#include "sgmod/cli.hpp"
#include "sgmod/errors.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"finite-module property engine"};
    app.get_formatter()->column_width(34);

    std::string path;
    app.add_option("script", path, "script file, or - for stdin")->required();

    sgmod::RunConfig config;
    std::string format = "text";
    app.add_option("--caps.ext-classes", config.caps.ext_classes,
                   "extension class enumeration cap")
        ->envname("SGMOD_CAPS_EXT_CLASSES")
        ->capture_default_str();
    app.add_option("--caps.ring-elements", config.caps.ring_elements,
                   "ring and module element sweep cap")
        ->envname("SGMOD_CAPS_RING_ELEMENTS")
        ->capture_default_str();
    app.add_option("--depth", config.caps.depth, "resolution window length")
        ->envname("SGMOD_DEPTH")
        ->capture_default_str();
    app.add_option("--seed", config.caps.seed, "fuzz seed")
        ->envname("SGMOD_SEED")
        ->capture_default_str();
    app.add_option("--cache-dir", config.cache_dir, "report cache directory")
        ->envname("SGMOD_CACHE_DIR");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->envname("SGMOD_FORMAT")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    config.json = (format == "json");

    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open script: " << path << "\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        sgmod::ScriptResult result = sgmod::run_script(text, config);
        std::cout << result.output;
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::cerr << "elapsed " << ms << " ms\n";
        return result.exit_code;
    } catch (const sgmod::ScriptError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const sgmod::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
