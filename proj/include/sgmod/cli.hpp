/**
 * @file sgmod/cli.hpp
 * @brief Batch script interface: a small definition DSL plus report rendering.
 *
 * Scripts declare rings and modules, then issue commands against them:
 *
 *     ring R = GF(2)[x]/(x^2);
 *     module M over R = coker [[x]];
 *     classify M;
 *
 * Ring expressions: `Z/n`, `GF(p)[vars]/(polys)`, `NAME * NAME`.
 * Module expressions: `coker [[...]]`, `free n`, `dual NAME`,
 * `NAME (+) NAME`, `ideal(poly)`.
 * Commands: classify, resolve, ext, tor, witness, qf, decompose, fuzz.
 *
 * Execution is deterministic for a fixed (script, config) pair; reports are
 * rendered as JSON objects or aligned text.  Timing never enters the output,
 * so reruns are byte-identical.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/caps.hpp"
#include "sgmod/finite_module.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sgmod {

struct ScriptAst;

/// Parsed script: declaration summaries for inspection plus the full tree
/// consumed by run_script.  Parsing validates the entire grammar, name
/// binding (declare before use, bind once) and command arities; it throws
/// ScriptError with line and column on any violation.
struct SessionScript {
    struct DeclInfo {
        std::string kind; ///< "ring", "module", or the command name
        std::string name; ///< declared name; empty for commands
        std::size_t line;
        std::size_t col;
    };
    std::vector<DeclInfo> decls;
    std::shared_ptr<const ScriptAst> ast;
};

SessionScript parse_script(const std::string& text);

struct RunConfig {
    Caps caps;
    std::string cache_dir; ///< empty disables the report cache
    bool json = false;     ///< false renders aligned text
};

/// Exit codes: 0 all verdicts conclusive, 2 some verdict Unknown,
/// 3 internal invariant violation (classify inconsistency or fuzz failure).
/// Input errors throw ScriptError before any output; the driver maps those
/// to exit code 1.
struct ScriptResult {
    std::string output;
    int exit_code = 0;
};

ScriptResult run_script(const SessionScript& script, const RunConfig& config);
ScriptResult run_script(const std::string& text, const RunConfig& config);

/// The deterministic fuzz corpus: seeded generation over the built-in ring
/// catalog (Z/4, Z/8, GF(2)[x]/(x^2), GF(2)[x]/(x^4),
/// GF(2)[x,y]/(x^2, x*y, y^2)), fixed fixtures first.  Exposed so property
/// suites can iterate the exact modules the `fuzz` command checks.
std::vector<ModulePtr> fuzz_corpus(std::uint64_t seed, std::size_t count);

} // namespace sgmod
