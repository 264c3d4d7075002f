#pragma once

// Engine-versus-oracle cross-checking over batches of instances.
//
// An instance is a mismatch when the engine fails on a legal input, its output
// fails verification, the oracle's own output fails verification, or the
// oracle exhaustively finds no embedding although min degree >= e(T).

#include "rainbow/embed.hpp"
#include "rainbow/verify.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rainbow {

struct Instance {
    std::shared_ptr<const ColoredCubeGraph> graph;
    RootedTree tree;
    std::string label;
    std::optional<std::uint64_t> seed;  // engine tie-breaking
};

struct CrossCheckOptions {
    bool run_oracle = true;
    OracleOptions oracle;
    bool check_invariants = true;
    bool keep_trace = true;  // serialized into the outcome for bundles
};

struct CrossCheckOutcome {
    std::string label;
    bool mismatch = false;
    std::string reason;

    bool legal = false;  // min degree >= e(T)
    bool engine_ok = false;
    std::string engine_error;
    bool verify_ok = false;
    bool oracle_ran = false;
    bool oracle_found = false;
    bool oracle_exhausted = false;

    std::string embedding_text;
    std::string trace_text;

    friend auto operator==(const CrossCheckOutcome&, const CrossCheckOutcome&) -> bool = default;
};

auto cross_check_instance(const Instance& instance, const CrossCheckOptions& options = {}) -> CrossCheckOutcome;

/// Reference implementation, one instance after another.
auto run_cross_check_serial(std::span<const Instance> instances, const CrossCheckOptions& options = {})
    -> std::vector<CrossCheckOutcome>;

/// OpenMP over instances; identical output to the serial version. jobs <= 0 uses the runtime default.
auto run_cross_check_parallel(std::span<const Instance> instances, const CrossCheckOptions& options = {},
    int jobs = 0) -> std::vector<CrossCheckOutcome>;

struct CrossCheckSummary {
    int trials = 0;
    int legal = 0;
    int engine_successes = 0;
    int oracle_runs = 0;
    int oracle_found = 0;
    int mismatches = 0;
    std::vector<std::size_t> mismatch_indices;

    /// key=value lines.
    auto to_text() const -> std::string;
};

auto summarize(std::span<const CrossCheckOutcome> outcomes) -> CrossCheckSummary;

/// `trials` engine runs of (g, t): first-candidate order, then seeds 1..trials-1.
auto cross_check(const ColoredCubeGraph& g, const RootedTree& t, int trials, const CrossCheckOptions& options = {})
    -> CrossCheckSummary;

}  // namespace rainbow
