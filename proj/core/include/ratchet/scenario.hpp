#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ratchet/config.hpp"
#include "ratchet/csv_io.hpp"
#include "ratchet/propagator.hpp"

namespace ratchet {

struct RunDiagnostics {
    int runs = 0;
    double max_norm_drift = 0.0;
    double max_edge_probability = 0.0;
    bool aliasing_flag = false;
    std::vector<std::string> notes;

    void absorb(const EvolutionReport& report);
};

/// Record of one scenario or sweep invocation; serialized as manifest.json.
struct RunManifest {
    KeyValues config;
    std::string version;
    std::string started_utc;
    std::string finished_utc;
    bool complete = false;
    std::string error;  // set when the run aborted part-way
    std::vector<OutputRecord> outputs;
    RunDiagnostics diagnostics;
};

inline constexpr const char* kManifestName = "manifest.json";

/// Serializes and writes the manifest into `dir`.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

/// Re-reads every listed file and compares checksums; returns the files
/// that are missing or altered (empty means the manifest validates).
std::vector<std::string> validate_manifest(const std::filesystem::path& dir);

/// Runs one scenario and writes its data files plus the manifest (written
/// last). Module errors abort the scenario; the manifest then records a
/// partial run and the error is rethrown.
RunManifest run_scenario(const RunConfig& config);

/// Runs the Cartesian product of the config's scan lists as independent
/// custom runs. Output order and content depend only on the parameter
/// tuples, never on the worker count.
RunManifest run_sweep(const RunConfig& config);

/// Grid size used for a run at `hbar`: the configured size, doubled until
/// hbar * N >= 2048 so the exponential phase has room before saturating.
std::size_t scaled_grid_size(std::size_t configured, double hbar);

}  // namespace ratchet
