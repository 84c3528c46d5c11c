#pragma once

#include <cstdint>
#include <string>

#include "nhwm/series.hpp"
#include "nhwm/wavefield.hpp"

namespace nhwm {

// Deterministic text output: '.' decimal separator, '\n' line endings,
// float64 at 17 significant digits (exact round trip).

void write_csv(const std::string& path, const SeriesTable& table);
SeriesTable read_csv(const std::string& path);

// Field snapshot: one ASCII header line
//   NHWM1 <ndim> <n1> [<n2>] <L1> [<L2>] <t>
// followed by row-major little-endian IEEE-754 float64 (Re, Im) pairs.
void write_snapshot(const std::string& path, const WaveField& field, double t);
struct Snapshot {
  WaveField field;
  double t;
};
Snapshot read_snapshot(const std::string& path);

// FNV-1a 64-bit, for config provenance in manifests
std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

// Run manifest: resolved config plus provenance, written before any data
// file; `finalize_manifest` appends the terminal DONE marker after all
// outputs are complete.
struct RunManifest {
  std::string version;
  std::string command;
  std::string input_hash;
  std::string output_dir;
  std::vector<std::string> outputs;
  std::string resolved_config;  // config text with all defaults materialized
};
void write_manifest(const std::string& path, const RunManifest& manifest);
void finalize_manifest(const std::string& path);

const char* version_string();

}  // namespace nhwm
