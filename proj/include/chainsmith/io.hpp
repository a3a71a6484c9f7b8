#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chainsmith/annealer.hpp"
#include "chainsmith/chimera.hpp"
#include "chainsmith/problem.hpp"
#include "chainsmith/sat.hpp"

namespace chainsmith {

// Shortest round-trip decimal form; used everywhere a double lands in a CSV
// so that sweep outputs are byte-stable.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Logical problem JSON: {"n": .., "h": [{"i":..,"v":..}], "J": [{"i":..,"j":..,"v":..}]}
// plus an optional "offset".
LogicalProblem load_logical_problem(const std::filesystem::path& path);
void save_logical_problem(const LogicalProblem& p, const std::filesystem::path& path);

// Hardware JSON: either a Chimera spec {"rows","cols","cell_half","dead"} or
// an explicit graph {"N","edges","dead"}.
HardwareGraph load_hardware_graph(const std::filesystem::path& path);
void save_hardware_graph(const HardwareGraph& g, const std::filesystem::path& path);

// Embedding JSON: {"chains": [[...], ...]} indexed by logical qubit.
Embedding load_embedding(const std::filesystem::path& path);
void save_embedding(const Embedding& e, const std::filesystem::path& path);

// Physical problem JSON with biases, problem/chain couplings, and scale.
PhysicalProblem load_physical_problem(const std::filesystem::path& path);
void save_physical_problem(const PhysicalProblem& p, const std::filesystem::path& path);

struct ManifestEntry {
  std::string instance_id;
  int n = 0;
  int alpha = 0;
  std::uint64_t seed = 0;
  std::uint64_t solution_count = 0;
  bool capped = false;
  std::string cnf_path;  // relative to the manifest
};

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<ManifestEntry>& entries,
                   const std::filesystem::path& path);

// Sample CSV rows (read_index, bitstring, energy, multiplicity) with a JSON
// provenance sidecar. Bitstrings map +1 to '1', qubit 0 first.
void save_sample_set(const SampleSet& s, const std::filesystem::path& csv_path,
                     const std::filesystem::path& provenance_path);
SampleSet load_sample_set(const std::filesystem::path& csv_path,
                          const std::filesystem::path& provenance_path);

std::string spins_to_bits(const SpinVector& s);
SpinVector bits_to_spins(const std::string& bits);

}  // namespace chainsmith
