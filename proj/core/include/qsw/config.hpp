#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qsw/graph.hpp"
#include "qsw/operators.hpp"

namespace qsw {

/// Raised for invalid or inconsistent run configurations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either a single time point or an evenly spaced series.
struct TimeSpec {
  bool is_series = false;
  double t = 0.0;         // single-point time
  double t1 = 0.0;        // series start
  double tq = 0.0;        // series end
  std::size_t steps = 0;  // series interval count
};

enum class InitialStateKind { Mixed, Vertex, File };

/// Declarative description of one walk run, parsed from a JSON config file
/// with CLI flag overrides applied on top.
struct RunConfig {
  WalkKind walk_kind = WalkKind::Local;
  std::filesystem::path graph_path;
  double omega = 0.0;
  double gamma = 1.0;
  TimeSpec time;
  InitialStateKind initial_kind = InitialStateKind::Mixed;
  std::size_t initial_vertex = 0;
  std::filesystem::path initial_file;
  std::vector<SourceArc> sources;
  std::vector<SinkArc> sinks;
  std::size_t workers = 1;
  bool out_populations = true;
  bool out_full_rho = false;
  bool out_coherence_norm = false;

  static RunConfig from_json(const std::string& text,
                             const std::filesystem::path& base_dir = {});
  static RunConfig from_json_file(const std::filesystem::path& path);

  /// Cross-field consistency checks (ranges, unsupported combinations).
  void validate() const;

  /// One-line-per-field echo for container metadata.
  std::string describe() const;
};

}  // namespace qsw
