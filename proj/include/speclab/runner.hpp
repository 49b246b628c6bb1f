#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "speclab/poset.hpp"
#include "speclab/semigroup.hpp"

namespace speclab {

// What a batch run operates on: a poset file, a semigroup, or a modulus.
struct Instance {
  std::optional<Poset> poset;
  std::optional<AffineSemigroup> semigroup;
  std::optional<std::int64_t> zn;
  std::string describe;

  const Poset& need_poset() const;
  const AffineSemigroup& need_semigroup() const;
  std::int64_t need_zn() const;
};

struct RunConfig {
  Instance instance;
  std::vector<nlohmann::ordered_json> commands;
  std::string out_dir = "out";
  std::int64_t box_override = 0;  // 0: per-operation defaults
  bool dot = false;
};

// Loads a config file; relative instance paths resolve against base_dir.
RunConfig load_config(const std::string& json_text, const std::string& base_dir);

Instance load_instance_file(const std::string& path);
Instance instance_from_zn(std::int64_t n);

struct CommandOutput {
  nlohmann::ordered_json report;
  std::map<std::string, std::string> extra_files;  // e.g. DOT graphs
  bool errored = false;
  std::vector<std::string> warnings;  // completeness flags etc.
};

// Executes one command against an instance. Never throws for verdict-level
// failures (they are data); input errors come back as errored reports.
CommandOutput execute_command(const Instance& inst, const nlohmann::ordered_json& cmd,
                              std::int64_t box_override, bool dot);

struct RunOutcome {
  int exit_code = 0;
  std::vector<std::string> files_written;
  std::vector<std::string> warnings;
};

// Runs every command in order, writing one report file per command (plus
// DOT files when requested) atomically into out_dir. Exit code 0 iff no
// command errored; verdict FAILs and completeness warnings keep 0.
RunOutcome run(const RunConfig& config);

}  // namespace speclab
