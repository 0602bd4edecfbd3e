#pragma once

#include <map>
#include <optional>
#include <string>

#include "ftopos/workspace.hpp"

namespace ftopos {

/// Outcome of one CLI command. Exit code 0 when the checked property holds,
/// 1 when it does not; errors surface as exceptions.
struct CommandResult {
  int exit_code = 0;
  json report;
  std::string text;
};

struct CommandOptions {
  bool timings = false;
};

CommandResult cmd_validate(const Workspace& w, const CommandOptions& opts = {});
CommandResult cmd_check_segal(const Workspace& w, const std::string& name,
                              const CommandOptions& opts = {});
CommandResult cmd_check_complete(const Workspace& w, const std::string& name,
                                 const CommandOptions& opts = {});
CommandResult cmd_nerve(const Workspace& w, const std::string& map_name,
                        const CommandOptions& opts = {});
/// Checks the named map, or every entry of `maps` when the name is empty.
CommandResult cmd_check_univalent(const Workspace& w, const std::string& map_name,
                                  const CommandOptions& opts = {});
CommandResult cmd_enumerate_univalent(const Workspace& w, std::size_t max_total,
                                      std::size_t max_base, const CommandOptions& opts = {});
CommandResult cmd_poset(const Workspace& w, std::size_t max_total, std::size_t max_base,
                        const CommandOptions& opts = {});
CommandResult cmd_classify(const Workspace& w, const std::string& mono_name,
                           const CommandOptions& opts = {});

/// Bundled workspace files by file name, in canonical form.
std::map<std::string, json> bundled_corpus();

}  // namespace ftopos
