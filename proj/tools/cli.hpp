#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace objlog::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
    std::string subcommand;
    std::optional<std::string> schema_path;
    std::optional<std::string> kb_path;
    std::optional<std::string> goal_text;
    // Empty means standard output.
    std::string output;
    bool strict = true;
};

// Runs the command line; payload goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_validate(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_canon(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_decls(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_query(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace objlog::cli
