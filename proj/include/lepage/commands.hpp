#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lepage/errors.hpp"
#include "lepage/render.hpp"

namespace lepage {

/// Command line error (unknown command, missing option): exit status 64.
class UsageError : public Error {
public:
    using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInput = 65;

struct CommandOptions {
    std::string command;
    std::string action;                // conjecture: defect | fit
    std::optional<std::string> spec;   // DSL source text
    Format format = Format::Text;
    std::optional<int> order_cap;
    bool assert_zero = false;

    std::optional<std::string> lagrangian;
    std::string variant = "principal";  // lepage construction
    std::string construction = "extend";
    std::string homotopy = "tilde";
    std::optional<std::string> form;
    std::vector<std::string> generators;
    std::vector<std::string> held_out;
    std::string rule = "printed";
    int m = 2;
    int n = 1;
    bool flat = false;
    int k = 2;
    int level = 2;
    int max_r = 2;
};

struct CommandResult {
    std::string output;
    int exit_code = kExitOk;
};

std::vector<std::string> command_names();

/// Runs one command; throws UsageError or library errors on bad input.
CommandResult run_command(const CommandOptions& opts);

}  // namespace lepage
