// Commands, interactive sessions, session files and the batch runner behind the prefrev tool.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prefrev/error.hpp"
#include "prefrev/extension.hpp"
#include "prefrev/fixpoint.hpp"
#include "prefrev/limits.hpp"
#include "prefrev/revision.hpp"

namespace prefrev {

struct Command {
  enum class Kind : std::uint8_t {
    kLoad,
    kRevise,
    kContract,
    kQuery,
    kExtensions,
    kPreferred,
    kAcceptedBases,
    kTrace,
    kPostulates,
    kSave,
    kShow,
    kSet,
  };

  Kind kind = Kind::kShow;
  std::string argument;  // path, formula text, scope, name or option
  std::string value;     // B for postulates, the value for set

  /// The line parse_command reads back into an equal command.
  std::string to_string() const;

  friend bool operator==(const Command&, const Command&) = default;
};

std::string_view command_keyword(Command::Kind kind);

/// Throws Error(kCommand) for unknown keywords or missing arguments and Error(kSyntax) when a
/// formula argument does not parse.
Command parse_command(std::string_view line);

struct Output {
  std::string command;  // textual form of the command, or the raw line if it did not parse
  std::optional<ErrorCode> error;
  std::string message;  // error message
  nlohmann::json data = nlohmann::json::object();
  std::string text;  // human rendering, newline terminated

  bool ok() const noexcept { return !error.has_value(); }
  /// {"command": ..., "status": "ok"|"error", "data": ...} on one line.
  std::string machine() const;
};

class Session {
 public:
  /// Relative paths in load and save resolve against `base_dir` (the working directory if empty).
  explicit Session(Limits limits = Limits::from_environment(), std::filesystem::path base_dir = {});

  const EpistemicState& state() const noexcept { return state_; }
  const Limits& limits() const noexcept { return limits_; }
  bool machine() const noexcept { return machine_; }
  void set_machine(bool on) noexcept { machine_ = on; }
  void set_base_dir(std::filesystem::path dir) { base_dir_ = std::move(dir); }

  /// Never throws for engine or parse errors; they are reported in the output and leave the
  /// session as it was.
  Output execute(const Command& command);
  Output execute_line(std::string_view line);

  /// Loads a theory file, or a session file if it starts with '{'.
  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Canonical session document: the initial theory and the history.
  std::string to_json() const;
  /// Replaces the state with the one `text` describes. Throws Error(kSession) naming the
  /// offending section.
  void from_json(std::string_view text);

  /// Changes whenever the state or the options change.
  std::string fingerprint() const;

 private:
  void replace_state(EpistemicState next);
  ExtensionEngine& engine();
  const FixpointResult& fixpoint();
  const std::vector<ExtensionBase>& preferred();
  std::filesystem::path resolve(const std::filesystem::path& path) const;
  void run(const Command& command, Output& out);

  Limits limits_;
  std::filesystem::path base_dir_;
  bool machine_ = false;
  EpistemicState state_;
  // Results for the current state; dropped whenever it changes.
  std::unique_ptr<ExtensionEngine> engine_;
  std::optional<FixpointResult> fixpoint_;
  std::optional<std::vector<ExtensionBase>> preferred_;
};

/// Executes one command per line ('#' comments and blank lines skipped), printing each output
/// in the session's current mode. Every line runs; the return value is the exit code of the
/// first failure (see ErrorClass), or 0.
int run_script(Session& session, std::istream& in, std::ostream& out);

/// Writes one output in the session's mode.
void print_output(const Session& session, const Output& output, std::ostream& out);

}  // namespace prefrev
