// prefrev: batch runner and REPL for preference-based revision sessions.
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prefrev/error.hpp"
#include "prefrev/session.hpp"

namespace {

constexpr const char* kHelp =
    "commands:\n"
    "  load <path>                 theory (.th) or session (.json) file\n"
    "  revise <formula>            add a premise under the next free name\n"
    "  contract <formula>          add a constraint so the formula is no longer believed\n"
    "  query <formula>             is the formula accepted?\n"
    "  extensions all|compatible   all extension bases, or those compatible with the accepted beliefs\n"
    "  preferred                   preferred extensions\n"
    "  accepted-bases              accepted bases with a generating order\n"
    "  trace                       base counts along the fixed-point iteration\n"
    "  postulates <A> ; <B>        check the revision postulates on this instance\n"
    "  save <path>                 write the session\n"
    "  show [name]                 the theory, or one member\n"
    "  set <option> <value>        max-models, max-decisions, max-bases, max-linearizations, output\n"
    "  help, quit\n";

int repl(prefrev::Session& session) {
  const bool interactive = isatty(STDIN_FILENO) != 0;
  int status = 0;
  std::string line;
  while (true) {
    if (interactive) std::cout << "prefrev> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string body = line.substr(first);
    if (body == "quit" || body == "exit") break;
    if (body == "help") {
      std::cout << kHelp;
      continue;
    }
    const auto out = session.execute_line(body);
    prefrev::print_output(session, out, std::cout);
    if (!out.ok() && status == 0) status = static_cast<int>(prefrev::error_class(*out.error));
  }
  if (interactive) std::cout << "\n";
  // Interactive users saw their errors; only piped input reports them through the exit code.
  return interactive ? 0 : status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prefrev: belief revision with preferences expressed in the object language"};
  std::string script;
  std::string theory;
  bool machine = false;
  app.add_option("--script", script, "run the commands in this file and exit")->check(CLI::ExistingFile);
  app.add_option("--theory", theory, "load this theory or session file first");
  app.add_flag("--machine", machine, "one JSON document per command");
  CLI11_PARSE(app, argc, argv);

  prefrev::Session session(prefrev::Limits::from_environment());
  session.set_machine(machine);

  if (!theory.empty()) {
    const auto out = session.execute_line("load " + theory);
    if (!out.ok() || machine) prefrev::print_output(session, out, out.ok() ? std::cout : std::cerr);
    if (!out.ok()) return static_cast<int>(prefrev::error_class(*out.error));
  }

  if (!script.empty()) {
    std::ifstream in(script);
    if (!in) {
      std::cerr << "cannot read " << script << "\n";
      return static_cast<int>(prefrev::ErrorClass::kEngine);
    }
    session.set_base_dir(std::filesystem::path(script).parent_path());
    return prefrev::run_script(session, in, std::cout);
  }
  return repl(session);
}
