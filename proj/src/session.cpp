#include "prefrev/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prefrev/parser.hpp"

namespace prefrev {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

constexpr std::pair<Command::Kind, std::string_view> kKeywords[] = {
    {Command::Kind::kLoad, "load"},
    {Command::Kind::kRevise, "revise"},
    {Command::Kind::kContract, "contract"},
    {Command::Kind::kQuery, "query"},
    {Command::Kind::kExtensions, "extensions"},
    {Command::Kind::kPreferred, "preferred"},
    {Command::Kind::kAcceptedBases, "accepted-bases"},
    {Command::Kind::kTrace, "trace"},
    {Command::Kind::kPostulates, "postulates"},
    {Command::Kind::kSave, "save"},
    {Command::Kind::kShow, "show"},
    {Command::Kind::kSet, "set"},
};

constexpr std::string_view kOptions[] = {"max-models", "max-decisions", "max-bases", "max-linearizations", "output"};

constexpr std::string_view kSessionFormat = "prefrev-session";
constexpr int kSessionVersion = 1;

Error command_error(const std::string& message) { return Error(ErrorCode::kCommand, message); }

std::string plural(std::size_t n, std::string_view word) {
  std::string out = std::to_string(n) + " " + std::string(word);
  if (n != 1) out += "s";
  return out;
}

std::vector<std::string> name_strings(const std::vector<Term>& names) {
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(n.to_string());
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> dropped(const GroundTheory& theory, const ExtensionBase& base) {
  std::vector<std::string> out;
  for (const auto& n : theory.names()) {
    if (!base.contains(n)) out.push_back(n.to_string());
  }
  return out;
}

json base_json(const GroundTheory& theory, const ExtensionBase& base, bool with_order) {
  json j = {{"members", name_strings(base.names())}, {"drops", dropped(theory, base)}};
  if (with_order && base.generating_order()) j["order"] = name_strings(base.generating_order()->sequence());
  return j;
}

// "  drops d1(tweety)" lines, one per base.
std::string drops_lines(const GroundTheory& theory, const std::vector<ExtensionBase>& bases, std::string_view indent) {
  std::string out;
  for (const auto& b : bases) {
    const auto d = dropped(theory, b);
    out += std::string(indent) + (d.empty() ? "drops nothing" : "drops " + join(d, ", ")) + "\n";
  }
  return out;
}

// `shown` is the path as the user wrote it, so messages do not depend on the working directory.
std::string read_file(const std::filesystem::path& path, const std::filesystem::path& shown) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + shown.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t parse_cap(const std::string& option, const std::string& value) {
  std::uint64_t out = 0;
  std::size_t used = 0;
  try {
    out = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || out == 0 || value.front() == '-') {
    throw command_error(option + " expects a positive integer, got '" + value + "'");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Commands

std::string_view command_keyword(Command::Kind kind) {
  for (const auto& [k, word] : kKeywords) {
    if (k == kind) return word;
  }
  return "?";
}

std::string Command::to_string() const {
  std::string out(command_keyword(kind));
  if (kind == Kind::kPostulates) return out + " " + argument + " ; " + value;
  if (!argument.empty()) out += " " + argument;
  if (!value.empty()) out += " " + value;
  return out;
}

Command parse_command(std::string_view line) {
  line = trim(line);
  const std::size_t split = std::min(line.size(), line.find_first_of(" \t"));
  const std::string_view word = line.substr(0, split);
  const std::string rest(trim(line.substr(split)));

  Command c;
  bool known = false;
  for (const auto& [k, w] : kKeywords) {
    if (w == word) {
      c.kind = k;
      known = true;
    }
  }
  if (!known) throw command_error("unknown command '" + std::string(word) + "'");

  auto need = [&](std::string_view what) {
    if (rest.empty()) throw command_error(std::string(word) + " expects " + std::string(what));
  };
  auto nothing = [&] {
    if (!rest.empty()) throw command_error(std::string(word) + " takes no arguments");
  };

  switch (c.kind) {
    case Command::Kind::kLoad:
    case Command::Kind::kSave:
      need("a path");
      c.argument = rest;
      break;
    case Command::Kind::kRevise:
    case Command::Kind::kContract:
    case Command::Kind::kQuery:
      need("a formula");
      parse_formula(rest);
      c.argument = rest;
      break;
    case Command::Kind::kExtensions:
      if (rest != "all" && rest != "compatible") throw command_error("extensions expects 'all' or 'compatible'");
      c.argument = rest;
      break;
    case Command::Kind::kPreferred:
    case Command::Kind::kAcceptedBases:
    case Command::Kind::kTrace:
      nothing();
      break;
    case Command::Kind::kPostulates: {
      const auto semi = rest.find(';');
      if (semi == std::string::npos) throw command_error("postulates expects 'A ; B'");
      c.argument = std::string(trim(std::string_view(rest).substr(0, semi)));
      c.value = std::string(trim(std::string_view(rest).substr(semi + 1)));
      if (c.argument.empty() || c.value.empty()) throw command_error("postulates expects 'A ; B'");
      parse_formula(c.argument);
      parse_formula(c.value);
      break;
    }
    case Command::Kind::kShow:
      if (!rest.empty()) parse_term(rest);
      c.argument = rest;
      break;
    case Command::Kind::kSet: {
      const std::string_view r = rest;
      const std::size_t gap = std::min(r.size(), r.find_first_of(" \t"));
      c.argument = std::string(r.substr(0, gap));
      c.value = std::string(trim(r.substr(gap)));
      if (c.argument.empty() || c.value.empty()) throw command_error("set expects an option and a value");
      bool option = false;
      for (const auto o : kOptions) option = option || o == c.argument;
      if (!option) throw command_error("unknown option '" + c.argument + "'");
      break;
    }
  }
  return c;
}

std::string Output::machine() const {
  json j;
  j["command"] = command;
  j["status"] = ok() ? "ok" : "error";
  j["data"] = ok() ? data : json{{"code", std::string(error_code_name(*error))}, {"message", message}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// Session

Session::Session(Limits limits, std::filesystem::path base_dir)
    : limits_(limits), base_dir_(std::move(base_dir)) {}

void Session::replace_state(EpistemicState next) {
  preferred_.reset();
  fixpoint_.reset();
  engine_.reset();
  state_ = std::move(next);
}

ExtensionEngine& Session::engine() {
  if (!engine_) engine_ = std::make_unique<ExtensionEngine>(state_.theory(), limits_);
  return *engine_;
}

const FixpointResult& Session::fixpoint() {
  if (!fixpoint_) fixpoint_ = least_fixpoint(engine());
  return *fixpoint_;
}

const std::vector<ExtensionBase>& Session::preferred() {
  if (!preferred_) preferred_ = preferred_extensions(engine());
  return *preferred_;
}

std::filesystem::path Session::resolve(const std::filesystem::path& path) const {
  if (path.is_absolute() || base_dir_.empty()) return path;
  return base_dir_ / path;
}

void Session::load(const std::filesystem::path& path) {
  const std::string text = read_file(resolve(path), path);
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    from_json(text);
  } else {
    replace_state(EpistemicState(parse_source(text)));
  }
}

void Session::save(const std::filesystem::path& path) const {
  std::ofstream out(resolve(path), std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << to_json();
  if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::string Session::to_json() const {
  json history = json::array();
  for (const auto& h : state_.history()) {
    history.push_back({{"seq", h.seq},
                       {"op", std::string(operation_name(h.op))},
                       {"name", h.name.to_string()},
                       {"formula", h.formula}});
  }
  json doc = {{"format", kSessionFormat},
              {"version", kSessionVersion},
              {"theory", serialize(state_.initial())},
              {"history", history}};
  return doc.dump(2) + "\n";
}

void Session::from_json(std::string_view text) {
  auto fail = [](const std::string& section, const std::string& why) {
    throw Error(ErrorCode::kSession, "session " + section + ": " + why);
  };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("document", e.what());
  }
  if (!doc.is_object()) fail("document", "expected an object");
  if (!doc.contains("format") || doc["format"] != kSessionFormat) fail("format", "expected \"prefrev-session\"");
  if (!doc.contains("version") || doc["version"] != kSessionVersion) fail("version", "expected 1");
  if (!doc.contains("theory") || !doc["theory"].is_string()) fail("theory", "expected the theory text");
  if (!doc.contains("history") || !doc["history"].is_array()) fail("history", "expected an array");

  TheorySpec initial;
  try {
    initial = parse_source(doc["theory"].get<std::string>());
  } catch (const Error& e) {
    fail("theory", e.what());
  }

  std::vector<HistoryEntry> history;
  std::size_t index = 0;
  for (const auto& entry : doc["history"]) {
    const std::string section = "history[" + std::to_string(index++) + "]";
    try {
      HistoryEntry h;
      const std::string op = entry.at("op").get<std::string>();
      if (op == "revise") {
        h.op = Operation::kRevise;
      } else if (op == "contract") {
        h.op = Operation::kContract;
      } else {
        fail(section, "unknown operation '" + op + "'");
      }
      h.name = parse_term(entry.at("name").get<std::string>());
      h.formula = entry.at("formula").get<std::string>();
      h.seq = entry.at("seq").get<std::uint64_t>();
      history.push_back(std::move(h));
    } catch (const json::exception& e) {
      fail(section, e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kSession) throw;
      fail(section, e.what());
    }
  }

  EpistemicState next;
  try {
    next = EpistemicState::replay(std::move(initial), history);
  } catch (const Error& e) {
    fail("history", e.what());
  }
  replace_state(std::move(next));
}

std::string Session::fingerprint() const {
  return to_json() + std::to_string(limits_.max_models) + "/" + std::to_string(limits_.max_decisions) + "/" +
         std::to_string(limits_.max_bases) + "/" + std::to_string(limits_.max_linearizations) + "/" +
         (machine_ ? "machine" : "text");
}

Output Session::execute_line(std::string_view line) {
  Output out;
  Command command;
  try {
    command = parse_command(line);
  } catch (const Error& e) {
    out.command = std::string(trim(line));
    out.error = e.code();
    out.message = e.what();
    out.text = "error " + std::string(error_code_name(e.code())) + ": " + out.message + "\n";
    return out;
  }
  return execute(command);
}

Output Session::execute(const Command& command) {
  Output out;
  out.command = command.to_string();
  try {
    run(command, out);
  } catch (const Error& e) {
    out.error = e.code();
    out.message = e.what();
  } catch (const std::exception& e) {
    out.error = ErrorCode::kInternal;
    out.message = e.what();
  }
  if (!out.ok()) {
    out.data = json::object();
    out.text = "error " + std::string(error_code_name(*out.error)) + ": " + out.message + "\n";
  }
  return out;
}

void Session::run(const Command& command, Output& out) {
  const GroundTheory& theory = state_.theory();
  switch (command.kind) {
    case Command::Kind::kLoad: {
      load(command.argument);
      const auto& t = state_.theory();
      std::size_t constraints = 0;
      for (const auto& m : t.members()) constraints += m.role == Role::kConstraint;
      out.data = {{"path", command.argument},
                  {"members", t.size()},
                  {"constraints", constraints},
                  {"history", state_.history().size()}};
      out.text = "loaded " + command.argument + ": " + plural(t.size(), "member");
      if (constraints > 0) out.text += ", " + plural(constraints, "constraint");
      if (!state_.history().empty()) out.text += ", " + plural(state_.history().size(), "history entry");
      out.text += "\n";
      return;
    }
    case Command::Kind::kRevise:
    case Command::Kind::kContract: {
      const Formula input = parse_formula(command.argument);
      EpistemicState next =
          command.kind == Command::Kind::kRevise ? state_.revise(input) : state_.contract(input);
      replace_state(std::move(next));
      const auto& h = state_.history().back();
      const auto& added = state_.theory().member(*state_.theory().index_of(h.name));
      out.data = {{"name", h.name.to_string()},
                  {"role", std::string(role_name(added.role))},
                  {"formula", added.body.to_string()},
                  {"seq", h.seq}};
      out.text = h.name.to_string() + ": " + added.body.to_string();
      if (added.role == Role::kConstraint) out.text += " (constraint)";
      out.text += "\n";
      return;
    }
    case Command::Kind::kQuery: {
      const Formula q = ground_formula(theory, parse_formula(command.argument));
      const bool yes = fixpoint().accepted_belief.entails(q, engine().axioms(), limits_);
      out.data = {{"formula", q.to_string()}, {"accepted", yes}};
      out.text = std::string("accepted: ") + (yes ? "true" : "false") + "\n";
      return;
    }
    case Command::Kind::kExtensions: {
      const bool all = command.argument == "all";
      const auto& bases = all ? engine().all_bases() : fixpoint().accepted_bases;
      json list = json::array();
      for (const auto& b : bases) list.push_back(base_json(theory, b, false));
      out.data = {{"scope", command.argument}, {"count", bases.size()}, {"bases", list}};
      out.text = plural(bases.size(), all ? "extension base" : "compatible extension base") + "\n" +
                 drops_lines(theory, bases, "  ");
      return;
    }
    case Command::Kind::kPreferred: {
      const auto& bases = preferred();
      json list = json::array();
      for (const auto& b : bases) list.push_back(base_json(theory, b, false));
      out.data = {{"count", bases.size()}, {"bases", list}};
      out.text = plural(bases.size(), "preferred extension") + "\n" + drops_lines(theory, bases, "  ");
      return;
    }
    case Command::Kind::kAcceptedBases: {
      const auto& bases = fixpoint().accepted_bases;
      json list = json::array();
      for (const auto& b : bases) list.push_back(base_json(theory, b, true));
      out.data = {{"count", bases.size()}, {"bases", list}};
      out.text = plural(bases.size(), "accepted base") + "\n";
      for (const auto& b : bases) {
        out.text += "  " + b.to_string() + "\n";
        if (b.generating_order()) out.text += "    generated by " + b.generating_order()->to_string() + "\n";
      }
      return;
    }
    case Command::Kind::kTrace: {
      const auto& result = fixpoint();
      json steps = json::array();
      std::size_t step = 0;
      for (const auto& it : result.iterates) {
        ++step;
        json list = json::array();
        for (const auto& b : it.bases) list.push_back(dropped(theory, b));
        steps.push_back({{"step", step}, {"count", it.bases.size()}, {"drops", list}});
        out.text += "step " + std::to_string(step) + ": " + plural(it.bases.size(), "base") + "\n";
        out.text += drops_lines(theory, it.bases, "  ");
      }
      out.data = {{"counts", result.trace()}, {"steps", steps}};
      return;
    }
    case Command::Kind::kPostulates: {
      const auto report =
          check_postulates(state_, parse_formula(command.argument), parse_formula(command.value), {}, limits_);
      json results = json::array();
      for (const auto& r : report.results) {
        results.push_back({{"id", r.id}, {"verdict", std::string(verdict_name(r.verdict))}, {"witness", r.witness}});
      }
      json panel = json::array();
      for (const auto& f : report.panel) panel.push_back(f.to_string());
      out.data = {{"results", results}, {"panel", panel}};
      out.text = report.to_string();
      return;
    }
    case Command::Kind::kSave:
      save(command.argument);
      out.data = {{"path", command.argument}};
      out.text = "saved " + command.argument + "\n";
      return;
    case Command::Kind::kShow: {
      if (command.argument.empty()) {
        json history = json::array();
        for (const auto& h : state_.history()) {
          history.push_back({{"seq", h.seq}, {"op", std::string(operation_name(h.op))}, {"name", h.name.to_string()},
                             {"formula", h.formula}});
        }
        out.data = {{"theory", serialize(state_.spec())}, {"history", history}};
        out.text = serialize(state_.spec());
        for (const auto& h : state_.history()) {
          out.text += "# " + std::to_string(h.seq) + " " + std::string(operation_name(h.op)) + " " + h.formula +
                      " -> " + h.name.to_string() + "\n";
        }
        return;
      }
      const Term name = parse_term(command.argument);
      const auto index = theory.index_of(name);
      if (!index) throw Error(ErrorCode::kUnknownName, "no member named " + name.to_string());
      const auto& m = theory.member(*index);
      out.data = {{"name", m.name.to_string()}, {"role", std::string(role_name(m.role))}, {"formula", m.body.to_string()}};
      if (m.schema) out.data["schema"] = *m.schema;
      out.text = m.name.to_string() + ": " + m.body.to_string() + " (" + std::string(role_name(m.role)) + ")\n";
      return;
    }
    case Command::Kind::kSet: {
      const std::string& option = command.argument;
      const std::string& value = command.value;
      if (option == "output") {
        if (value != "text" && value != "machine") throw command_error("output expects 'text' or 'machine'");
        machine_ = value == "machine";
      } else {
        Limits next = limits_;
        const std::uint64_t cap = parse_cap(option, value);
        if (option == "max-models") next.max_models = cap;
        if (option == "max-decisions") next.max_decisions = cap;
        if (option == "max-bases") next.max_bases = cap;
        if (option == "max-linearizations") next.max_linearizations = cap;
        limits_ = next;
        // Cached results were computed under the old caps.
        replace_state(state_);
      }
      out.data = {{"option", option}, {"value", value}};
      out.text = option + " = " + value + "\n";
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Batch runner

void print_output(const Session& session, const Output& output, std::ostream& out) {
  if (session.machine()) {
    out << output.machine() << "\n";
  } else {
    out << output.text;
  }
}

int run_script(Session& session, std::istream& in, std::ostream& out) {
  int status = 0;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const Output result = session.execute_line(body);
    print_output(session, result, out);
    if (!result.ok() && status == 0) status = static_cast<int>(error_class(*result.error));
  }
  return status;
}

}  // namespace prefrev
