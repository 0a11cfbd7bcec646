#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "prefrev/session.hpp"
#include "random_theory.hpp"
#include "support.hpp"

namespace prefrev {
namespace {

namespace fs = std::filesystem;
using testing::corpus_text;

Session corpus_session() { return Session(Limits{}, PREFREV_CORPUS_DIR); }

Output run(Session& s, const std::string& line) { return s.execute_line(line); }

Output ok(Session& s, const std::string& line) {
  Output out = s.execute_line(line);
  EXPECT_TRUE(out.ok()) << line << ": " << out.message;
  return out;
}

bool accepted(Session& s, const std::string& formula) { return ok(s, "query " + formula).data.at("accepted"); }

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("prefrev-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& file) const { return path_ / file; }

 private:
  fs::path path_;
};

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

// ---------------------------------------------------------------------------
// Commands

TEST(CommandParse, Keywords) {
  EXPECT_EQ(parse_command("load tweety.th").kind, Command::Kind::kLoad);
  EXPECT_EQ(parse_command("  trace ").kind, Command::Kind::kTrace);
  const auto p = parse_command("postulates d1 < d2;q");
  EXPECT_EQ(p.argument, "d1 < d2");
  EXPECT_EQ(p.value, "q");
  EXPECT_EQ(p.to_string(), "postulates d1 < d2 ; q");
  const auto s = parse_command("set max-bases   12");
  EXPECT_EQ(s.argument, "max-bases");
  EXPECT_EQ(s.value, "12");
}

TEST(CommandParse, Rejections) {
  auto code = [](const std::string& line) {
    try {
      parse_command(line);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  EXPECT_EQ(code(""), ErrorCode::kCommand);
  EXPECT_EQ(code("bogus"), ErrorCode::kCommand);
  EXPECT_EQ(code("revise"), ErrorCode::kCommand);
  EXPECT_EQ(code("revise p &"), ErrorCode::kSyntax);
  EXPECT_EQ(code("trace now"), ErrorCode::kCommand);
  EXPECT_EQ(code("extensions"), ErrorCode::kCommand);
  EXPECT_EQ(code("postulates p"), ErrorCode::kCommand);
  EXPECT_EQ(code("postulates p ; "), ErrorCode::kCommand);
  EXPECT_EQ(code("set colour blue"), ErrorCode::kCommand);
  EXPECT_EQ(code("set max-models"), ErrorCode::kCommand);
}

TEST(CommandParse, RoundTripProperty) {
  testing::RandomTheories gen(4242);
  const std::vector<std::string> fixed = {"load a b.th", "extensions all", "extensions compatible", "preferred",
                                          "accepted-bases", "trace", "save out.json", "show", "show d1(tweety)",
                                          "set output machine", "set max-decisions 5"};
  for (int round = 0; round < 200; ++round) {
    std::string line;
    switch (gen.pick(5)) {
      case 0: line = "revise " + gen.formula(3); break;
      case 1: line = "contract " + gen.formula(3); break;
      case 2: line = "query " + gen.formula(3); break;
      case 3: line = "postulates " + gen.formula(3) + " ; " + gen.formula(3); break;
      default: line = fixed[gen.pick(fixed.size())]; break;
    }
    const Command c = parse_command(line);
    EXPECT_EQ(parse_command(c.to_string()), c) << line;
    EXPECT_EQ(parse_command(c.to_string()).to_string(), c.to_string());
  }
}

// ---------------------------------------------------------------------------
// Execution

TEST(Execute, SourcesTrace) {
  Session s = corpus_session();
  ok(s, "load strategy_sources.th");
  const auto out = ok(s, "trace");
  EXPECT_EQ(out.data.at("counts"), nlohmann::json({14, 2, 1}));
  EXPECT_EQ(out.text.substr(0, 17), "step 1: 14 bases\n");
}

TEST(Execute, TautologyQueryOnEmptySession) {
  Session s;
  const auto out = ok(s, "query p | ~p");
  EXPECT_EQ(out.text, "accepted: true\n");
}

TEST(Execute, CyclePreferred) {
  Session s = corpus_session();
  ok(s, "load cycle.th");
  EXPECT_EQ(ok(s, "preferred").text, "0 preferred extensions\n");
  EXPECT_TRUE(accepted(s, "d2 < d1 | d1 < d2"));
}

TEST(Execute, CompatibleListsAcceptedBases) {
  Session s = corpus_session();
  ok(s, "load strategy_types.th");
  const auto out = ok(s, "extensions compatible");
  ASSERT_EQ(out.data.at("count"), 1);
  EXPECT_EQ(out.data["bases"][0]["drops"], nlohmann::json({"d4(tweety)"}));
  EXPECT_EQ(ok(s, "extensions all").data.at("count"), 4);
}

TEST(Execute, ReviseAndContractReportNames) {
  Session s = corpus_session();
  ok(s, "load conflict.th");
  auto out = ok(s, "revise d1 < d2");
  EXPECT_EQ(out.data.at("name"), "d3");
  EXPECT_TRUE(accepted(s, "p"));
  out = ok(s, "contract p");
  EXPECT_EQ(out.data.at("name"), "c1");
  EXPECT_EQ(out.data.at("role"), "constraint");
  EXPECT_EQ(out.data.at("formula"), "~p");
  EXPECT_FALSE(accepted(s, "p"));
  EXPECT_EQ(s.state().history().size(), 2U);
}

TEST(Execute, ShowMember) {
  Session s = corpus_session();
  ok(s, "load tweety.th");
  const auto out = ok(s, "show d1(tweety)");
  EXPECT_EQ(out.data.at("formula"), "bird(tweety) -> flies(tweety)");
  EXPECT_EQ(out.data.at("schema"), "d1");
  EXPECT_EQ(run(s, "show d7").error, ErrorCode::kUnknownName);
}

TEST(Execute, CapsComeFromSet) {
  Session s = corpus_session();
  ok(s, "load strategy_sources.th");
  ok(s, "set max-bases 3");
  const auto out = run(s, "extensions all");
  EXPECT_EQ(out.error, ErrorCode::kBaseCap);
  EXPECT_EQ(error_class(*out.error), ErrorClass::kResource);
  ok(s, "set max-bases 100");
  EXPECT_EQ(ok(s, "extensions all").data.at("count"), 14);
}

TEST(Execute, MachineShape) {
  Session s;
  const auto good = nlohmann::json::parse(ok(s, "query p").machine());
  EXPECT_EQ(good.at("command"), "query p");
  EXPECT_EQ(good.at("status"), "ok");
  EXPECT_EQ(good.at("data").at("accepted"), false);
  const auto bad = nlohmann::json::parse(run(s, "query p &").machine());
  EXPECT_EQ(bad.at("status"), "error");
  EXPECT_EQ(bad.at("data").at("code"), "E_SYNTAX");
}

TEST(Execute, ErrorIsolationProperty) {
  testing::RandomTheories gen(777);
  const std::vector<std::string> hostile = {"query zz(d1, 3) & zz(4)", "revise d1 < d99", "contract q & ",
                                            "show d42", "load nowhere.th", "extensions maybe", "set max-bases -1",
                                            "postulates p ; q &", "revise forall x: nosort. p"};
  std::size_t errors = 0;
  for (int round = 0; round < 200; ++round) {
    Session s;
    const std::size_t n = 1 + gen.pick(4);
    s.from_json(nlohmann::json({{"format", "prefrev-session"},
                                {"version", 1},
                                {"theory", gen.theory(n, gen.coin(0.25))},
                                {"history", nlohmann::json::array()}})
                    .dump());
    ok(s, "set max-bases 2");
    const std::string before = s.fingerprint();
    const std::string line = gen.coin(0.5) ? hostile[gen.pick(hostile.size())] : "extensions all";
    const auto out = run(s, line);
    if (!out.ok()) {
      ++errors;
      EXPECT_EQ(s.fingerprint(), before) << line;
    }
  }
  EXPECT_GT(errors, 50U);
}

TEST(Execute, ResultsAreCachedUntilTheStateChanges) {
  Session t = corpus_session();
  ok(t, "load twins.th");
  const auto first = ok(t, "extensions all").data;
  EXPECT_EQ(ok(t, "extensions all").data, first);
  ok(t, "revise date(Anne, John)");
  EXPECT_NE(ok(t, "extensions all").data, first);
}

// ---------------------------------------------------------------------------
// Sessions

TEST(SessionFile, RoundTripKeepsConclusions) {
  TempDir dir;
  Session s = corpus_session();
  ok(s, "load twins.th");
  ok(s, "revise rel(d2) = low");
  ok(s, "save " + (dir / "twins.json").string());
  Session t;
  ok(t, "load " + (dir / "twins.json").string());
  EXPECT_EQ(t.to_json(), s.to_json());
  for (const char* q : {"date(Anne, John)", "~date(Anne, John)", "date(Mary, John)", "rel(d1) = low",
                        "d1 < d2", "d2 < d1", "false"}) {
    EXPECT_EQ(accepted(t, q), accepted(s, q)) << q;
  }
}

TEST(SessionFile, EmptyRoundTrip) {
  Session s;
  Session t;
  t.from_json(s.to_json());
  EXPECT_EQ(t.to_json(), s.to_json());
  EXPECT_TRUE(t.state().theory().empty());
}

TEST(SessionFile, MidHistoryContraction) {
  Session s = corpus_session();
  ok(s, "load contraction_session.json");
  ASSERT_EQ(s.state().history().size(), 1U);
  EXPECT_FALSE(accepted(s, "~flies(tweety)"));
  ok(s, "revise d1 < c1 & forall x: object. d2(x) < c1");
  EXPECT_TRUE(accepted(s, "~flies(tweety)"));
}

TEST(SessionFile, DiagnosticsNameTheSection) {
  auto message = [](const std::string& text) {
    Session s;
    try {
      s.from_json(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSession);
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  auto doc = [](const std::string& theory, const std::string& history) {
    return R"({"format": "prefrev-session", "version": 1, "theory": )" + theory + R"(, "history": )" + history + "}";
  };
  EXPECT_NE(message("{").find("session document"), std::string::npos);
  EXPECT_NE(message(R"({"format": "other"})").find("session format"), std::string::npos);
  EXPECT_NE(message(R"({"format": "prefrev-session", "version": 7})").find("session version"), std::string::npos);
  EXPECT_NE(message(doc("\"premise d1 p.\"", "[]")).find("session theory"), std::string::npos);
  EXPECT_NE(message(doc("\"premise d1: p.\"", "{}")).find("session history"), std::string::npos);
  EXPECT_NE(message(doc("\"premise d1: p.\"", R"([{"op": "erase", "name": "d2", "formula": "q", "seq": 1}])"))
                .find("session history[0]"),
            std::string::npos);
  EXPECT_NE(message(doc("\"premise d1: p.\"", R"([{"op": "revise", "name": "d2", "formula": "q"}])"))
                .find("session history[0]"),
            std::string::npos);
  EXPECT_NE(message(doc("\"premise d1: p.\"", R"([{"op": "revise", "name": "d7", "formula": "q", "seq": 1}])"))
                .find("session history"),
            std::string::npos);
}

TEST(SessionFile, FailedLoadKeepsState) {
  TempDir dir;
  write(dir / "broken.json", R"({"format": "prefrev-session", "version": 1})");
  Session s = corpus_session();
  ok(s, "load tweety.th");
  const std::string before = s.fingerprint();
  EXPECT_EQ(run(s, "load " + (dir / "broken.json").string()).error, ErrorCode::kSession);
  EXPECT_EQ(s.fingerprint(), before);
}

// ---------------------------------------------------------------------------
// Scripts

TEST(Script, DeterministicMachineOutput) {
  auto once = [] {
    Session s = corpus_session();
    s.set_machine(true);
    std::istringstream in(corpus_text("postulates.cmd") + corpus_text("twins.cmd"));
    std::ostringstream out;
    EXPECT_EQ(run_script(s, in, out), 0);
    return out.str();
  };
  const std::string a = once();
  EXPECT_EQ(a, once());
  EXPECT_FALSE(a.empty());
}

TEST(Script, ExitCodeIsTheFirstFailureClass) {
  Session s = corpus_session();
  std::istringstream in("# comment\n\nquery p\nset max-bases 1\nload strategy_sources.th\nextensions all\nbogus\n");
  std::ostringstream out;
  EXPECT_EQ(run_script(s, in, out), static_cast<int>(ErrorClass::kResource));
  EXPECT_NE(out.str().find("error E_COMMAND"), std::string::npos);
}

TEST(Script, CorpusMatchesRecordedOutput) {
  for (const auto& entry : fs::directory_iterator(PREFREV_CORPUS_DIR)) {
    if (entry.path().extension() != ".cmd") continue;
    Session s = corpus_session();
    s.set_machine(true);
    std::ifstream in(entry.path());
    std::ostringstream out;
    run_script(s, in, out);
    const std::string stem = entry.path().stem().string();
    EXPECT_EQ(out.str(), corpus_text("expected/" + stem + ".jsonl")) << stem;
  }
}

TEST(Script, EveryTheoryHasAScript) {
  std::set<std::string> loaded;
  for (const auto& entry : fs::directory_iterator(PREFREV_CORPUS_DIR)) {
    if (entry.path().extension() != ".cmd") continue;
    std::istringstream in(corpus_text(entry.path().filename().string()));
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("load ", 0) == 0) loaded.insert(line.substr(5));
    }
  }
  for (const auto& entry : fs::directory_iterator(PREFREV_CORPUS_DIR)) {
    const auto ext = entry.path().extension();
    if (ext == ".th" || ext == ".json") EXPECT_TRUE(loaded.contains(entry.path().filename().string())) << entry.path();
  }
}

}  // namespace
}  // namespace prefrev
