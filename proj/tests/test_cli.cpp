#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lampqi/cli.hpp"
#include "lampqi/report.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lampqi::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.find(needle) != std::string::npos) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("cli examples") {
  auto r = run({"verify", "lamp-claim", "--S", "2", "--window", "10"});
  CHECK(r.code == 0);
  auto j = lampqi::Json::parse(r.out);
  CHECK(j["violations"].empty());
  CHECK(j["violation_count"] == 0);
  CHECK(r.out.find("\"violations\": []") != std::string::npos);

  r = run({"map", "ppq", "--map", "blockperm:m=3:100>111,111>100", "--window", "3"});
  CHECK(r.code == 1);
  j = lampqi::Json::parse(r.out);
  CHECK(j["witness"]["v_string"] == "100");
  CHECK(j["witness"]["w_string"] == "001");
  CHECK(j["witness"]["lhs_string"] == "101");
  CHECK(j["witness"]["rhs_string"] == "110");

  r = run({"dist", "--u", "|0", "--v", "0:1|0"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
}

TEST_CASE("cli output formats") {
  auto r = run({"ball", "--radius", "1", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("graph ", 0) == 0);
  CHECK(count_lines_with(r.out, "--") == 4);
  CHECK(count_lines_with(r.out, "\";") - count_lines_with(r.out, "--") == 5);
  CHECK(r.out.back() == '\n');

  r = run({"ball", "--radius", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("u,v,closed_form,bfs\n", 0) == 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  std::size_t n = 0;
  while (std::getline(rows, line)) {
    ++n;
    const auto c1 = line.rfind(',');
    const auto c2 = line.rfind(',', c1 - 1);
    CHECK(line.substr(c2 + 1, c1 - c2 - 1) == line.substr(c1 + 1));
  }
  CHECK(n == 15 * 16 / 2);  // unordered pairs with u <= v

  r = run({"export-dot", "--radius", "2", "--color-cosets"});
  CHECK(r.code == 0);
  CHECK(r.out.find("coset=") != std::string::npos);

  CHECK(run({"dist", "--u", "|0", "--v", "|0", "--format", "dot"}).code == 2);
  CHECK(run({"verify", "taback", "--eps", "3", "--M", "64", "--format", "csv"}).code == 2);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "lamp-claim"}).code == 2);  // --S is required
  CHECK(run({"verify", "lamp-claim", "--S", "1", "--window", "8", "--convention", "gap"}).code == 1);
  CHECK(run({"verify", "lamp-claim", "--S", "1", "--window", "8", "--convention", "gap", "--format", "text"}).code == 1);
  CHECK(run({"verify", "taback", "--eps", "3", "--M", "64", "--bound", "64", "--exp-lo", "-2", "--exp-hi", "2"}).code ==
        0);
  CHECK(run({"verify", "schwartz", "--matrix", "2,1,1,1", "--eps", "1", "--M", "40", "--box", "20"}).code == 0);
  CHECK(run({"verify", "schwartz", "--matrix", "1,1,1,1", "--eps", "1", "--M", "40"}).code == 2);
  CHECK(run({"quad", "classify", "--family", "bs", "--p1", "0", "--p2", "1", "--p3", "65", "--p4", "64", "--eps", "1",
             "--M", "63"})
            .code == 0);
  CHECK(run({"sigma", "obstruct", "--sigma", "0:1;1:1;2:1;3:1", "--eps", "2", "--M", "16", "--window", "4"}).code ==
        1);
  CHECK(run({"sigma", "check", "--family", "bs", "--sigma", "1;1024", "--eps", "1", "--M", "512"}).code == 0);
  CHECK(run({"sigma", "check", "--sigma", "0:1;1:1", "--eps", "2", "--M", "16"}).code == 1);
  CHECK(run({"isometry-search", "--radius", "2"}).code == 0);
  CHECK(run({"isometry-search", "--radius", "1"}).code == 2);
  CHECK(run({"map", "apply", "--map", "shift:2", "--config", "0:1,3:1"}).code == 0);
  CHECK(run({"delta", "--family", "lamp", "--p", "0:1,9:1", "--q", ""}).code == 0);
}

TEST_CASE("cli spot values") {
  auto r = run({"map", "apply", "--map", "blockperm:m=3:100>111,111>100", "--config", "0:1", "--format", "text"});
  CHECK(r.out == "0:1,1:1,2:1\n");
  r = run({"delta", "--family", "lamp", "--p", "0:1,9:1", "--q", "", "--format", "text"});
  CHECK(r.out == "512\n");
  r = run({"map", "bilip", "--map", "blockperm:m=3:100>111,111>100", "--padding", "3"});
  auto j = lampqi::Json::parse(r.out);
  CHECK(j["K_upper"] == "4");
  CHECK(j["exhaustive"] == true);
}

TEST_CASE("sampled modes need a seed") {
  CHECK(run({"telescope", "--random", "5", "--sigma", "1;2"}).code == 2);
  CHECK(run({"map", "bilip-sweep", "--m", "2", "--samples", "3"}).code == 2);
  CHECK(run({"telescope", "--random", "5", "--sigma", "1;2;4", "--seed", "1"}).code == 0);
  CHECK(run({"map", "bilip-sweep", "--m", "2", "--samples", "3", "--seed", "1"}).code == 0);
}

TEST_CASE("cli output is deterministic") {
  const std::vector<std::vector<std::string>> cmds{
      {"telescope", "--random", "20", "--sigma", "1;2;4;8", "--seed", "42"},
      {"verify", "lamp-claim", "--S", "1", "--window", "8", "--convention", "gap", "--chunks", "3"},
      {"map", "bilip-sweep", "--m", "3", "--samples", "10", "--seed", "9"},
      {"ball", "--radius", "3", "--format", "dot", "--color-cosets"},
  };
  for (const auto& cmd : cmds) {
    const auto a = run(cmd), b = run(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  auto one = run({"verify", "lamp-claim", "--S", "1", "--window", "8", "--convention", "gap"});
  auto three = run({"verify", "lamp-claim", "--S", "1", "--window", "8", "--convention", "gap", "--chunks", "3"});
  auto strip = [](const std::string& s) {
    auto j = lampqi::Json::parse(s);
    j["params"].erase("chunks");
    return j.dump();
  };
  CHECK(strip(one.out) == strip(three.out));
  CHECK(lampqi::Json::parse(one.out)["elapsed_ms"].is_null());
  auto timed = run({"verify", "lamp-claim", "--S", "1", "--window", "6", "--timing"});
  CHECK(lampqi::Json::parse(timed.out)["elapsed_ms"].is_number());
}

TEST_CASE("--out writes the file instead of stdout") {
  const auto path = std::filesystem::temp_directory_path() / "lampqi_cli_out_test.json";
  std::filesystem::remove(path);
  const auto r = run({"verify", "lamp-claim", "--S", "1", "--window", "6", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(lampqi::Json::parse(body.str())["violation_count"] == 0);
  std::filesystem::remove(path);
  CHECK(run({"dist", "--u", "|0", "--v", "|1", "--out", "/nonexistent-dir/x"}).code == 2);
}

TEST_CASE("malformed literals exit 2 with a position") {
  const std::string alphabet = "0123456789:,|-+*^/;=>abx ";
  std::mt19937_64 gen(1234);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(1, 8);
  struct Slot {
    std::vector<std::string> prefix;
    std::string valid;
    std::vector<std::string> suffix;
  };
  const std::vector<Slot> slots{
      {{"dist", "--u"}, "0:1,2:1|3", {"--v", "|0"}},
      {{"delta", "--family", "bs", "--q", "0", "--p"}, "-3*2^-4", {}},
      {{"delta", "--family", "lamp", "--q", "", "--p"}, "0:1,-4:1", {}},
      {{"map", "apply", "--config", "0:1", "--map"}, "blockperm:m=3:100>111,111>100", {}},
      {{"map", "apply", "--config", "0:1", "--map"}, "shift:1;translate:0:1", {}},
  };
  std::size_t parse_errors = 0;
  for (const auto& slot : slots) {
    for (int t = 0; t < 150; ++t) {
      std::string s = slot.valid;
      const int edits = 1 + static_cast<int>(gen() % 3);
      for (int e = 0; e < edits; ++e) {
        const std::size_t at = s.empty() ? 0 : gen() % (s.size() + 1);
        switch (gen() % 3) {
          case 0:
            s.insert(at, 1, alphabet[pick(gen)]);
            break;
          case 1:
            if (at < s.size()) s.erase(at, 1);
            break;
          default:
            if (at < s.size()) s[at] = alphabet[pick(gen)];
        }
      }
      if (t % 10 == 0) {
        s.clear();
        for (std::size_t i = 0, k = len(gen); i < k; ++i) s += alphabet[pick(gen)];
      }
      auto args = slot.prefix;
      args.push_back(s);
      args.insert(args.end(), slot.suffix.begin(), slot.suffix.end());
      const auto r = run(args);
      INFO("input: " << s);
      CHECK((r.code == 0 || r.code == 2));
      if (r.code == 2) {
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
        if (r.err.find("position") != std::string::npos) ++parse_errors;
      }
    }
  }
  CHECK(parse_errors > 300);
}
