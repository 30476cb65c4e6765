#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(FIBCF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<nlohmann::json> parse_jsonl(const std::string& text) {
  std::vector<nlohmann::json> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("fibword") {
  RunResult r = run_cli("fibword --w1 b --w2 a --prefix 8");
  CHECK(r.code == 0);
  CHECK(r.out == "abaababa\n");

  RunResult t = run_cli("fibword --w1 3 --w2 1,2 --term 4");
  CHECK(t.code == 0);
  CHECK(t.out == "1,2,3,1,2\n");

  RunResult z = run_cli("fibword --w1 b --w2 a --prefix 0");
  CHECK(z.code == 0);
  CHECK(z.out.empty());

  RunResult js = run_cli("fibword --w1 b --w2 a --prefix 4 --format json");
  CHECK(js.code == 0);
  CHECK(js.out == "[\"a\",\"b\",\"a\",\"a\"]\n");

  CHECK(run_cli("fibword --w1 x --w2 a --prefix 3").code == 2);
  CHECK(run_cli("fibword --w1 b --w2 a").code == 2);
  CHECK(run_cli("nonsense").code != 0);
}

TEST_CASE("construct") {
  RunResult r = run_cli("construct --det-m-family 2 --depth 9");
  REQUIRE(r.code == 0);
  auto lines = parse_jsonl(r.out);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0]["witness_status"] == "found");
  std::string n = lines[0]["witness_N"].get<std::string>();
  CHECK(n.find("\"-4\"") != std::string::npos);
  // det column 2,2,1,2,2,1,...
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string expected = (i % 3 == 0) ? "1" : "2";
    CHECK(lines[i]["det"].get<std::string>() == expected);
  }

  RunResult p6 = run_cli("construct --w1 1,0,0,2 --w2 0,1,2,0 --depth 12");
  REQUIRE(p6.code == 0);
  auto plines = parse_jsonl(p6.out);
  CHECK(plines[0]["period"] == 6);
  CHECK(plines[0]["note"] == "bounded sequence: not extremal-eligible");

  // sigma images of the words (1), (2): every determinant is +-1
  RunResult s = run_cli("construct --w1 1,1,1,0 --w2 2,1,1,0 --depth 10");
  REQUIRE(s.code == 0);
  auto slines = parse_jsonl(s.out);
  for (std::size_t i = 1; i < slines.size(); ++i) {
    std::string d = slines[i]["det"].get<std::string>();
    CHECK((d == "1" || d == "-1"));
  }

  RunResult csv = run_cli("construct --det-m-family 2 --depth 4 --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("i,det,norm_digits\n1,2,1\n", 0) == 0);
}

TEST_CASE("expand certifies quotients and is deterministic") {
  std::string cmd = "expand --w1 2,1,1,0 --w2 1,1,1,0 -n 12 --seed 7";
  RunResult r = run_cli(cmd);
  REQUIRE(r.code == 0);
  auto lines = parse_jsonl(r.out);
  REQUIRE(lines.size() == 13);
  CHECK(lines[0]["complete"] == true);
  std::vector<std::string> expected{"0", "1", "2", "1", "1", "2",
                                    "1", "2", "1", "1", "2", "1"};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(lines[i + 1]["q"].get<std::string>() == expected[i]);

  RunResult again = run_cli(cmd);
  CHECK(again.out == r.out);  // byte-identical for identical config + seed

  // bounded sequences cannot be expanded: exact-invariant exit code
  CHECK(run_cli("expand --w1 1,0,0,2 --w2 0,1,2,0 -n 5").code == 3);
}

TEST_CASE("verify and scan-det emit reports") {
  RunResult v = run_cli("verify --det-m-family 2 --lo 5 --hi 12");
  REQUIRE(v.code == 0);
  auto vlines = parse_jsonl(v.out);
  CHECK(vlines[0]["report"] == "verify");
  CHECK(vlines[0].contains("product_band"));
  CHECK(vlines.size() == 9);

  RunResult vc = run_cli("verify --det-m-family 2 --lo 5 --hi 12 --format csv");
  REQUIRE(vc.code == 0);
  CHECK(vc.out.rfind("i,norm_digits,", 0) == 0);

  RunResult s = run_cli("scan-det --det-m-family 2 --prefix-len 30 --quotients 40");
  REQUIRE(s.code == 0);
  auto slines = parse_jsonl(s.out);
  CHECK(slines[0]["lower_bound_ok"] == true);
  CHECK(slines[0]["max_abs_det"] == "2");
}

TEST_CASE("factor") {
  RunResult r = run_cli("factor --matrix 4,3,3,2 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out == "1,2,1\n");

  RunResult j = run_cli("factor --matrix 4,3,3,2");
  CHECK(j.code == 0);
  auto lines = parse_jsonl(j.out);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["letters"].size() == 3);

  CHECK(run_cli("factor --matrix 2,0,0,2").code == 2);
}

TEST_CASE("conjugate") {
  RunResult r = run_cli("conjugate --w1 2,1,1,0 --w2 1,1,1,0 --matrix 1,1,0,1");
  REQUIRE(r.code == 0);
  auto lines = parse_jsonl(r.out);
  CHECK(lines[0]["serret_applicable"] == true);
  CHECK(lines[0]["serret"] == "true");
}

TEST_CASE("spec file round trip") {
  std::string path = "/tmp/fibcf_test_spec.json";
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs(R"({"W1":{"rows":[["2","2"],["1","2"]]},)"
          R"("W2":{"rows":[["4","2"],["3","2"]]},)"
          R"("sign_policy":"canonical","label":"det2-from-file"})",
          f);
    fclose(f);
  }
  RunResult r = run_cli("construct --spec " + path + " --depth 4");
  REQUIRE(r.code == 0);
  auto lines = parse_jsonl(r.out);
  CHECK(lines[0]["label"] == "det2-from-file");
  std::remove(path.c_str());
}
