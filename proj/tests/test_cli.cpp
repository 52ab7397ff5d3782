#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Run hlat(const std::string& args) {
  Run r;
  const std::string cmd = std::string(HLAT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hlat_cli_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string write(const std::string& name, const std::string& body) {
  const std::string p = scratch(name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("psd on the E6 tree") {
  const std::string e6 = scratch("e6.txt");
  REQUIRE(hlat("gen e6-tilde -o " + e6).code == 0);
  const Run r = hlat("psd " + e6 + " --shift 2");
  CHECK(r.code == 0);
  const auto j = r.report();
  CHECK(j["result"]["is_psd"] == true);
  CHECK(j["result"]["singular"] == true);
  CHECK(hlat("psd " + e6 + " --shift 19/10").code == 1);
}

TEST_CASE("certify exit codes and verification") {
  const std::string e6 = scratch("e6.txt");
  REQUIRE(hlat("gen e6-tilde -o " + e6).code == 0);
  const Run one = hlat("certify " + e6 + " --s 1");
  CHECK(one.code == 1);
  CHECK(one.report()["result"]["status"] == "infeasible");

  const Run two = hlat("certify " + e6 + " --s 2");
  CHECK(two.code == 0);
  const std::string rep = write("rep.json", two.out);
  const Run v = hlat("verify " + rep + " " + e6);
  CHECK(v.code == 0);
  CHECK(v.report()["result"]["verified"] == true);

  // a certificate against the wrong graph must not verify
  const std::string p = scratch("p7.txt");
  REQUIRE(hlat("gen path 7 -o " + p).code == 0);
  CHECK(hlat("verify " + rep + " " + p).code != 0);

  const Run tight = hlat("certify " + e6 + " --s 1 --budget 2 --dimension 14");
  CHECK(tight.code == 2);
}

TEST_CASE("enum-forbidden to order 2") {
  const Run r = hlat("enum-forbidden --max-order 2");
  REQUIRE(r.code == 0);
  const auto res = r.report()["result"];
  int order1 = 0, order1_minimal = 0, order2_with_two = 0;
  for (const auto& c : res["candidates"]) {
    if (c["order"] == 1) {
      ++order1;
      order1_minimal += c["graph_minimal"] == true;
      if (c["graph_minimal"] == true) CHECK(c["matrix"][0][0] == -3);
    } else {
      order2_with_two += c["matrix"][0][0] == -2 || c["matrix"][1][1] == -2;
    }
  }
  CHECK(order1 == 2);
  CHECK(order1_minimal == 1);
  CHECK(order2_with_two == 9);
}

TEST_CASE("input errors exit with 3") {
  CHECK(hlat("psd --no-such-flag x").code == 3);
  CHECK(hlat("no-such-command").code == 3);
  CHECK(hlat("psd /nonexistent/input.txt").code == 3);
  const std::string bad = write("bad.txt", "graph 2 1\n0 5\n");
  const Run r = hlat("psd " + bad);
  CHECK(r.code == 3);
  CHECK(r.report()["error"]["message"].get<std::string>().find("line 2") != std::string::npos);
  CHECK(hlat("enum-forbidden --max-order 11").code == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string g = scratch("rnd.txt");
  const Run a = hlat("--seed 5 gen random 12 0.4 -o " + g);
  const std::string first = slurp(g);
  const Run b = hlat("--seed 5 gen random 12 0.4 -o " + g);
  CHECK(a.out == b.out);
  CHECK_FALSE(first.empty());
  CHECK(first == slurp(g));
  CHECK(hlat("eigen " + g).out == hlat("eigen " + g).out);
  CHECK(hlat("certify " + g + " --s 2").out == hlat("certify " + g + " --s 2").out);
}

TEST_CASE("special matrix and realization") {
  const std::string h = write("h.txt", "hoffman 1 4 4\n0 1\n0 2\n0 3\n0 4\n");
  const Run sp = hlat("sp " + h);
  CHECK(sp.code == 0);
  CHECK(sp.out.find("-4") != std::string::npos);
  const std::string m = write("m.txt", "matrix 2\n-2 1\n1 0\n");
  const Run r = hlat("realize " + m);
  CHECK(r.code == 0);
  const std::string lim = write("l.txt", "matrix 1\n-3\n");
  const Run l = hlat("limit " + lim + " --i2 0 --nmax 10");
  CHECK(l.code != 3);
}

}  // TEST_SUITE
