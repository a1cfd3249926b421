#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NILEX_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("complexity at level 10") {
    const Run r = run("complexity --level 10 --max-n 5");
    CHECK(r.code == 0);
    CHECK(r.out == "level,n,p_n\n10,1,2\n10,2,3\n10,3,4\n10,4,5\n10,5,6\n");
  }

  TEST_CASE("base exchange text") {
    const Run r = run("base");
    CHECK(r.code == 0);
    CHECK(r.out.find("piece") != std::string::npos);
    CHECK(run("base --reading literal").code == 1);
    CHECK(run("base --reading nonsense").code == 2);
  }

  TEST_CASE("theorem1 reports") {
    const Run r = run("theorem1 --n 2");
    CHECK(r.code == 0);
    CHECK(count(r.out, "relation: ") == 3);
    const Run j = run("theorem1 --n 3 --format json");
    CHECK(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc.size() == 4);
  }

  TEST_CASE("translation") {
    const Run r = run("translation --alpha 2-phi --beta 2phi-3 --max-n 3");
    CHECK(r.code == 0);
    CHECK(r.out == "n,p_n\n1,4\n2,9\n3,16\n");
    CHECK(run("translation --alpha 2-phi --beta 2phi-3 --max-n 3 --strict").code == 1);
    CHECK(run("translation --alpha 3 --beta 2phi-3 --max-n 3").code == 2);
    CHECK(run("translation --alpha 2-psi --beta 2phi-3 --max-n 3").code == 2);
  }

  TEST_CASE("language and sums") {
    const Run l = run("language --seed-lang min --iters 12 --max-len 4 --format csv");
    CHECK(l.code == 0);
    CHECK(l.out.find("4,5") != std::string::npos);
    const Run s = run("sums --max-n 3");
    CHECK(s.code == 0);
    CHECK(s.out == "n,S_n,is_record\n0,-0.500000000000,1\n1,-0.618033988750,1\n2,-0.354101966250,0\n"
                   "3,-0.708203932499,1\n");
  }

  TEST_CASE("render") {
    const Run r = run("render --level 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("2 pieces") != std::string::npos);
    CHECK(r.out.find("</svg>") != std::string::npos);
  }

  TEST_CASE("output is deterministic") {
    CHECK(run("theorem1 --n 3").out == run("theorem1 --n 3").out);
    CHECK(run("renorm --level 3").out == run("renorm --level 3").out);
  }

  TEST_CASE("output file") {
    const std::string path = "cli_test_out.csv";
    std::remove(path.c_str());
    CHECK(run("-o " + path + " complexity --level 1 --max-n 3").code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "level,n,p_n\n1,1,2\n1,2,4\n1,3,7\n");
    std::remove(path.c_str());
  }

  TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("--bogus").code == 2);
    CHECK(run("complexity --level 0 --max-n 3").code == 2);
    CHECK(run("--help").code == 0);
  }
}
