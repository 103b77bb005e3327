#include "orbitrank/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>

using namespace orbitrank;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string("cli_test_") + std::to_string(counter++) + ".spec";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
  static int counter;
};
int TempFile::counter = 0;

int run(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  if (stdout_text) *stdout_text = out.str();
  return code;
}

const char* kSpec =
    "chain S3 = [ (0 1 2),(0 1) ] > [ (0 1 2) ] > [ ]\n"
    "group W = wreath(powinf(atom(Z2)))\n"
    "group H0 = example(H, 0)\n";

}  // namespace

TEST_CASE("rank command") {
  TempFile file(kSpec);
  std::string out;
  CHECK(run({"rank", file.path, "S3"}, &out) == 0);
  CHECK(out.find("k=0: 0") != std::string::npos);
  CHECK(out.find("k=1: 1") != std::string::npos);
  CHECK(out.find("k=2: 2") != std::string::npos);
  CHECK(out.find("rho: 2") != std::string::npos);

  CHECK(run({"rank", file.path, "W", "--alpha", "1"}, &out) == 0);
  CHECK(out.find("rank = 1, not tight") != std::string::npos);
  CHECK(out.find("1-CLI: no") != std::string::npos);
  CHECK(out.find("L-1-CLI: yes") != std::string::npos);

  CHECK(run({"rank", file.path, "H0"}, &out) == 0);
  CHECK(out.find("rank = 0, tight") != std::string::npos);

  CHECK(run({"rank", file.path, "NoSuch"}) == 2);
  CHECK(run({"rank", "missing_file.spec", "S3"}) == 2);
}

TEST_CASE("tree command") {
  TempFile file(kSpec);
  std::string out;
  CHECK(run({"tree", file.path, "S3", "--k", "0"}, &out) == 0);
  CHECK(out.find("[]") != std::string::npos);  // empty orbit tree

  CHECK(run({"tree", file.path, "S3", "--k", "2", "--dot"}, &out) == 0);
  CHECK(out.find("digraph") != std::string::npos);
  // 3 nodes: one 6-class over two 3-classes
  CHECK(out.find("n0") != std::string::npos);
  CHECK(out.find("n2") != std::string::npos);
  CHECK(out.find("n3") == std::string::npos);

  CHECK(run({"tree", file.path, "S3", "--k", "9"}) == 2);
}

TEST_CASE("verify command") {
  std::string out;
  CHECK(run({"verify", "--trials", "0"}, &out) == 0);
  CHECK(out.find("warning") != std::string::npos);
  CHECK(run({"verify", "--seed", "1", "--trials", "2"}, &out) == 0);
  CHECK(out.find("hierarchy-witnesses") != std::string::npos);

  TempFile file(kSpec);
  CHECK(run({"verify", "--file", file.path, "--trials", "1"}, &out) == 0);
  CHECK(out.find("chain S3: ok") != std::string::npos);
}

TEST_CASE("truncate command") {
  TempFile file(kSpec);
  std::string out;
  std::string out_path = "cli_test_out.spec";
  CHECK(run({"truncate", file.path, "W", "--depth", "3", "--breadth", "2",
             "-o", out_path},
            &out) == 0);
  CHECK(out.find("wrote") != std::string::npos);
  std::ifstream written(out_path);
  REQUIRE(written.good());
  std::stringstream buf;
  buf << written.rdbuf();
  CHECK(buf.str().find("chain W_d3b2") != std::string::npos);
  std::remove(out_path.c_str());

  CHECK(run({"truncate", file.path, "W", "--depth", "3", "--breadth", "0",
             "-o", out_path}) == 2);
}

TEST_CASE("examples command") {
  std::string out;
  CHECK(run({"examples", "--alpha", "w"}, &out) == 0);
  CHECK(out.find("H_w") != std::string::npos);
  CHECK(out.find("G_w") != std::string::npos);
  CHECK(out.find("rank w") != std::string::npos);
  CHECK(run({"examples", "--alpha", "1", "--kind", "G"}, &out) == 0);
  CHECK(out.find("wreath(powinf(atom(Z2)))") != std::string::npos);
  CHECK(run({"examples", "--alpha", "not-an-ordinal"}) == 2);
}
