// End-to-end tests of the command-line tool: golden outputs, exit codes,
// JSON mode, and byte-stability across engines and thread counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

namespace {

const std::string kCli = RELTUTTE_CLI_PATH;
const std::string kFixtures = RELTUTTE_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout; stderr goes to `stderr_sink`
// ("&1" merges it into stdout, otherwise a file path or /dev/null).
RunResult run(const std::string& args, const std::string& stderr_sink = "/dev/null") {
  std::string cmd = kCli + " " + args + " 2>" + stderr_sink;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::string s, line;
  while (std::getline(in, line)) s += line + "\n";
  return s;
}

}  // namespace

TEST_CASE("golden outputs for the worked examples") {
  RunResult jones = run("jones --face-graph " + fixture("trefoil_detour.fg") + " --writhe 3");
  CHECK(jones.code == 0);
  CHECK(jones.out == "t + t^3 - t^4\n");

  RunResult same = run("jones --face-graph " + fixture("trefoil_detour.fg"));  // writhe from file
  CHECK(same.out == jones.out);

  RunResult bracket = run("bracket --face-graph " + fixture("unknot.fg"));
  CHECK(bracket.code == 0);
  CHECK(bracket.out == "1\n");

  RunResult oracle = run("oracle --pd " + fixture("kink_plus.pd"));
  CHECK(oracle.code == 0);
  CHECK(oracle.out == "-A^3\n");

  RunResult detour_bracket = run("bracket --face-graph " + fixture("trefoil_detour.fg"));
  CHECK(detour_bracket.out == "A^-7 - A^-3 - A^5\n");

  RunResult trefoil = run("jones --face-graph " + fixture("trefoil_mirror.fg"));
  CHECK(trefoil.out == "-t^-4 + t^-3 + t^-1\n");

  RunResult zero = run("zero-order --graph " + fixture("virtual_unlink2.fg"));
  CHECK(zero.code == 0);
  CHECK(zero.out == "2\n");
}

TEST_CASE("quarter powers fall back to q with a stderr notice") {
  RunResult r = run("jones --face-graph " + fixture("virtual_trefoil.fg"), "/tmp/cli_note.txt");
  CHECK(r.code == 0);
  CHECK(r.out == "q^4 + q^6 - q^10\n");
  CHECK(slurp("/tmp/cli_note.txt").find("printing in q") != std::string::npos);

  // A whole-powers result carries no notice.
  run("jones --face-graph " + fixture("trefoil_detour.fg"), "/tmp/cli_quiet.txt");
  CHECK(slurp("/tmp/cli_quiet.txt").empty());
}

TEST_CASE("json mode wraps the same text result") {
  RunResult b = run("bracket --face-graph " + fixture("trefoil_detour.fg") + " --json");
  CHECK(b.out == "{\"result\":\"A^-7 - A^-3 - A^5\"}\n");

  RunResult jt = run("jones --face-graph " + fixture("trefoil_detour.fg") + " --json");
  CHECK(jt.out == "{\"result\":\"t + t^3 - t^4\",\"variable\":\"t\"}\n");

  RunResult jq = run("jones --face-graph " + fixture("virtual_trefoil.fg") + " --json");
  CHECK(jq.out == "{\"result\":\"q^4 + q^6 - q^10\",\"variable\":\"q\"}\n");

  RunResult o = run("oracle --pd " + fixture("unknot.pd") + " --json");
  CHECK(o.out == "{\"result\":\"1\"}\n");
}

TEST_CASE("tutte subcommand: engines, zero edges, psi, localization") {
  std::string tri = "/tmp/cli_triangle.json";
  {
    std::ofstream out(tri);
    out << R"({"vertices":[1,2,3],"edges":[)"
        << R"({"id":1,"ends":[1,2],"color":"a"},)"
        << R"({"id":2,"ends":[2,3],"color":"a"},)"
        << R"({"id":3,"ends":[3,1],"color":"a"}]})";
  }
  RunResult expansion = run("tutte --graph " + tri + " --zero-edges 3 --psi rank-z");
  RunResult dc = run("tutte --graph " + tri + " --zero-edges 3 --psi rank-z --engine dc");
  CHECK(expansion.code == 0);
  CHECK(expansion.out == "y[a]*X[a]*z + x[a]*y[a]*z + x[a]^2\n");
  CHECK(dc.out == expansion.out);

  RunResult local = run("tutte --graph " + tri + " --zero-edges 3 --psi rank-z --localized");
  CHECK(local.out == "y[a]^2*Xloc*z + 2*x[a]*y[a]*z + x[a]^2\n");

  // Face-graph files are plain graph files with one extra field, so the
  // tutte subcommand reads them too; color "0" marks the zero edges.
  RunResult trefoil_detour = run("tutte --graph " + fixture("trefoil_detour.fg") + " --psi knot");
  CHECK(trefoil_detour.out ==
        "y[+]^2*X[+]*d + x[+]*y[+]*X[+] + x[+]*y[+]^2*d + x[+]^2*Y[+] + x[+]^2*y[+]\n");
}

TEST_CASE("pointed and cluster golden outputs") {
  std::string bridge = "/tmp/cli_bridge.json";
  {
    std::ofstream out(bridge);
    out << R"({"vertices":[1,2],"edges":[{"id":1,"ends":[1,2],"color":"a"}]})";
  }
  CHECK(run("pointed --graph " + bridge).out == "x\n");
  CHECK(run("pointed --graph " + bridge + " --pointed-set 1").out == "z\n");
  CHECK(run("pointed --graph " + bridge + " --pointed-set 1 --method via-relative").out == "z\n");
  CHECK(run("cluster --graph " + bridge + " --p-default 1/3").out ==
        "1/3*kappa + 2/3*kappa^2\n");
  CHECK(run("cluster --graph " + bridge + " --p 1=2/4").out ==
        "1/2*kappa + 1/2*kappa^2\n");
}

TEST_CASE("exit codes: 0 ok, 1 bad input, help is 0") {
  CHECK(run("--help").code == 0);
  CHECK(run("jones --help").code == 0);
  CHECK(run("").code == 1);                                             // missing subcommand
  CHECK(run("frobnicate").code == 1);                                   // unknown subcommand
  CHECK(run("jones --face-graph /no/such/file").code == 1);
  CHECK(run("tutte --graph " + fixture("trefoil_detour.fg") + " --psi bogus").code == 1);
  CHECK(run("tutte --graph " + fixture("trefoil_detour.pd")).code == 1);          // not JSON
  CHECK(run("oracle --pd " + fixture("trefoil_detour.fg")).code == 1);            // not a PD file
  CHECK(run("jones --face-graph /tmp/cli_triangle.json").code == 1);    // no writhe field
  CHECK(run("zero-order --graph " + fixture("trefoil_detour.fg")).code == 1);     // has regular edges
  CHECK(run("cluster --graph " + fixture("trefoil_detour.fg")).code == 1);        // missing probabilities
  CHECK(run("cluster --graph /tmp/cli_bridge.json --p 1=3/2").code == 1);
  CHECK(run("pointed --graph /tmp/cli_bridge.json --pointed-set 9").code == 1);
  CHECK(run("tutte --graph " + fixture("trefoil_detour.fg") + " --zero-edges 1,nope").code == 1);
}

TEST_CASE("error text lands on stderr, stdout stays empty") {
  RunResult quiet = run("jones --face-graph /no/such/file");
  CHECK(quiet.out.empty());
  RunResult merged = run("jones --face-graph /no/such/file", "&1");
  CHECK(merged.out.find("error:") != std::string::npos);
}

TEST_CASE("output is byte-stable across runs and thread counts") {
  std::string cmd = "oracle --pd " + fixture("torus_link4.pd");
  std::string first = run(cmd + " --threads 1").out;
  CHECK(first == run(cmd + " --threads 4").out);
  CHECK(first == run(cmd + " --threads 3").out);
  CHECK(first == run(cmd).out);

  std::string tutte_cmd = "tutte --graph " + fixture("trefoil_detour.fg") + " --psi knot";
  std::string t1 = run(tutte_cmd + " --threads 1").out;
  CHECK(t1 == run(tutte_cmd + " --threads 4").out);
  CHECK(t1 == run(tutte_cmd).out);
}

TEST_CASE("selftest passes and reports every check") {
  RunResult r = run("selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("ok   ") != std::string::npos);
  CHECK(r.out.find("selftest passed") != std::string::npos);
  // Each pinned example prints exactly one line.
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 23);  // 22 checks + the final verdict
}
