// Contract test for the command-line tool.  argv[1] is the path to the built
// binary; everything runs in a scratch directory under the system temp path.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAIL") << ": " << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  const int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-binary>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path work = fs::temp_directory_path() / "quench_cli_test";
  fs::remove_all(work);
  fs::create_directories(work);

  check(run(bin + " presets") == 0, "presets exits 0");
  check(run(bin + " --version") == 0, "--version exits 0");

  // exit code 1 on input errors
  check(run(bin + " run nosuch") == 1, "unknown scenario exits 1");
  check(run(bin + " run cho2 --t bogus") == 1, "malformed time grid exits 1");
  check(run(bin + " run cho2 --t log:0:10:5") == 1,
        "log grid from zero exits 1");

  // a small cho2 run produces CSV + summary + schema
  const std::string out1 = (work / "a").string();
  check(run(bin + " run cho2 --omega-sq 10 --kappa 100 --t log:1e-1:1e2:20 -o " +
            out1) == 0,
        "cho2 run exits 0");
  check(fs::exists(work / "a" / "cho2.csv"), "CSV written");
  check(fs::exists(work / "a" / "cho2_summary.json"), "summary written");
  check(fs::exists(work / "a" / "cho2_schema.json"), "schema written");

  const std::string csv = slurp(work / "a" / "cho2.csv");
  check(csv.rfind("t,S,xi,l_Xs,l_Xa,l_Ps,l_Pa\n", 0) == 0,
        "CSV header row matches the contract");

  // byte-identical rerun
  const std::string out2 = (work / "b").string();
  run(bin + " run cho2 --omega-sq 10 --kappa 100 --t log:1e-1:1e2:20 -o " +
      out2);
  check(slurp(work / "a" / "cho2.csv") == slurp(work / "b" / "cho2.csv"),
        "re-run is byte-identical");

  // config file with flag override
  {
    std::ofstream cfg(work / "run.cfg");
    cfg << "[run]\n"
        << "omega-sq = 10\n"
        << "kappa = 100\n"
        << "t = log:1e-1:1e2:20\n";
  }
  const std::string out3 = (work / "c").string();
  check(run(bin + " run cho2 --config " + (work / "run.cfg").string() +
            " -o " + out3) == 0,
        "config-file run exits 0");
  check(slurp(work / "a" / "cho2.csv") == slurp(work / "c" / "cho2.csv"),
        "config file reproduces the flag run");

  const std::string out4 = (work / "d").string();
  check(run(bin + " run cho2 --config " + (work / "run.cfg").string() +
            " --kappa 0 -o " + out4) == 0,
        "flag override over config exits 0");
  check(slurp(work / "a" / "cho2.csv") != slurp(work / "d" / "cho2.csv"),
        "flag overrides the config value");

  // rotor2 header contract on a tiny grid with a small explicit cutoff
  const std::string out5 = (work / "e").string();
  check(run(bin + " run rotor2 --omega-sq 1.5 --kappa 0.5 --M 4 --t 0:2:5 -o " +
            out5) == 0,
        "rotor2 run exits 0");
  check(slurp(work / "e" / "rotor2.csv")
                .rfind("t,S_CR,S_CHO_ref,cos_plus,cos_minus\n", 0) == 0,
        "rotor2 CSV header matches the contract");

  // fieldtheory preset summary contains t_c near 12 ms
  const std::string out6 = (work / "f").string();
  check(run(bin + " run fieldtheory --preset experiment-2024 -o " + out6) == 0,
        "fieldtheory preset run exits 0");
  const std::string summary = slurp(work / "f" / "fieldtheory_summary.json");
  check(summary.find("\"t_c\": 0.012") != std::string::npos,
        "summary reports t_c at about 12 ms");

  std::cout << (failures == 0 ? "all CLI checks passed\n"
                              : "CLI checks FAILED\n");
  return failures == 0 ? 0 : 1;
}
