// End-to-end checks of the fbstairs command-line tool: each case launches
// the real binary in a subprocess and inspects exit code, stdout, stderr,
// and any files it writes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs `env_prefix fbstairs args`, capturing both streams.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out_path = dir / ("fbstairs_cli_out_" + std::to_string(counter));
  const fs::path err_path = dir / ("fbstairs_cli_err_" + std::to_string(counter));
  ++counter;
  const std::string cmd = env_prefix + FBSTAIRS_BIN " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

/// Rows below the '#' preamble and the header line.
std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> rows;
  bool header_seen = false;
  for (const std::string& line : lines_of(text)) {
    if (!line.empty() && line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

fs::path fresh_temp(const std::string& stem) {
  const fs::path p = fs::temp_directory_path() / stem;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("farey command lists one level exactly") {
  const RunResult r = run_cli("farey --k 4");
  CHECK(r.exit_code == 0);
  const std::vector<std::string> rows = data_rows(r.out);
  const std::vector<std::string> expected = {"0,1", "1,4", "1,3", "2,5", "1,2",
                                             "3,5", "2,3", "3,4", "1,1"};
  REQUIRE(rows.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(rows[i] == expected[i]);
  CHECK(contains(r.out, "# table=farey"));
  CHECK(contains(r.out, "# k=4"));

  const RunResult base = run_cli("farey --k 1");
  CHECK(data_rows(base.out) == std::vector<std::string>{"0,1", "1,1"});

  const RunResult json = run_cli("farey --k 1 --format json");
  CHECK(json.exit_code == 0);
  CHECK(contains(json.out, "\"columns\": [\"q\", \"p\"]"));
  CHECK(contains(json.out, "[\"0\", \"1\"]"));
  CHECK(contains(json.out, "\"k\": \"1\""));

  CHECK(run_cli("farey --k 25").exit_code == 2);
  CHECK(run_cli("farey --k 0").exit_code == 2);
  const RunResult missing = run_cli("farey");
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.err, "help"));
}

TEST_CASE("classify command labels digit sequences") {
  const RunResult golden = run_cli("classify --digits golden --n 30");
  CHECK(golden.exit_code == 0);
  CHECK(contains(golden.out, "label,,G_2\n"));
  CHECK(contains(golden.out, "beta_hat,,"));
  CHECK(contains(golden.out, "ratio,"));
  CHECK(contains(golden.out, "exponent,"));

  const RunResult cyc = run_cli("classify --digits 1,1,1,... --n 30");
  CHECK(cyc.exit_code == 0);
  // The cycled literal is the same sequence; only the echoed spec differs.
  CHECK(data_rows(cyc.out) == data_rows(golden.out));

  const RunResult liou = run_cli("classify --digits liouville:1 --n 5");
  CHECK(liou.exit_code == 0);
  CHECK(contains(liou.out, "label,,G_inf\n"));

  const RunResult fin = run_cli("classify --digits 2,2,2");
  CHECK(fin.exit_code == 0);
  CHECK(contains(fin.out, "label,,rational\n"));
  CHECK(contains(fin.out, "value,,5/12\n"));
  CHECK(contains(fin.out, "digits,,3\n"));

  const RunResult pow = run_cli("classify --digits power:5/2 --n 20");
  CHECK(pow.exit_code == 0);
  CHECK(contains(pow.out, "label,,G_2.5\n"));
  CHECK(contains(pow.out, "beta_hat,,2.50000000000000e+00\n"));

  CHECK(run_cli("classify --digits 1,x,3").exit_code == 2);
  CHECK(run_cli("classify").exit_code == 2);
  CHECK(run_cli("classify --digits golden --n 1").exit_code == 2);
}

TEST_CASE("lock command is cache-warm, sorted, and byte-deterministic") {
  const fs::path cache = fresh_temp("fbstairs_cli_lock_cache.csv");
  const std::string base = "lock --depth 2 --cache " + cache.string();

  const RunResult cold = run_cli(base);
  CHECK(cold.exit_code == 0);
  const std::vector<std::string> rows = data_rows(cold.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("0,1,", 0) == 0);
  CHECK(rows[1].rfind("1,1,", 0) == 0);
  CHECK(rows[2].rfind("1,2,", 0) == 0);
  CHECK(rows[3].rfind("1,3,", 0) == 0);
  CHECK(rows[4].rfind("2,3,", 0) == 0);
  CHECK(contains(cold.err, "5 misses"));
  for (const std::string& row : rows) CHECK(contains(row, ",1,"));  // converged

  const RunResult warm = run_cli(base);
  CHECK(warm.exit_code == 0);
  CHECK(contains(warm.err, "5 hits, 0 misses"));

  // A cache hit reports residual = omega_tol (its guaranteed bound) instead
  // of the fresh-solve residual, so compare everything up to that column.
  const auto strip_residual = [](const std::string& text) {
    std::vector<std::string> kept;
    for (const std::string& row : data_rows(text))
      kept.push_back(row.substr(0, row.rfind(',')));
    return kept;
  };
  CHECK(strip_residual(warm.out) == strip_residual(cold.out));

  // Warm re-runs are byte-identical regardless of worker count.
  const RunResult parallel = run_cli(base + " --jobs 3");
  CHECK(parallel.exit_code == 0);
  CHECK(parallel.out == warm.out);
  const RunResult warm2 = run_cli(base);
  CHECK(warm2.out == warm.out);

  // Same cache file under different solver settings must be refused.
  const RunResult clash = run_cli(base + " --omega-tol 1e-08");
  CHECK(clash.exit_code == 4);
  CHECK(contains(clash.err, "mismatch"));

  CHECK(run_cli("lock --depth 9 --max-period 50").exit_code == 2);
  CHECK(run_cli("lock --model ising --depth 2").exit_code == 2);
  fs::remove(cache);
}

TEST_CASE("staircase command prints plateau tables") {
  const RunResult ising = run_cli("staircase --model ising --a 1 --gamma 1 --depth 3");
  CHECK(ising.exit_code == 0);
  const std::vector<std::string> rows = data_rows(ising.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("0,1,", 0) == 0);
  CHECK(contains(rows[0], "1.00000000000000e+00"));  // width (1*1)^-2
  CHECK(contains(rows[1], "1.11111111111111e-01"));  // 1/3 width 3^-2
  CHECK(contains(rows[2], "2.50000000000000e-01"));  // 1/2 width 2^-2
  CHECK(contains(ising.out, "# a=1.00000000000000e+00"));
  CHECK(contains(ising.out, "# level=3"));

  const RunResult ternary = run_cli("staircase --model ternary --depth 2");
  CHECK(ternary.exit_code == 0);
  CHECK(contains(ternary.out, "1,2,"));
  CHECK(contains(ternary.out, "3.33333333333333e-01"));

  const RunResult again = run_cli("staircase --model ternary --depth 2");
  CHECK(again.out == ternary.out);
}

TEST_CASE("omega command emits dust intervals in both formats") {
  const RunResult csv = run_cli("omega --model ternary --depth 2");
  CHECK(csv.exit_code == 0);
  const std::vector<std::string> rows = data_rows(csv.out);
  REQUIRE(rows.size() == 4);
  for (const std::string& row : rows) {
    CHECK(contains(row, "1.11111111111111e-01"));
    CHECK(contains(row, "1.00000000000000e+00"));
  }
  CHECK(rows[0].rfind("2,0,1,1,3,", 0) == 0);
  CHECK(rows[3].rfind("2,2,3,1,1,", 0) == 0);

  const RunResult json = run_cli("omega --model ternary --depth 2 --format json");
  CHECK(json.exit_code == 0);
  CHECK(contains(json.out, "\"name\": \"omega\""));
  CHECK(contains(json.out, "\"1.11111111111111e-01\""));
  CHECK(contains(json.out, "\"model\": \"ternary\""));
}

TEST_CASE("spectrum command evaluates the moment grid") {
  const RunResult def = run_cli("spectrum --model ternary --depth 3");
  CHECK(def.exit_code == 0);
  const std::vector<std::string> rows = data_rows(def.out);
  REQUIRE(rows.size() == 81);
  bool found_q0 = false;
  for (const std::string& row : rows) {
    if (row.rfind("0.00000000000000e+00,", 0) == 0) {
      found_q0 = true;
      CHECK(contains(row, "-6.30929753571"));  // tau(0) = -ln2/ln3
      CHECK(contains(row, ",6.30929753571"));  // alpha and f collapse there
    }
  }
  CHECK(found_q0);
  CHECK(contains(def.out, "# qgrid=default"));

  const RunResult custom = run_cli("spectrum --model ternary --depth 3 --qgrid 0:2:3");
  CHECK(custom.exit_code == 0);
  const std::vector<std::string> crows = data_rows(custom.out);
  REQUIRE(crows.size() == 3);
  CHECK(crows[1].rfind("1.00000000000000e+00,0.00000000000000e+00,", 0) == 0);
  CHECK(contains(custom.out, "# qgrid=0:2:3"));

  CHECK(run_cli("spectrum --model ternary --depth 3 --qgrid 0:2").exit_code == 2);
  CHECK(run_cli("spectrum --model ternary --depth 3 --qgrid 2:0:5").exit_code == 2);
}

TEST_CASE("fig1 command tabulates mean widths with base-10 log columns") {
  const RunResult r = run_cli("fig1 --model ising --a 1 --gamma 1 --pmax 8");
  CHECK(r.exit_code == 0);
  const std::vector<std::string> rows = data_rows(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] ==
        "1,1.00000000000000e+00,0.00000000000000e+00,0.00000000000000e+00");
  CHECK(rows[1].rfind("2,2.50000000000000e-01,3.01029995663981e-01,", 0) == 0);
  CHECK(contains(r.err, "slope=-2.00000000000000e+00"));
  CHECK(contains(r.err, "r2=1.00000000000000e+00"));

  CHECK(run_cli("fig1 --pmax 300").exit_code == 2);  // above the solver cap
  CHECK(run_cli("fig1 --pmax 0").exit_code == 2);
}

TEST_CASE("selfsim command reports per-level fits and the slope law") {
  const fs::path pts = fresh_temp("fbstairs_cli_selfsim_points.csv");
  const std::string cmd =
      "selfsim --model ising --a 1 --gamma 1 --table-pmax 2048 --kmin 2 "
      "--kmax 4 --points-out " + pts.string();
  const RunResult r = run_cli(cmd);
  CHECK(r.exit_code == 0);
  const std::vector<std::string> rows = data_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].rfind("2,2.47971787463430e-01,", 0) == 0);
  CHECK(rows[1].rfind("3,2.58402629135965e-01,", 0) == 0);
  CHECK(rows[2].rfind("4,2.68448982414360e-01,", 0) == 0);
  CHECK(contains(r.err, "slope law:"));

  REQUIRE(fs::exists(pts));
  const std::string pts_text = slurp(pts);
  const std::vector<std::string> prow = data_rows(pts_text);
  CHECK(prow.size() == 4 + 8 + 16);  // 2^k dust intervals per level
  CHECK(contains(pts_text, "# table=selfsim_points"));

  const RunResult again = run_cli(cmd);
  CHECK(again.out == r.out);
  CHECK(slurp(pts) == pts_text);
  fs::remove(pts);

  CHECK(run_cli("selfsim --model ising --kmin 1 --kmax 4").exit_code == 2);
  CHECK(run_cli("selfsim --model ising --kmin 3 --kmax 3").exit_code == 2);
}

TEST_CASE("cache path environment variable overrides the flag") {
  const fs::path env_cache = fresh_temp("fbstairs_cli_env_cache.csv");
  const fs::path flag_cache = fresh_temp("fbstairs_cli_flag_cache.csv");
  const RunResult r =
      run_cli("lock --depth 2 --cache " + flag_cache.string(),
              "FBSTAIRS_CACHE_PATH=" + env_cache.string() + " ");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(env_cache));
  CHECK_FALSE(fs::exists(flag_cache));
  fs::remove(env_cache);
}

TEST_CASE("solver non-convergence exits 3 after writing the table") {
  const RunResult stair = run_cli("staircase --depth 2 --omega-tol 1e-30");
  CHECK(stair.exit_code == 3);
  CHECK(contains(stair.err, "non-converged"));
  CHECK(data_rows(stair.out).size() == 3);  // table still written in full

  const RunResult om = run_cli("omega --depth 1 --omega-tol 1e-30");
  CHECK(om.exit_code == 3);
  CHECK(contains(om.err, "non-converged"));
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  const RunResult unknown_opt = run_cli("farey --k 4 --nonsense 7");
  CHECK(unknown_opt.exit_code == 2);
  CHECK(contains(unknown_opt.err, "unknown option --nonsense"));
  const RunResult help = run_cli("help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "usage: fbstairs"));
  CHECK(run_cli("omega --model nosuch --depth 2").exit_code == 2);
}
