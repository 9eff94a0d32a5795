#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QF2_CLI + std::string(" ") + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST(Cli, AnchoredExamples) {
  CliRun r = run("isotropy --field 'F2(t,u)' '<1,t,u,t*u>'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 2), "No");

  r = run("classify --field 'F2(w,x,y,z)' --phi 'w*[1,x]+<1,y,z>' --psi '<1,y>'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("Yes (branch Lemma)", 0), 0u) << r.out;

  r = run("ndeg --field 'F2(t,u,v)' '<1,t,u,v>'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "8\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("isotropy --field 'F2(t,u)' '<1,t,u+'").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("classify --field 'F2(t,u,v,w)' --phi '[1,t]+<1,u,v>' --psi '<1,u>'").code, 1);
  // No residue tools over a separable extension and no search budget.
  const CliRun u = run("isotropy --field 'F2(t,u)[sep:t*u]' '<1,t,u,$1>' --degree 0");
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(u.out.rfind("Unknown", 0), 0u);
}

TEST(Cli, JsonAndDeterminism) {
  const std::string gen = "gen-corpus --seed 4 --count 1 --profile '1.2(3)'";
  const CliRun a = run(gen), b = run(gen);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"screening\""), std::string::npos);

  const CliRun j = run("classify --json --field 'F2(w,x,y,z)' --phi 'w*[1,x]+<1,y,z>' --psi 'w*[1,x]+<1,y,z>'");
  EXPECT_EQ(j.code, 0);
  for (const char* key : {"\"verdict\":\"Yes\"", "\"branch\":\"1.2(3)\"", "\"witness\"", "\"transcript\""})
    EXPECT_NE(j.out.find(key), std::string::npos) << key;
}

TEST(Cli, DegreeFromEnvironment) {
  const std::string form = "witt --json --field 'F2(t,u)' '[1,t]+[1,t]'";
  EXPECT_EQ(run(form, "QF2_DEGREE_BOUND=2").code, 0);
  EXPECT_EQ(run(form, "QF2_DEGREE_BOUND=abc").code, 1);
  EXPECT_EQ(run(form + " --degree 3", "QF2_DEGREE_BOUND=abc").code, 0);
}
