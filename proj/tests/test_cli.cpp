#include "chocolate_cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using chocolate::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

TEST(Cli, GenerateB) {
  const auto r = invoke({"gen", "--seq", "b", "--max", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 1\n2 4\n3 56\n4 1712\n5 92800\n");
}

TEST(Cli, OracleCompare) {
  const auto r = invoke({"oracle", "--m", "2", "--n", "2", "--compare"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4 == 4\n");
  EXPECT_EQ(invoke({"oracle", "--m", "4", "--n", "4"}).code, 2);
}

TEST(Cli, RiccatiSummary) {
  const auto r = invoke({"series", "--check", "riccati", "--order", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).back(), "residual zero through order 19");
}

TEST(Cli, SeededMutationsExitOne) {
  const auto b = invoke({"series", "--check", "riccati", "--order", "8", "--perturb-b", "2"});
  EXPECT_EQ(b.code, 1);
  EXPECT_EQ(lines(b.out).back(), "residual nonzero at order 1");
  EXPECT_EQ(invoke({"series", "--check", "ode", "--order", "8", "--perturb-p", "3"}).code, 1);
  const auto h = invoke({"series", "--check", "hypergeom", "--order", "8", "--perturb-p", "2"});
  EXPECT_EQ(h.code, 1);
  EXPECT_EQ(lines(h.out).back(), "residual nonzero at order 2");
  EXPECT_EQ(invoke({"series", "--check", "hypergeom", "--order", "12"}).code, 0);
}

TEST(Cli, FactorTable) {
  const auto r = invoke({"factor", "--seq", "table", "--index", "4", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4 4 63352393728 2^12*3*13*19*20873 unit\n");
  EXPECT_EQ(invoke({"factor", "--seq", "table", "--index", "4"}).code, 2);
}

TEST(Cli, ValuationBounds) {
  EXPECT_EQ(invoke({"nu", "--p", "2", "--seq", "table", "--max", "6", "--check-bound"}).code, 0);
  EXPECT_EQ(invoke({"nu", "--p", "2", "--seq", "square", "--max", "8", "--check-bound"}).code, 0);
  const auto r = invoke({"nu", "--p", "2", "--seq", "b", "--max", "11"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).back(), "11 18");
  EXPECT_EQ(invoke({"nu", "--p", "3", "--seq", "b", "--max", "5", "--check-bound"}).code, 2);
  EXPECT_EQ(invoke({"nu", "--p", "4", "--seq", "b", "--max", "5"}).code, 2);
}

TEST(Cli, PeriodExitCodes) {
  const auto ok = invoke({"period", "--seq", "b", "--modulus", "7", "--max", "200", "--hint-pp1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "7 200 PERIODIC 3 21\n");
  const auto zero = invoke({"period", "--seq", "b", "--modulus", "11", "--max", "100"});
  EXPECT_EQ(zero.code, 0);
  EXPECT_EQ(zero.out, "11 100 EVENTUALLY_ZERO 5 1\n");
  EXPECT_EQ(invoke({"period", "--seq", "b", "--modulus", "1009", "--max", "50"}).code, 3);
}

TEST(Cli, ConjectureExitCodes) {
  EXPECT_EQ(invoke({"conjecture", "--id", "1", "--primes", "2,3,11", "--max", "300"}).code, 0);
  EXPECT_EQ(invoke({"conjecture", "--id", "1", "--primes", "41", "--max", "300"}).code, 3);
  EXPECT_EQ(invoke({"conjecture", "--id", "1", "--primes", "9", "--max", "300"}).code, 2);
  EXPECT_EQ(invoke({"conjecture", "--id", "2", "--moduli", "9", "--max", "500"}).code, 0);
}

TEST(Cli, UsageErrorsGoToStderr) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"gen", "--seq", "b", "--max", "3", "--bogus"},
           {"gen", "--seq", "b", "--max", "0"},
           {"gen", "--seq", "nope", "--max", "3"},
           {"mod", "--seq", "b", "--modulus", "1", "--max", "3"},
           {"--format", "xml", "gen", "--seq", "b", "--max", "3"},
           {}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty()) << r.out;
    EXPECT_FALSE(r.err.empty());
  }
  const auto help = invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE((help.out + help.err).find("Exit codes"), std::string::npos);
}

TEST(Cli, CsvAndJsonRoundTrip) {
  const auto csv = invoke({"--format", "csv", "conjecture", "--id", "3", "--primes", "3,7", "--max", "300"});
  EXPECT_EQ(csv.code, 0);
  const auto rows = lines(csv.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "conjecture,sequence,modulus,n_max,status,preperiod,period,notes");

  // Minimal RFC 4180 reader, then re-render: must reproduce the bytes.
  auto parse = [](const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') fields.back() += '"', ++i;
        else if (c == '"') quoted = false;
        else fields.back() += c;
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.emplace_back();
      } else {
        fields.back() += c;
      }
    }
    return fields;
  };
  std::ostringstream again;
  chocolate::cli::RecordWriter w(chocolate::cli::OutputFormat::csv, again, parse(rows[0]));
  for (std::size_t i = 1; i < rows.size(); ++i) w.row(parse(rows[i]));
  EXPECT_EQ(again.str(), csv.out);

  const auto js = invoke({"--format", "jsonl", "factor", "--seq", "b", "--index", "5,11"});
  EXPECT_EQ(js.code, 0);
  for (const auto& l : lines(js.out)) {
    const auto obj = nlohmann::ordered_json::parse(l);
    EXPECT_EQ(obj.dump(), l);
    EXPECT_TRUE(obj["value"].is_string());
  }
  EXPECT_NE(js.out.find("\"value\":\"4026844843819663360\""), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"--format", "csv", "mod", "--seq", "b", "--modulus", "7,9,11,13", "--max", "400"};
  const auto a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 1u + 4 * 400);
}

TEST(Cli, CacheDirectory) {
  const fs::path dir = fs::temp_directory_path() / "chocolate-cli-cache-test";
  fs::remove_all(dir);
  const auto first = invoke({"--cache", dir.string(), "gen", "--seq", "square", "--max", "6"});
  EXPECT_EQ(first.code, 0);
  ASSERT_TRUE(fs::exists(dir / "chocolate-table.txt"));
  const auto second = invoke({"--cache", dir.string(), "gen", "--seq", "square", "--max", "6"});
  EXPECT_EQ(second.out, first.out);
  const auto cached = chocolate::load_cache(dir / "chocolate-table.txt");
  ASSERT_NE(cached.find(6, 6), nullptr);

  // A corrupted cache is a usage error, not a silent recompute.
  std::ofstream(dir / "chocolate-table.txt") << "# chocolate-table v1\n2 2 five\n";
  const auto bad = invoke({"--cache", dir.string(), "gen", "--seq", "b", "--max", "3"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find(":2:"), std::string::npos);
  fs::remove_all(dir);

  // A regular file cannot be used as the directory.
  const fs::path file = fs::temp_directory_path() / "chocolate-cli-cache-file";
  std::ofstream(file) << "x";
  EXPECT_EQ(invoke({"--cache", file.string(), "gen", "--seq", "b", "--max", "3"}).code, 2);
  fs::remove(file);
}

}  // namespace
