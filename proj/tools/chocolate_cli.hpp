#pragma once

// Command-line front end. run() is the whole program; main() only forwards
// argv so the tests can drive every subcommand in-process.
//
// Exit codes: 0 all checks pass, 1 a checked claim failed, 2 usage error,
// 3 not enough evidence to decide.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chocolate/arith.hpp"
#include "chocolate/conjecture.hpp"
#include "chocolate/generating.hpp"
#include "chocolate/modular.hpp"
#include "chocolate/oracle.hpp"
#include "chocolate/period.hpp"
#include "chocolate/table.hpp"

namespace chocolate::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kUsage = 2, kUnresolved = 3 };

inline constexpr const char* kCacheEnv = "CHOCOLATE_CACHE_DIR";
inline constexpr const char* kCacheFile = "chocolate-table.txt";

enum class OutputFormat { plain_lines, csv, json_lines };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-column record output. Every value is already an exact decimal (or
// plain text) string; JSON carries them as strings too.
class RecordWriter {
 public:
  RecordWriter(OutputFormat format, std::ostream& out, std::vector<std::string> columns)
      : format_(format), out_(out), columns_(std::move(columns)) {
    if (format_ == OutputFormat::csv) write_csv_line(columns_);
  }

  void row(const std::vector<std::string>& values) {
    switch (format_) {
      case OutputFormat::plain_lines: {
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? " " : "") << values[i];
        out_ << '\n';
        break;
      }
      case OutputFormat::csv: write_csv_line(values); break;
      case OutputFormat::json_lines: {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < values.size() && i < columns_.size(); ++i) obj[columns_[i]] = values[i];
        out_ << obj.dump() << '\n';
        break;
      }
    }
  }

 private:
  void write_csv_line(const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      const std::string& v = values[i];
      if (v.find_first_of(",\"\n") == std::string::npos) {
        out_ << v;
      } else {
        out_ << '"';
        for (char c : v) out_ << (c == '"' ? "\"\"" : std::string(1, c));
        out_ << '"';
      }
    }
    out_ << '\n';
  }

  OutputFormat format_;
  std::ostream& out_;
  std::vector<std::string> columns_;
};

// Loads the table from DIR/chocolate-table.txt when a cache directory is in
// use and writes it back on save().
class CacheSession {
 public:
  explicit CacheSession(std::optional<std::filesystem::path> dir) {
    if (!dir) return;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(*dir, ec);
    if (!fs::is_directory(*dir)) throw UsageError("cache directory " + dir->string() + " is not usable");
    const fs::path probe = *dir / ".write-probe";
    {
      std::ofstream p(probe);
      if (!p) throw UsageError("cache directory " + dir->string() + " is not writable");
    }
    fs::remove(probe, ec);
    file_ = *dir / kCacheFile;
    if (fs::exists(*file_)) table_ = load_cache(*file_);
  }

  ChocolateTable& table() { return table_; }

  void save() const {
    if (file_) save_cache(table_, *file_);
  }

 private:
  std::optional<std::filesystem::path> file_;
  ChocolateTable table_;
};

namespace detail {

inline std::string str(std::size_t v) { return std::to_string(v); }

inline std::optional<std::filesystem::path> cache_dir(const CLI::Option* opt, const std::string& value) {
  if (opt->count() == 0) return std::nullopt;
  if (!value.empty()) return std::filesystem::path(value);
  if (const char* env = std::getenv(kCacheEnv); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  throw UsageError(std::string("--cache given without a directory and ") + kCacheEnv + " is unset");
}

inline BigInt parse_decimal(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string(what) + " must be a nonnegative decimal integer");
  }
  return BigInt(s);
}

inline std::vector<modular::Residue> residues_for(const std::string& seq, std::size_t n_max,
                                                  std::uint64_t m) {
  return seq == "p" ? modular::p_sequence_mod(n_max, m) : modular::chocolate2_mod(n_max, m);
}

inline const char* help_footer() {
  return R"(Output columns (csv header / json keys), all values exact decimal strings:
  gen       table,triangle: m,n,value   b,square: n,value   distinct: k,value
  oracle    m,n,oracle[,recursion,match]
  factor    b: n,value,factorization,cofactor_status   table: m,n,value,factorization,cofactor_status
  nu        b,square: n,nu[,bound,ok]   table: m,n,nu[,bound,ok]
  mod       modulus,n,residue
  period    modulus,n_max,status,preperiod,period
  series    k,coefficient
  conjecture conjecture,sequence,modulus,n_max,status,preperiod,period,notes

Exit codes: 0 all checks pass, 1 a checked claim failed, 2 usage error,
3 not enough evidence to decide.)";
}

}  // namespace detail

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chocolate numbers: exact values, brute-force checks, residue scans and series identities",
               "chocolate"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(detail::help_footer());

  std::string format_name = "plain";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"plain", "plain_lines", "csv", "jsonl", "json_lines"}));
  std::string cache_value;
  CLI::Option* cache_opt =
      app.add_option("--cache", cache_value, std::string("Cache directory (default from ") + kCacheEnv + ")")
          ->expected(0, 1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate chocolate-number sequences");
  std::string gen_seq;
  unsigned gen_max = 0;
  std::string gen_limit;
  gen->add_option("--seq", gen_seq, "Sequence")
      ->required()
      ->check(CLI::IsMember({"table", "triangle", "b", "square", "distinct"}));
  auto* gen_max_opt = gen->add_option("--max", gen_max, "Index bound")->check(CLI::Range(1u, 100000u));
  auto* gen_limit_opt = gen->add_option("--limit", gen_limit, "Value bound (distinct)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Count break sequences by brute force");
  unsigned orc_m = 0, orc_n = 0, orc_area = oracle::kDefaultAreaLimit;
  bool orc_compare = false;
  orc->add_option("--m", orc_m, "Rows")->required()->check(CLI::Range(1u, 1000u));
  orc->add_option("--n", orc_n, "Columns")->required()->check(CLI::Range(1u, 1000u));
  orc->add_option("--area-limit", orc_area, "Largest m*n accepted")->check(CLI::Range(1u, 30u));
  orc->add_flag("--compare", orc_compare, "Also evaluate the recursion and compare");

  // factor
  auto* fac = app.add_subcommand("factor", "Factor B_n or A(m,n)");
  std::string fac_seq;
  std::vector<unsigned> fac_index;
  std::uint64_t fac_bound = arith::kDefaultTrialBound;
  fac->add_option("--seq", fac_seq, "Sequence")->required()->check(CLI::IsMember({"b", "table"}));
  fac->add_option("--index", fac_index, "n for b; m n pairs for table")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(1u, 2000u));
  fac->add_option("--trial-bound", fac_bound, "Trial division bound")->check(CLI::Range(2ull, 1'000'000'000ull));

  // nu
  auto* nu = app.add_subcommand("nu", "p-adic valuations");
  std::uint64_t nu_p = 2;
  std::string nu_seq;
  unsigned nu_max = 0;
  bool nu_check = false;
  nu->add_option("--p", nu_p, "Prime")->required();
  nu->add_option("--seq", nu_seq, "Sequence")->required()->check(CLI::IsMember({"b", "square", "table"}));
  nu->add_option("--max", nu_max, "Index bound")->required()->check(CLI::Range(1u, 2000u));
  nu->add_flag("--check-bound", nu_check, "Check the 2-adic lower bounds");

  // mod
  auto* mod = app.add_subcommand("mod", "Residues of B_n or P_n");
  std::string mod_seq;
  std::vector<std::uint64_t> mod_moduli;
  std::size_t mod_max = 0;
  mod->add_option("--seq", mod_seq, "Sequence")->required()->check(CLI::IsMember({"b", "p"}));
  mod->add_option("--modulus", mod_moduli, "Modulus list")->required()->delimiter(',')->check(CLI::Range(2ull, 1ull << 62));
  mod->add_option("--max", mod_max, "Number of terms")->required()->check(CLI::Range(std::size_t{1}, std::size_t{10'000'000}));

  // period
  auto* per = app.add_subcommand("period", "Detect eventual periodicity");
  std::string per_seq;
  std::uint64_t per_mod = 0;
  std::size_t per_max = 0;
  bool per_hint = false;
  PeriodOptions per_opt;
  per->add_option("--seq", per_seq, "Sequence")->required()->check(CLI::IsMember({"b", "p"}));
  per->add_option("--modulus", per_mod, "Modulus")->required()->check(CLI::Range(2ull, 1ull << 31));
  per->add_option("--max", per_max, "Number of terms")->required()->check(CLI::Range(std::size_t{8}, std::size_t{10'000'000}));
  per->add_flag("--hint-pp1", per_hint, "Try divisors of M(M-1) first");
  per->add_option("--min-repeats", per_opt.min_repeats, "Periods the tail must contain")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  per->add_option("--tail-fraction-den", per_opt.tail_fraction_den, "Tail must cover 1/D of the terms")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));

  // series
  auto* ser = app.add_subcommand("series", "Check generating-function identities");
  std::string ser_check;
  std::size_t ser_order = 0;
  std::optional<std::size_t> perturb_b, perturb_p;
  ser->add_option("--check", ser_check, "Identity")->required()->check(CLI::IsMember({"riccati", "ode", "hypergeom"}));
  ser->add_option("--order", ser_order, "Truncation order")->required()->check(CLI::Range(std::size_t{1}, std::size_t{400}));
  ser->add_option("--perturb-b", perturb_b, "Add one to B_K before checking");
  ser->add_option("--perturb-p", perturb_p, "Add one to P_K before checking");

  // conjecture
  auto* con = app.add_subcommand("conjecture", "Scan the open periodicity statements");
  int con_id = 0;
  std::vector<std::uint64_t> con_moduli;
  std::size_t con_max = 0;
  con->add_option("--id", con_id, "Statement 1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  con->add_option("--primes,--moduli", con_moduli, "Prime (or modulus) list")->required()->delimiter(',')->check(CLI::Range(2ull, 1ull << 31));
  con->add_option("--max", con_max, "Number of terms")->required()->check(CLI::Range(std::size_t{100}, std::size_t{10'000'000}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const OutputFormat format = format_name == "csv" ? OutputFormat::csv
                              : (format_name == "jsonl" || format_name == "json_lines")
                                  ? OutputFormat::json_lines
                                  : OutputFormat::plain_lines;

  try {
    if (*gen) {
      const bool distinct = gen_seq == "distinct";
      if (distinct && gen_limit_opt->count() == 0) throw UsageError("gen --seq distinct needs --limit");
      if (!distinct && gen_max_opt->count() == 0) throw UsageError("gen --seq " + gen_seq + " needs --max");
      if (!distinct && gen_limit_opt->count() > 0) throw UsageError("--limit only applies to --seq distinct");
      CacheSession cache(detail::cache_dir(cache_opt, cache_value));
      ChocolateTable& table = cache.table();
      if (gen_seq == "table") {
        RecordWriter w(format, out, {"m", "n", "value"});
        for (unsigned m = 1; m <= gen_max; ++m) {
          for (unsigned n = 1; n <= gen_max; ++n) {
            w.row({detail::str(m), detail::str(n), chocolate_number(m, n, table).str()});
          }
        }
      } else if (gen_seq == "triangle") {
        RecordWriter w(format, out, {"m", "n", "value"});
        for (const auto& t : generate(SequenceSpec::rows(SequenceKind::triangle_rows, gen_max), table)) {
          w.row({detail::str(t.m), detail::str(t.n), t.value.str()});
        }
      } else if (gen_seq == "distinct") {
        RecordWriter w(format, out, {"k", "value"});
        const BigInt limit = detail::parse_decimal(gen_limit, "--limit");
        if (limit < 1) throw UsageError("--limit must be positive");
        std::size_t k = 0;
        for (const auto& t : generate(SequenceSpec::up_to(limit), table)) w.row({detail::str(++k), t.value.str()});
      } else {
        const auto kind = gen_seq == "b" ? SequenceKind::two_by_n : SequenceKind::square;
        RecordWriter w(format, out, {"n", "value"});
        for (const auto& t : generate(SequenceSpec::rows(kind, gen_max), table)) {
          w.row({detail::str(t.n), t.value.str()});
        }
      }
      cache.save();
      return kOk;
    }

    if (*orc) {
      if (std::uint64_t{orc_m} * orc_n > orc_area) {
        throw UsageError("m*n = " + std::to_string(std::uint64_t{orc_m} * orc_n) + " exceeds --area-limit " +
                         std::to_string(orc_area));
      }
      const BigInt brute = oracle::count_sequences(orc_m, orc_n, orc_area);
      if (!orc_compare) {
        RecordWriter w(format, out, {"m", "n", "oracle"});
        if (format == OutputFormat::plain_lines) out << brute << '\n';
        else w.row({detail::str(orc_m), detail::str(orc_n), brute.str()});
        return kOk;
      }
      CacheSession cache(detail::cache_dir(cache_opt, cache_value));
      const BigInt rec = chocolate_number(orc_m, orc_n, cache.table());
      cache.save();
      const bool match = brute == rec;
      if (format == OutputFormat::plain_lines) {
        out << brute << (match ? " == " : " != ") << rec << '\n';
      } else {
        RecordWriter w(format, out, {"m", "n", "oracle", "recursion", "match"});
        w.row({detail::str(orc_m), detail::str(orc_n), brute.str(), rec.str(), match ? "true" : "false"});
      }
      return match ? kOk : kClaimFailed;
    }

    if (*fac) {
      CacheSession cache(detail::cache_dir(cache_opt, cache_value));
      ChocolateTable& table = cache.table();
      if (fac_seq == "b") {
        RecordWriter w(format, out, {"n", "value", "factorization", "cofactor_status"});
        for (unsigned n : fac_index) {
          const BigInt v = chocolate2(n, table);
          const auto f = arith::factor(v, fac_bound);
          w.row({detail::str(n), v.str(), f.str(), arith::to_string(f.cofactor_status)});
        }
      } else {
        if (fac_index.size() % 2 != 0) throw UsageError("factor --seq table needs --index m n pairs");
        RecordWriter w(format, out, {"m", "n", "value", "factorization", "cofactor_status"});
        for (std::size_t i = 0; i < fac_index.size(); i += 2) {
          const unsigned m = fac_index[i], n = fac_index[i + 1];
          const BigInt v = chocolate_number(m, n, table);
          const auto f = arith::factor(v, fac_bound);
          w.row({detail::str(m), detail::str(n), v.str(), f.str(), arith::to_string(f.cofactor_status)});
        }
      }
      cache.save();
      return kOk;
    }

    if (*nu) {
      if (!arith::is_prime(nu_p)) throw UsageError("--p must be prime");
      if (nu_check && nu_p != 2) throw UsageError("--check-bound applies to --p 2 only");
      CacheSession cache(detail::cache_dir(cache_opt, cache_value));
      ChocolateTable& table = cache.table();
      bool all_ok = true;
      auto bound_cols = [&](std::optional<unsigned> bound, unsigned v, std::vector<std::string>& row) {
        if (!nu_check) return;
        if (!bound) {
          row.insert(row.end(), {"-", "-"});
          return;
        }
        const bool ok = v >= *bound;
        all_ok = all_ok && ok;
        row.insert(row.end(), {detail::str(*bound), ok ? "yes" : "no"});
      };
      std::vector<std::string> cols = nu_seq == "table" ? std::vector<std::string>{"m", "n", "nu"}
                                                        : std::vector<std::string>{"n", "nu"};
      if (nu_check) cols.insert(cols.end(), {"bound", "ok"});
      RecordWriter w(format, out, cols);
      if (nu_seq == "table") {
        for (unsigned m = 1; m <= nu_max; ++m) {
          for (unsigned n = 1; n <= nu_max; ++n) {
            const unsigned v = arith::nu_p(chocolate_number(m, n, table), nu_p);
            std::vector<std::string> row{detail::str(m), detail::str(n), detail::str(v)};
            bound_cols(m > 1 && n > 1 ? std::optional<unsigned>(m + n - 2) : std::nullopt, v, row);
            w.row(row);
          }
        }
      } else {
        const bool b = nu_seq == "b";
        for (unsigned n = 1; n <= nu_max; ++n) {
          const BigInt value = b ? chocolate2(n, table) : chocolate_number(n, n, table);
          const unsigned v = arith::nu_p(value, nu_p);
          std::vector<std::string> row{detail::str(n), detail::str(v)};
          std::optional<unsigned> bound;
          if (b && n > 1) bound = n;
          if (!b) bound = 2 * n - 2;
          bound_cols(bound, v, row);
          w.row(row);
        }
      }
      cache.save();
      return all_ok ? kOk : kClaimFailed;
    }

    if (*mod) {
      std::vector<std::future<std::vector<modular::Residue>>> jobs;
      for (std::uint64_t m : mod_moduli) {
        jobs.push_back(std::async(std::launch::async, detail::residues_for, mod_seq, mod_max, m));
      }
      RecordWriter w(format, out, {"modulus", "n", "residue"});
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto r = jobs[i].get();
        for (std::size_t n = 1; n <= r.size(); ++n) {
          w.row({std::to_string(mod_moduli[i]), detail::str(n), std::to_string(r[n - 1])});
        }
      }
      return kOk;
    }

    if (*per) {
      if (per_opt.min_repeats * 1 > per_max) throw UsageError("--min-repeats exceeds --max");
      const auto values = detail::residues_for(per_seq, per_max, per_mod);
      std::vector<std::size_t> hints;
      if (per_hint) hints = chocolate::detail::divisors(static_cast<std::size_t>(per_mod * (per_mod - 1)));
      const PeriodReport rep = detect_eventual_period(values, hints, per_opt);
      RecordWriter w(format, out, {"modulus", "n_max", "status", "preperiod", "period"});
      const std::string status = !rep.resolved ? "UNRESOLVED" : rep.eventually_zero ? "EVENTUALLY_ZERO" : "PERIODIC";
      w.row({std::to_string(per_mod), detail::str(per_max), status, rep.resolved ? detail::str(rep.preperiod) : "",
             rep.resolved ? detail::str(rep.period) : ""});
      return rep.resolved ? kOk : kUnresolved;
    }

    if (*ser) {
      const std::size_t min_order = ser_check == "ode" ? 4 : 3;
      if (ser_order < min_order) {
        throw UsageError("--order must be at least " + std::to_string(min_order) + " for " + ser_check);
      }
      if (perturb_b && (*perturb_b < 1 || *perturb_b > ser_order)) throw UsageError("--perturb-b out of range");
      if (perturb_p && *perturb_p > ser_order) throw UsageError("--perturb-p out of range");
      if (perturb_b && ser_check == "ode") throw UsageError("--perturb-b does not affect the ode check");
      if (perturb_p && ser_check == "riccati") throw UsageError("--perturb-p does not affect the riccati check");

      ChocolateTable table;
      std::vector<BigInt> b;
      if (ser_check != "ode") {
        b = series::chocolate2_values(ser_order, table);
        if (perturb_b) b[*perturb_b - 1] += 1;
      }
      std::vector<BigInt> p;
      if (ser_check != "riccati") {
        p = series::p_numerators(ser_order);
        if (perturb_p) p[*perturb_p] += 1;
      }
      series::RationalSeries residual(0);
      if (ser_check == "riccati") residual = series::riccati_residual(series::f_series_from(b));
      else if (ser_check == "ode") residual = series::ode_residual(series::u_series_from(p));
      else residual = series::log_derivative_residual(series::f_series_from(b), series::u_series_from(p));

      RecordWriter w(format, out, {"k", "coefficient"});
      for (std::size_t k = 0; k <= residual.order(); ++k) {
        w.row({detail::str(k), series::coefficient_string(residual[k])});
      }
      std::ostream& summary = format == OutputFormat::plain_lines ? out : err;
      if (const auto bad = residual.first_nonzero()) {
        summary << "residual nonzero at order " << *bad << '\n';
        return kClaimFailed;
      }
      summary << "residual zero through order " << residual.order() << '\n';
      return kOk;
    }

    if (*con) {
      const auto records = conjecture_scan(con_id, con_moduli, con_max);
      RecordWriter w(format, out,
                     {"conjecture", "sequence", "modulus", "n_max", "status", "preperiod", "period", "notes"});
      bool inconsistent = false, unresolved = false;
      for (const auto& r : records) {
        inconsistent = inconsistent || r.status == ScanStatus::inconsistent;
        unresolved = unresolved || r.status == ScanStatus::unresolved;
        w.row({std::to_string(r.conjecture), r.sequence, std::to_string(r.modulus), detail::str(r.n_max),
               to_string(r.status), r.preperiod ? detail::str(*r.preperiod) : "",
               r.period ? detail::str(*r.period) : "", r.notes});
      }
      return inconsistent ? kClaimFailed : unresolved ? kUnresolved : kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CacheError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kClaimFailed;
  }
  return kUsage;
}

}  // namespace chocolate::cli
