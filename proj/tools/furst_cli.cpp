// furst: q-norm metrics on the integers.
//
// Subcommands: norm (single value), sieve (batch table), scatter / hist / gap
// (plot-ready figure data), series (Dirichlet series evaluation), verify
// (invariant suites). Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 capacity error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "furst/furst.hpp"

namespace {

using furst::io::Cell;

// The factor table is built lazily at the configured limit so commands that
// never touch it (batch sieve, gap table) pay nothing.
struct LazyTable {
  std::int64_t limit;
  std::optional<furst::arith::PrimeTable> table;

  const furst::arith::PrimeTable& get() {
    if (!table) table.emplace(limit);
    return *table;
  }
};

void emit_table(const furst::io::Table& t, const std::string& out_path,
                const std::string& format) {
  std::ostringstream buf;
  if (format == "json")
    furst::io::write_json(buf, t);
  else
    furst::io::write_csv(buf, t);
  if (out_path == "-") {
    std::cout << buf.str();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw furst::domain_error("cannot open output file: " + out_path);
  f << buf.str();
}

struct NormArgs {
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> factorial, primorial, lcm, prime_index;
  double q = 2.0;
  double tol = 1e-12;
};

int run_norm(LazyTable& lazy, const NormArgs& a) {
  furst::qnorm::QParam q{a.q};
  int selectors = (a.n ? 1 : 0) + (a.factorial ? 1 : 0) + (a.primorial ? 1 : 0) +
                  (a.lcm ? 1 : 0) + (a.prime_index ? 1 : 0);
  if (selectors != 1)
    throw furst::domain_error(
        "norm: give exactly one of n, --factorial, --primorial, --lcm, "
        "--prime-index");

  furst::qnorm::NormValue v;
  if (a.n) {
    v = furst::qnorm::qnorm(lazy.get(), *a.n, q);
  } else {
    using furst::sequences::Family;
    auto term = a.factorial   ? family_term(Family::Factorials, *a.factorial)
                : a.primorial ? family_term(Family::Primorials, *a.primorial)
                : a.lcm       ? family_term(Family::LcmTowers, *a.lcm)
                              : family_term(Family::Primes, *a.prime_index);
    v = furst::qnorm::qnorm_structured(lazy.get(), term, q, a.tol);
  }
  std::cout << furst::io::format_double(v.value) << ' '
            << furst::io::format_double(v.tail_bound) << '\n';
  return 0;
}

furst::io::Table sieve_table(double qv, std::int64_t n) {
  furst::sieve::SieveTable t =
      furst::sieve::sieve_qnorms(furst::qnorm::QParam{qv}, n);
  furst::io::Table out;
  out.columns = {"n", "norm"};
  out.rows.reserve(static_cast<std::size_t>(n));
  for (std::int64_t m = 1; m <= n; ++m)
    out.rows.push_back({Cell::integer(m), Cell::real(t.at(m))});
  return out;
}

furst::io::Table scatter_table(LazyTable& lazy, double qv, std::int64_t from,
                               std::int64_t to) {
  if (from > to) throw furst::domain_error("scatter: requires from <= to");
  furst::qnorm::QParam q{qv};
  double mean = furst::means::mean_limit(q);
  furst::io::Table out;
  out.columns = {"n", "norm", "mean_limit"};
  out.rows.reserve(static_cast<std::size_t>(to - from + 1));
  if (from >= 1) {
    furst::sieve::SieveTable t = furst::sieve::sieve_qnorms(q, to);
    for (std::int64_t m = from; m <= to; ++m)
      out.rows.push_back({Cell::integer(m), Cell::real(t.at(m)), Cell::real(mean)});
  } else {
    for (std::int64_t m = from; m <= to; ++m)
      out.rows.push_back({Cell::integer(m),
                          Cell::real(furst::qnorm::qnorm(lazy.get(), m, q).value),
                          Cell::real(mean)});
  }
  return out;
}

furst::io::Table hist_table(double qv, std::int64_t n, std::int64_t bins) {
  furst::sieve::SieveTable t =
      furst::sieve::sieve_qnorms(furst::qnorm::QParam{qv}, n);
  furst::io::Table out;
  out.columns = {"bin_lo", "bin_hi", "count"};
  for (const auto& b : furst::means::histogram(t, bins))
    out.rows.push_back(
        {Cell::real(b.lo), Cell::real(b.hi), Cell::integer(b.count)});
  return out;
}

furst::io::Table gap_table(double q_min, double q_max, std::int64_t steps) {
  furst::io::Table out;
  out.columns = {"q", "odd_lower", "even_upper", "mean_limit"};
  for (const auto& g : furst::means::gap_table(q_min, q_max, steps)) {
    Cell lower = g.gap_exists ? Cell::real(g.odd_lower) : Cell::empty();
    Cell upper = g.gap_exists ? Cell::real(g.even_upper) : Cell::empty();
    out.rows.push_back(
        {Cell::real(g.q), lower, upper, Cell::real(g.mean_limit)});
  }
  return out;
}

furst::io::Table series_table(const std::string& kind, double qv, double s,
                              std::int64_t terms) {
  double closed = 0.0;
  furst::arith::SeriesEval partial;
  Cell q_cell = Cell::empty();
  if (kind == "Qq") {
    furst::qnorm::QParam q{qv};
    closed = furst::dirichlet::Q_closed(q, s);
    partial = furst::dirichlet::Q_partial(q, s, terms);
    q_cell = Cell::real(qv);
  } else if (kind == "gamma") {
    furst::qnorm::QParam q{qv};
    closed = 1.0 / (qv - 1.0) - furst::arith::polylog(s, 1.0 / qv).value;
    partial = furst::dirichlet::gamma_series(q, s, terms);
    q_cell = Cell::real(qv);
  } else if (kind == "Xi") {
    closed = furst::dirichlet::Xi_closed(s);
    partial = furst::dirichlet::Xi_partial(s, terms);
  } else {
    throw furst::domain_error("series: kind must be one of Qq, Xi, gamma");
  }
  furst::io::Table out;
  out.columns = {"kind", "q",      "s",          "terms",
                 "closed", "partial", "tail_bound", "abs_diff"};
  out.rows.push_back({Cell::text(kind), q_cell, Cell::real(s),
                      Cell::integer(terms), Cell::real(closed),
                      Cell::real(partial.value), Cell::real(partial.tail_bound),
                      Cell::real(std::abs(partial.value - closed))});
  return out;
}

int run_verify(LazyTable& lazy, const std::string& suite, double n_scale,
               const std::string& out_path, const std::string& format,
               bool has_out) {
  if (!(n_scale >= 10.0 && n_scale <= 9.0e18))
    throw furst::domain_error("verify: n-scale out of range");
  auto checks = furst::verify::run(lazy.get(), suite,
                                   static_cast<std::int64_t>(n_scale));
  std::int64_t failed = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": "
              << c.detail << '\n';
  }
  std::cout << "verify: " << (checks.size() - static_cast<std::size_t>(failed))
            << '/' << checks.size() << " checks passed\n";
  if (has_out) {
    furst::io::Table report;
    report.columns = {"check", "passed", "detail"};
    for (const auto& c : checks)
      report.rows.push_back({Cell::text(c.name), Cell::integer(c.passed ? 1 : 0),
                             Cell::text(c.detail)});
    emit_table(report, out_path, format);
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "q-norm metrics on the integers: single values, batch sieves, figure "
      "data, Dirichlet series, and verification suites"};
  app.require_subcommand(1);

  std::int64_t table_limit = 2'000'000;
  app.add_option("--table-limit", table_limit,
                 "factor table size (single-value norms, structured bounds, "
                 "prime searches)")
      ->envname("FURST_TABLE_LIMIT")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 34));

  NormArgs norm_args;
  auto* norm = app.add_subcommand("norm", "q-norm of one integer");
  norm->fallthrough();
  norm->add_option("n", norm_args.n, "integer to evaluate");
  norm->add_option("--q", norm_args.q, "base q > 1");
  norm->add_option("--tol", norm_args.tol, "tail bound for structured inputs");
  norm->add_option("--factorial", norm_args.factorial, "evaluate ||k!||");
  norm->add_option("--primorial", norm_args.primorial,
                   "evaluate ||product of first k primes||");
  norm->add_option("--lcm", norm_args.lcm, "evaluate ||lcm(1..k)||");
  norm->add_option("--prime-index", norm_args.prime_index,
                   "evaluate ||k-th prime||");

  double sieve_q = 2.0;
  std::int64_t sieve_n = 0;
  std::string sieve_out = "-", sieve_format = "csv";
  auto* sieve = app.add_subcommand("sieve", "batch q-norm table for 1..n");
  sieve->fallthrough();
  sieve->add_option("--q", sieve_q, "base q > 1");
  sieve->add_option("--n", sieve_n, "table length")->required();
  sieve->add_option("--out", sieve_out, "output path, - for stdout");
  sieve->add_option("--format", sieve_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  double scatter_q = 2.0;
  std::int64_t scatter_from = 1000, scatter_to = 1100;
  std::string scatter_out = "-", scatter_format = "csv";
  auto* scatter = app.add_subcommand(
      "scatter", "norm values on a range plus the mean-limit reference line");
  scatter->fallthrough();
  scatter->add_option("--q", scatter_q, "base q > 1");
  scatter->add_option("--from", scatter_from, "range start");
  scatter->add_option("--to", scatter_to, "range end");
  scatter->add_option("--out", scatter_out, "output path, - for stdout");
  scatter->add_option("--format", scatter_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  double hist_q = 2.0;
  std::int64_t hist_n = 0, hist_bins = 40;
  std::string hist_out = "-", hist_format = "csv";
  auto* hist = app.add_subcommand(
      "hist", "histogram of norm values over 1..n on [0, diameter]");
  hist->fallthrough();
  hist->add_option("--q", hist_q, "base q > 1");
  hist->add_option("--n", hist_n, "table length")->required();
  hist->add_option("--bins", hist_bins, "number of bins");
  hist->add_option("--out", hist_out, "output path, - for stdout");
  hist->add_option("--format", hist_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  double gap_q_min = 1.5, gap_q_max = 3.0;
  std::int64_t gap_steps = 151;
  std::string gap_out = "-", gap_format = "csv";
  auto* gap = app.add_subcommand(
      "gap", "parity-gap bounds and mean limit across a q grid");
  gap->fallthrough();
  gap->add_option("--q-min", gap_q_min, "grid start, > 1");
  gap->add_option("--q-max", gap_q_max, "grid end");
  gap->add_option("--steps", gap_steps, "grid points");
  gap->add_option("--out", gap_out, "output path, - for stdout");
  gap->add_option("--format", gap_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string series_kind;
  double series_q = 2.0, series_s = 2.0;
  std::int64_t series_terms = 100'000;
  std::string series_out = "-", series_format = "csv";
  auto* series = app.add_subcommand(
      "series", "Dirichlet series: closed form vs partial sum with tail bound");
  series->fallthrough();
  series->add_option("kind", series_kind, "series family")
      ->required()
      ->check(CLI::IsMember({"Qq", "Xi", "gamma"}));
  series->add_option("--q", series_q, "base q > 1 (Qq and gamma)");
  series->add_option("--s", series_s, "exponent");
  series->add_option("--n", series_terms, "number of partial-sum terms");
  series->add_option("--out", series_out, "output path, - for stdout");
  series->add_option("--format", series_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string verify_suite = "all";
  double verify_n_scale = 1e6;
  std::string verify_out, verify_format = "csv";
  auto* verify = app.add_subcommand("verify", "run invariant check suites");
  verify->fallthrough();
  verify->add_option("--suite", verify_suite,
                     "all, metric, sieve, means, sequences, aggregate, "
                     "dirichlet");
  verify->add_option("--n-scale", verify_n_scale,
                     "size of the scaled check windows");
  auto* verify_out_opt =
      verify->add_option("--out", verify_out, "also write the report table");
  verify->add_option("--format", verify_format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    LazyTable lazy{table_limit, std::nullopt};
    if (norm->parsed()) return run_norm(lazy, norm_args);
    if (sieve->parsed()) {
      emit_table(sieve_table(sieve_q, sieve_n), sieve_out, sieve_format);
      return 0;
    }
    if (scatter->parsed()) {
      emit_table(scatter_table(lazy, scatter_q, scatter_from, scatter_to),
                 scatter_out, scatter_format);
      return 0;
    }
    if (hist->parsed()) {
      emit_table(hist_table(hist_q, hist_n, hist_bins), hist_out, hist_format);
      return 0;
    }
    if (gap->parsed()) {
      emit_table(gap_table(gap_q_min, gap_q_max, gap_steps), gap_out,
                 gap_format);
      return 0;
    }
    if (series->parsed()) {
      emit_table(series_table(series_kind, series_q, series_s, series_terms),
                 series_out, series_format);
      return 0;
    }
    if (verify->parsed())
      return run_verify(lazy, verify_suite, verify_n_scale, verify_out,
                        verify_format, verify_out_opt->count() > 0);
    return 2;
  } catch (const furst::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const furst::capacity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
