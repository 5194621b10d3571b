// apery: Apéry sets and invariants of numerical monoids, with a fast
// path for sufficiently shifted monoids, family scans, quasipolynomial
// fits and a benchmark harness.

#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apery/apery.hpp"

using json = nlohmann::ordered_json;
using namespace apery;

namespace {

constexpr const char* kSchema = "apery/1";

enum class Format { json, csv, md };

struct GlobalOptions {
  Format format = Format::json;
  bool format_given = false;
  bool no_time = false;
  int threads = 1;
  std::uint64_t seed = 0;  // reserved
};

std::vector<i64> parse_generator_list(const std::string& text) {
  std::vector<i64> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view token(text.data() + pos,
                           (comma == std::string::npos ? text.size() : comma) - pos);
    i64 value = 0;
    auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
    if (ec != std::errc() || ptr != token.end() || token.empty())
      throw input_error("cannot parse generator '" + std::string(token) + "'");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

json eligibility_json(const ShiftEligibility& e, const NumericalMonoid& base) {
  return json{{"shift", e.n},
              {"base", base.generators()},
              {"r_max", e.r_max},
              {"checks",
               {{"n_gt_rk_squared", e.shift_exceeds_rk_squared},
                {"gcd_n_d_eq_1", e.shift_coprime_to_gcd},
                {"dn_in_base", e.dn_in_base}}},
              {"eligible", e.eligible()}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void require_json_format(const GlobalOptions& g, const std::string& cmd) {
  if (g.format_given && g.format != Format::json)
    throw input_error("command '" + cmd + "' emits JSON only");
}

// ---------------------------------------------------------------- apery

int cmd_apery(const GlobalOptions& g, const std::string& gens_arg,
              std::optional<i64> x_arg) {
  require_json_format(g, "apery");
  auto m = monoid_from_generators(parse_generator_list(gens_arg));
  json out{{"schema", kSchema}, {"command", "apery"}};
  out["generators"] = m.generators();
  out["gcd"] = m.d;
  out["multiplicity"] = m.multiplicity;
  out["primitive"] = m.primitive;
  out["minimal"] = m.minimal();

  i64 started = now_ns();
  AperySet ap;
  if (x_arg && *x_arg != m.multiplicity) {
    ap = apery_classic(m, *x_arg);
    out["path"] = "classic";
    out["eligibility"] = nullptr;
  } else {
    auto result = apery_auto(m);
    ap = std::move(result.set);
    out["path"] = result.used_fast_path ? "fast" : "classic";
    if (result.eligibility) {
      out["eligibility"] =
          eligibility_json(*result.eligibility, decompose_as_shift(m).base);
    } else {
      out["eligibility"] = nullptr;
    }
  }
  i64 elapsed = now_ns() - started;

  out["apery"] = json{{"x", ap.base_element},
                      {"size", ap.size()},
                      {"by_class", ap.by_class}};
  out["max_element"] = ap.max_element();
  if (!g.no_time) out["time_ns"] = elapsed;
  emit(out);
  return 0;
}

// ----------------------------------------------------------- invariants

int cmd_invariants(const GlobalOptions& g, const std::string& gens_arg) {
  require_json_format(g, "invariants");
  auto m = monoid_from_generators(parse_generator_list(gens_arg));
  i64 started = now_ns();
  auto result = apery_auto(m);
  auto rep = make_report(m, result.set);
  i64 elapsed = now_ns() - started;

  json out{{"schema", kSchema}, {"command", "invariants"}};
  out["generators"] = m.generators();
  out["gcd"] = m.d;
  out["primitive"] = m.primitive;
  out["minimal"] = m.minimal();
  out["embedding_dimension"] = rep.embedding_dimension;
  out["trivial"] = rep.trivial;
  out["frobenius"] = rep.frobenius;
  out["genus"] = rep.genus;
  out["gaps_count"] = rep.genus;
  out["pf"] = rep.pf;
  out["type"] = rep.type;
  out["wilf"] = rep.wilf;
  out["symmetric"] = rep.symmetric;
  out["pseudosymmetric"] = rep.pseudosymmetric;
  out["quotient_convention"] = !m.primitive;
  out["path"] = result.used_fast_path ? "fast" : "classic";
  if (!g.no_time) out["time_ns"] = elapsed;
  emit(out);
  return 0;
}

// ----------------------------------------------------------------- scan

struct ScanRow {
  i64 n = 0;
  bool fast = false;
  i64 frobenius = 0, genus = 0, type = 0, wilf = 0;
  bool symmetric = false, pseudosymmetric = false;
  i64 time_ns = 0;
};

template <typename Fn>
void run_pool(int threads, std::size_t jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(jobs);  // drain remaining work
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int cmd_scan(const GlobalOptions& g, const std::string& base_arg, i64 from,
             i64 to) {
  if (from < 1) throw input_error("--from must be at least 1");
  if (from > to) throw input_error("empty range: --from exceeds --to");
  ShiftedFamily fam(monoid_from_generators(parse_generator_list(base_arg)));

  std::vector<i64> shifts;
  for (i64 n = from; n <= to; ++n)
    if (std::gcd(n, fam.d()) == 1) shifts.push_back(n);
  if (shifts.empty())
    throw input_error("no admissible n in range (gcd(n, d) = 1 excluded all)");

  std::vector<ScanRow> rows(shifts.size());
  run_pool(std::max(1, g.threads), shifts.size(), [&](std::size_t i) {
    i64 n = shifts[i];
    ScanRow& row = rows[i];
    row.n = n;
    i64 started = now_ns();
    ShiftEligibility e = fam.eligibility(n);
    row.fast = e.eligible();
    AperySet ap =
        row.fast ? shifted_apery(fam, n) : apery_classic(fam.member(n), n);
    auto rep = make_report(ap.monoid, ap);
    row.time_ns = g.no_time ? 0 : now_ns() - started;
    row.frobenius = rep.frobenius;
    row.genus = rep.genus;
    row.type = rep.type;
    row.wilf = rep.wilf;
    row.symmetric = rep.symmetric;
    row.pseudosymmetric = rep.pseudosymmetric;
  });

  Format fmt = g.format_given ? g.format : Format::csv;
  if (fmt == Format::csv || fmt == Format::md) {
    const char* sep = fmt == Format::csv ? "," : " | ";
    if (fmt == Format::md) {
      std::cout << "| n | path | F | g | t | W | symmetric | pseudosymmetric "
                   "| time_ns |\n|---|------|---|---|---|---|-----------|"
                   "-----------------|---------|\n";
    } else {
      std::cout << "n,path,F,g,t,W,symmetric,pseudosymmetric,time_ns\n";
    }
    for (const auto& r : rows) {
      if (fmt == Format::md) std::cout << "| ";
      std::cout << r.n << sep << (r.fast ? "fast" : "classic") << sep
                << r.frobenius << sep << r.genus << sep << r.type << sep
                << r.wilf << sep << (r.symmetric ? "true" : "false") << sep
                << (r.pseudosymmetric ? "true" : "false") << sep << r.time_ns;
      std::cout << (fmt == Format::md ? " |\n" : "\n");
    }
  } else {
    json out{{"schema", kSchema}, {"command", "scan"}};
    out["base"] = fam.base().generators();
    out["rows"] = json::array();
    for (const auto& r : rows)
      out["rows"].push_back(json{{"n", r.n},
                                 {"path", r.fast ? "fast" : "classic"},
                                 {"F", r.frobenius},
                                 {"g", r.genus},
                                 {"t", r.type},
                                 {"W", r.wilf},
                                 {"symmetric", r.symmetric},
                                 {"pseudosymmetric", r.pseudosymmetric},
                                 {"time_ns", r.time_ns}});
    emit(out);
  }
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchRow {
  i64 n = 0;
  std::string generators;
  i64 classic_ns = 0;
  std::string classic_status;  // ok | cutoff-exceeded | skipped | not-timed
  i64 fast_ns = 0;
  std::string fast_status;  // ok | ineligible | not-timed
};

std::string format_duration(i64 ns) {
  std::ostringstream os;
  if (ns >= 1'000'000'000)
    os << ns / 1'000'000'000.0 << " s";
  else if (ns >= 1'000'000)
    os << ns / 1'000'000.0 << " ms";
  else if (ns >= 1'000)
    os << ns / 1'000.0 << " us";
  else
    os << ns << " ns";
  return os.str();
}

int cmd_bench(const GlobalOptions& g, const std::string& base_arg,
              const std::string& shifts_arg, int reps, i64 cutoff_ms) {
  if (reps < 3) throw input_error("--reps must be at least 3 (median needs it)");
  if (cutoff_ms < 0) throw input_error("--cutoff-ms must be non-negative");
  ShiftedFamily fam(monoid_from_generators(parse_generator_list(base_arg)));
  std::vector<i64> shifts = parse_generator_list(shifts_arg);

  const i64 cutoff_ns = cutoff_ms * 1'000'000;
  bool classic_over_cutoff = false;
  std::vector<BenchRow> rows;
  for (i64 n : shifts) {
    BenchRow row;
    row.n = n;
    auto m = fam.member(n);
    {
      std::ostringstream os;
      for (std::size_t i = 0; i < m.generator_count(); ++i)
        os << (i ? "," : "") << m.generators()[i];
      row.generators = os.str();
    }
    bool eligible = fam.eligibility(n).eligible();

    if (g.no_time) {
      row.classic_status = "not-timed";
      row.fast_status = eligible ? "not-timed" : "ineligible";
      rows.push_back(std::move(row));
      continue;
    }

    if (classic_over_cutoff) {
      row.classic_status = "skipped";
    } else {
      i64 first = now_ns();
      apery_classic(m, n);
      first = now_ns() - first;
      if (first > cutoff_ns) {
        row.classic_ns = first;
        row.classic_status = "cutoff-exceeded";
        classic_over_cutoff = true;  // larger shifts only get slower
      } else {
        row.classic_ns = median_time_ns(reps, [&] { apery_classic(m, n); });
        row.classic_status = "ok";
      }
    }

    if (eligible) {
      row.fast_ns = median_time_ns(reps, [&] { shifted_apery(fam, n); });
      row.fast_status = "ok";
    } else {
      row.fast_status = "ineligible";
    }
    rows.push_back(std::move(row));
  }

  Format fmt = g.format_given ? g.format : Format::md;
  if (fmt == Format::md) {
    std::cout << "| n | M_n | classic | fast |\n|---|-----|---------|------|\n";
    for (const auto& r : rows) {
      std::cout << "| " << r.n << " | <" << r.generators << "> | ";
      if (r.classic_status == "ok")
        std::cout << format_duration(r.classic_ns);
      else if (r.classic_status == "cutoff-exceeded")
        std::cout << format_duration(r.classic_ns) << " (cutoff exceeded)";
      else
        std::cout << r.classic_status;
      std::cout << " | ";
      if (r.fast_status == "ok")
        std::cout << format_duration(r.fast_ns);
      else
        std::cout << r.fast_status;
      std::cout << " |\n";
    }
  } else if (fmt == Format::csv) {
    std::cout << "n,generators,classic_ns,classic_status,fast_ns,fast_status\n";
    for (const auto& r : rows)
      std::cout << r.n << ",\"" << r.generators << "\"," << r.classic_ns << ","
                << r.classic_status << "," << r.fast_ns << "," << r.fast_status
                << "\n";
  } else {
    json out{{"schema", kSchema}, {"command", "bench"}};
    out["base"] = fam.base().generators();
    out["reps"] = reps;
    out["rows"] = json::array();
    for (const auto& r : rows)
      out["rows"].push_back(json{{"n", r.n},
                                 {"generators", r.generators},
                                 {"classic_ns", r.classic_ns},
                                 {"classic_status", r.classic_status},
                                 {"fast_ns", r.fast_ns},
                                 {"fast_status", r.fast_status}});
    emit(out);
  }
  return 0;
}

// ------------------------------------------------------------------ fit

int cmd_fit(const GlobalOptions& g, const std::string& base_arg,
            const std::string& invariant, i64 degree_arg, i64 from_arg,
            i64 holdout) {
  require_json_format(g, "fit");
  if (invariant != "frobenius" && invariant != "genus" && invariant != "wilf" &&
      invariant != "type")
    throw input_error("unknown invariant '" + invariant +
                      "' (use frobenius, genus, wilf or type)");
  if (holdout < 1) throw input_error("--holdout must be at least 1");
  ShiftedFamily fam(monoid_from_generators(parse_generator_list(base_arg)));
  i64 rk = fam.r_max();
  i64 degree = degree_arg >= 0 ? degree_arg : (invariant == "type" ? 0 : 2);
  i64 from = from_arg > 0 ? from_arg : checked_add(checked_mul(rk, rk), 1);
  i64 k_members = static_cast<i64>(fam.base().generator_count()) + 1;

  auto value_at = [&](i64 n) -> i64 {
    if (invariant == "frobenius") return frobenius_shifted_fast(fam, n);
    if (invariant == "genus") return genus_shifted_fast(fam, n);
    if (invariant == "wilf")
      return wilf_number(frobenius_shifted_fast(fam, n),
                         genus_shifted_fast(fam, n), k_members);
    auto ap = shifted_apery(fam, n);
    return static_cast<i64>(pseudo_frobenius(ap).size());
  };

  // Admissible residue classes mod r_k (n with gcd(n, d) = 1 exists in the
  // class iff gcd(c, d) = 1, since d divides r_k).
  std::vector<bool> admissible(static_cast<std::size_t>(rk));
  i64 admissible_count = 0;
  for (i64 c = 0; c < rk; ++c) {
    admissible[static_cast<std::size_t>(c)] = std::gcd(c, fam.d()) == 1;
    if (admissible[static_cast<std::size_t>(c)]) ++admissible_count;
  }

  i64 started = now_ns();
  std::map<i64, i64> samples;
  std::vector<i64> per_class(static_cast<std::size_t>(rk), 0);
  i64 filled = 0;
  i64 n = from;
  const i64 wanted = degree + 1;
  while (filled < admissible_count) {
    if (std::gcd(n, fam.d()) == 1) {
      i64 c = n % rk;
      if (per_class[static_cast<std::size_t>(c)] < wanted) {
        samples[n] = value_at(n);
        if (++per_class[static_cast<std::size_t>(c)] == wanted) ++filled;
      }
    }
    n = checked_add(n, 1);
  }
  auto q = fit(samples, rk, degree, from);

  std::map<i64, i64> held_out;
  i64 collected = 0;
  while (collected < holdout) {
    if (std::gcd(n, fam.d()) == 1) {
      held_out[n] = value_at(n);
      ++collected;
    }
    n = checked_add(n, 1);
  }
  auto report = verify(q, held_out);
  i64 elapsed = now_ns() - started;

  json out{{"schema", kSchema}, {"command", "fit"}};
  out["base"] = fam.base().generators();
  out["invariant"] = invariant;
  out["degree"] = degree;
  out["period"] = rk;
  out["valid_from"] = from;
  out["samples_per_class"] = wanted;
  out["classes"] = json::array();
  for (i64 c = 0; c < rk; ++c) {
    const auto& row = q.rows[static_cast<std::size_t>(c)];
    json entry{{"residue", c}, {"present", row.has_value()}};
    if (row) {
      json coeffs = json::array();
      for (const auto& r : *row) coeffs.push_back(r.to_string());
      entry["coefficients"] = coeffs;  // highest degree first
    }
    out["classes"].push_back(entry);
  }
  json ver{{"points", report.checked},
           {"from", held_out.begin()->first},
           {"to", held_out.rbegin()->first},
           {"all_match", report.all_match}};
  if (report.first_mismatch) {
    auto [bad_n, predicted, sample] = *report.first_mismatch;
    ver["first_mismatch"] = json{{"n", bad_n},
                                 {"predicted", predicted.to_string()},
                                 {"sample", sample}};
  } else {
    ver["first_mismatch"] = nullptr;
  }
  out["verification"] = ver;
  if (!g.no_time) out["time_ns"] = elapsed;
  emit(out);
  return 0;
}

const char* kFieldDocs = R"(Output schema (version apery/1):

apery (JSON): schema, command, generators, gcd, multiplicity, primitive,
  minimal, path (fast|classic), eligibility {shift, base, r_max,
  checks {n_gt_rk_squared, gcd_n_d_eq_1, dn_in_base}, eligible} or null,
  apery {x, size, by_class}, max_element, time_ns.
  by_class[j] is the least element congruent to j*gcd modulo x.

invariants (JSON): schema, command, generators, gcd, primitive, minimal,
  embedding_dimension, trivial, frobenius, genus, gaps_count, pf, type,
  wilf, symmetric, pseudosymmetric, quotient_convention, path, time_ns.
  Non-primitive monoids report d-scaled quotient data (F(dM) = d F(M),
  g(dM) = d g(M), PF(dM) = d PF(M)); quotient_convention is then true.

scan (CSV): header n,path,F,g,t,W,symmetric,pseudosymmetric,time_ns
  one row per n in [--from, --to] with gcd(n, d) = 1, in increasing order.
  JSON/markdown mirror the same fields.

bench: n, generators, classic_ns, classic_status (ok | cutoff-exceeded |
  skipped | not-timed), fast_ns, fast_status (ok | ineligible | not-timed).
  Markdown shows Table-style columns n | M_n | classic | fast.

fit (JSON): schema, command, base, invariant, degree, period, valid_from,
  samples_per_class, classes [{residue, present, coefficients (highest
  degree first, exact fractions)}], verification {points, from, to,
  all_match, first_mismatch}, time_ns.

--no-time zeroes/omits wall-clock fields so output is byte-deterministic.
Exit codes: 0 success, 2 input error, 3 integer overflow, 4 resource budget.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Apéry sets and invariants of numerical monoids"};
  app.footer(kFieldDocs);
  GlobalOptions g;
  std::string format_name = "json";
  app.add_option("--format", format_name, "Output format: json, csv or md")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->each([&](const std::string&) { g.format_given = true; });
  app.add_flag("--no-time", g.no_time, "Suppress wall-clock fields (deterministic output)");
  app.add_option("--threads", g.threads, "Worker pool size for scan")
      ->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Reserved; accepted and ignored");
  app.require_subcommand(1);

  std::string gens_arg, base_arg, invariant;
  std::optional<i64> x_arg;
  i64 from = 0, to = 0, cutoff_ms = 60'000, degree = -1, fit_from = 0,
      holdout = 10;
  int reps = 5;
  std::string shifts_arg = "50,200,400,1000,5000,10000";

  auto* sub_apery = app.add_subcommand("apery", "Apéry set of a monoid");
  sub_apery->fallthrough();
  sub_apery->add_option("generators", gens_arg, "Comma-separated generators")
      ->required();
  sub_apery->add_option("x", x_arg, "Base element (default: the multiplicity)");

  auto* sub_inv = app.add_subcommand("invariants", "Invariant report for a monoid");
  sub_inv->fallthrough();
  sub_inv->add_option("generators", gens_arg, "Comma-separated generators")
      ->required();

  auto* sub_scan = app.add_subcommand("scan", "Invariants across a shifted family");
  sub_scan->fallthrough();
  sub_scan->add_option("--base", base_arg, "Base monoid generators")->required();
  sub_scan->add_option("--from", from, "First shift (inclusive)")->required();
  sub_scan->add_option("--to", to, "Last shift (inclusive)")->required();

  auto* sub_bench = app.add_subcommand("bench", "Classic vs fast Apéry timings");
  sub_bench->fallthrough();
  sub_bench->add_option("--base", base_arg, "Base monoid generators")
      ->default_val("6,9,20");
  sub_bench->add_option("--shifts", shifts_arg, "Comma-separated shifts");
  sub_bench->add_option("--reps", reps, "Repetitions per timing (median reported)");
  sub_bench->add_option("--cutoff-ms", cutoff_ms,
                        "Skip classic timings projected beyond this");

  auto* sub_fit = app.add_subcommand("fit", "Fit an invariant as a quasipolynomial in n");
  sub_fit->fallthrough();
  sub_fit->add_option("--base", base_arg, "Base monoid generators")->required();
  sub_fit->add_option("--invariant", invariant, "frobenius | genus | wilf | type")
      ->required();
  sub_fit->add_option("--degree", degree, "Polynomial degree (default 2; 0 for type)");
  sub_fit->add_option("--from", fit_from, "First shift of the window (default r_k^2+1)");
  sub_fit->add_option("--holdout", holdout, "Held-out verification points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  g.format = format_name == "csv" ? Format::csv
             : format_name == "md" ? Format::md
                                   : Format::json;

  try {
    if (sub_apery->parsed()) return cmd_apery(g, gens_arg, x_arg);
    if (sub_inv->parsed()) return cmd_invariants(g, gens_arg);
    if (sub_scan->parsed()) return cmd_scan(g, base_arg, from, to);
    if (sub_bench->parsed())
      return cmd_bench(g, base_arg, shifts_arg, reps, cutoff_ms);
    if (sub_fit->parsed())
      return cmd_fit(g, base_arg, invariant, degree, fit_from, holdout);
  } catch (const overflow_error& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const budget_error& e) {
    std::cerr << "resource budget: " << e.what() << "\n";
    return 4;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource budget: allocation failed\n";
    return 4;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
