#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqf/counting.hpp"
#include "sqf/density.hpp"
#include "sqf/experiments.hpp"
#include "sqf/products.hpp"

namespace sqf::tools {

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t parse_u64(const std::string& token, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(std::string(what) + ": '" + token +
                                "' is not a nonnegative integer");
  return std::stoull(token);
}

std::vector<std::uint64_t> parse_u64_list(const std::string& csv, const char* what) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::size_t end = comma == std::string::npos ? csv.size() : comma;
    out.push_back(parse_u64(csv.substr(pos, end - pos), what));
    pos = end + 1;
  }
  return out;
}

ResidueClass parse_class(const std::string& spec) {
  const auto parts = parse_u64_list(spec, "--p-class/--class");
  if (parts.size() != 2)
    throw std::invalid_argument("residue class must be given as m,r");
  return ResidueClass(parts[0], parts[1]);
}

std::uint64_t env_max_x() {
  const char* v = std::getenv("SQFDENSITY_MAX_X");
  if (v == nullptr || *v == '\0') return CountOptions{}.max_x;
  return parse_u64(v, "SQFDENSITY_MAX_X");
}

PrimeConstraint build_constraint(const std::string& t_csv, const std::string& p_csv,
                                 const std::string& p_class) {
  std::vector<std::uint64_t> t = parse_u64_list(t_csv, "--t");
  PrimeSelector forbidden = p_class.empty()
                                ? PrimeSelector(parse_u64_list(p_csv, "--p"))
                                : PrimeSelector(parse_class(p_class));
  return PrimeConstraint(std::move(t), std::move(forbidden));
}

nlohmann::ordered_json constraint_json(const PrimeConstraint& c) {
  nlohmann::ordered_json j;
  j["T"] = c.mandatory();
  nlohmann::ordered_json p;
  if (c.forbidden().is_class()) {
    p["kind"] = "class";
    p["m"] = c.forbidden().cls().modulus;
    p["r"] = c.forbidden().cls().residue;
  } else {
    p["kind"] = "explicit";
    p["primes"] = c.forbidden().primes();
  }
  j["P"] = p;
  return j;
}

double json_real(double v) { return std::stod(format_real(v)); }

// ---------------------------------------------------------------------------
// density

int cmd_density(const PrimeConstraint& constraint, bool json, std::ostream& out) {
  if (!constraint.forbidden().is_class()) {
    const DensityValue d = density(constraint);
    if (json) {
      nlohmann::ordered_json j;
      j["constraint"] = constraint_json(constraint);
      j["factor"] = d.factor.str();
      j["value"] = json_real(d.value);
      j["among_squarefree"] = json_real(d.among_squarefree.to_double());
      out << j.dump(2) << '\n';
    } else {
      out << "factor,value,among_squarefree\n"
          << d.factor.str() << ',' << format_real(d.value) << ','
          << format_real(d.among_squarefree.to_double()) << '\n';
    }
    return 0;
  }

  // Residue-class forbidden set: the density is 0; report the decaying
  // partial-product bound at a few cutoffs as evidence.
  const ResidueClass& cls = constraint.forbidden().cls();
  if (!cls.is_coprime())
    throw std::invalid_argument("density: gcd(r, m) must be 1 for a class P");
  BigRational t_factor(1);
  for (std::uint64_t p : constraint.mandatory())
    t_factor *= BigRational(1, BigInt(p) + 1);
  const double t_scale = t_factor.to_double();

  const std::vector<std::uint64_t> cutoffs = {1'000, 10'000, 100'000, 1'000'000};
  if (json) {
    nlohmann::ordered_json j;
    j["constraint"] = constraint_json(constraint);
    j["density"] = 0.0;
    nlohmann::ordered_json evidence = nlohmann::ordered_json::array();
    for (std::uint64_t m : cutoffs) {
      const double partial = std::exp(log_partial_product(constraint.forbidden(), m));
      evidence.push_back({{"cutoff", m},
                          {"partial_product", json_real(partial)},
                          {"bound", json_real(kSquarefreeDensity * t_scale * partial)}});
    }
    j["evidence"] = evidence;
    out << j.dump(2) << '\n';
  } else {
    out << "m,r,density,cutoff,partial_product,bound\n";
    for (std::uint64_t m : cutoffs) {
      const double partial = std::exp(log_partial_product(constraint.forbidden(), m));
      out << cls.modulus << ',' << cls.residue << ",0," << m << ','
          << format_real(partial) << ','
          << format_real(kSquarefreeDensity * t_scale * partial) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// count

int cmd_count(std::uint64_t x, const PrimeConstraint& constraint,
              const std::string& method, const CountOptions& opt, bool json,
              std::ostream& out) {
  CountReport report;
  if (method == "naive") {
    const std::uint64_t count = count_naive({x, constraint});
    report = CountReport{};
    report.query = {x, constraint};
    report.count = count;
    report.ratio = x == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(x);
    const CountReport predicted = empirical_density({0, constraint}, opt);
    report.predicted = predicted.predicted;
    report.predicted_is_bound = predicted.predicted_is_bound;
    report.deviation = report.ratio - report.predicted;
  } else if (method == "mobius") {
    if (!constraint.is_unconstrained())
      throw std::invalid_argument("count: --method mobius supports only the unconstrained query");
    report.query = {x, constraint};
    report.count = count_squarefree_mobius(x);
    report.ratio = x == 0 ? 0.0
                          : static_cast<double>(report.count) / static_cast<double>(x);
    report.predicted = kSquarefreeDensity;
    report.deviation = report.ratio - report.predicted;
  } else {
    report = empirical_density({x, constraint}, opt);
  }

  if (json) {
    nlohmann::ordered_json j;
    j["x"] = x;
    j["count"] = report.count;
    j["ratio"] = json_real(report.ratio);
    j["predicted"] = json_real(report.predicted);
    j["deviation"] = json_real(report.deviation);
    j["predicted_is_bound"] = report.predicted_is_bound;
    j["method"] = method;
    j["constraint"] = constraint_json(constraint);
    out << j.dump(2) << '\n';
  } else {
    out << "x,count,ratio,predicted,deviation,method\n"
        << x << ',' << report.count << ',' << format_real(report.ratio) << ','
        << format_real(report.predicted) << ',' << format_real(report.deviation)
        << ',' << method << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// product

int cmd_product_trace(const ResidueClass& cls, std::uint64_t limit,
                      std::size_t exact_limit, bool json, std::ostream& out) {
  const ProductTrace trace = partial_product(PrimeSelector(cls), limit, exact_limit);
  if (json) {
    nlohmann::ordered_json j;
    j["m"] = cls.modulus;
    j["r"] = cls.residue;
    j["limit"] = limit;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < trace.entries.size(); ++k) {
      const ProductEntry& e = trace.entries[k];
      nlohmann::ordered_json row;
      row["k"] = k + 1;
      row["prime"] = e.prime;
      row["partial"] = e.partial ? e.partial->str() : "";
      row["log_partial"] = json_real(e.log_partial);
      entries.push_back(std::move(row));
    }
    j["entries"] = entries;
    out << j.dump(2) << '\n';
  } else {
    out << "k,prime,partial,log_partial\n";
    for (std::size_t k = 0; k < trace.entries.size(); ++k) {
      const ProductEntry& e = trace.entries[k];
      out << k + 1 << ',' << e.prime << ','
          << (e.partial ? e.partial->str() : "") << ','
          << format_real(e.log_partial) << '\n';
    }
  }
  return 0;
}

int cmd_product_epsilon(const ResidueClass& cls, double epsilon, bool json,
                        std::ostream& out) {
  const TruncationPoint point = truncation_for_epsilon(cls, epsilon);
  if (json) {
    nlohmann::ordered_json j;
    j["m"] = cls.modulus;
    j["r"] = cls.residue;
    j["epsilon"] = json_real(epsilon);
    j["cutoff"] = point.cutoff;
    j["bound"] = json_real(point.bound);
    out << j.dump(2) << '\n';
  } else {
    out << "epsilon,cutoff,bound\n"
        << format_real(epsilon) << ',' << point.cutoff << ','
        << format_real(point.bound) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail) {
    if (ok) {
      out << "ok " << name << ": " << detail << '\n';
    } else {
      out << "FAIL " << name << ": " << detail << '\n';
      ++failures;
    }
  }
};

std::string set_str(const std::vector<std::uint64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

void verify_divisor_sum(std::mt19937_64& rng, Reporter& rep) {
  std::vector<std::vector<std::uint64_t>> sets = {{}, {2, 3}, {2, 3, 5}, {7, 11, 13}};
  const std::vector<std::uint64_t> pool = primes_up_to(200).primes;
  std::uniform_int_distribution<std::size_t> size_dist(0, 8);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint64_t> shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.resize(size_dist(rng));
    sets.push_back(std::move(shuffled));
  }
  for (const auto& t : sets) {
    const auto [lhs, rhs] = divisor_sum_check(t);
    rep.check("divisor-sum T=" + set_str(t), lhs == rhs,
              lhs.str() + " vs " + rhs.str());
  }
}

void verify_telescoping(Reporter& rep) {
  const std::vector<std::uint64_t> first25 = primes_up_to(100).primes;
  struct Case {
    PrimeSelector selector;
    std::string name;
    std::vector<std::uint64_t> terms;
  };
  const std::vector<Case> cases = {
      {PrimeSelector(first25), "explicit-25", {0, 1, 5, 25}},
      {PrimeSelector(ResidueClass(4, 1)), "class-4-1", {1, 10, 100}},
      {PrimeSelector(ResidueClass(4, 3)), "class-4-3", {1, 10, 100}},
  };
  for (const Case& c : cases) {
    for (std::uint64_t terms : c.terms) {
      const auto [sum_side, product_side] = telescoping_check(c.selector, terms);
      rep.check("telescoping " + c.name + " L=" + std::to_string(terms),
                sum_side == product_side,
                sum_side.str() + " vs " + product_side.str());
    }
  }
}

void verify_bijection(std::mt19937_64& rng, Reporter& rep) {
  const std::vector<std::uint64_t> pool = {2, 3, 5, 7, 11, 13};
  std::uniform_int_distribution<std::uint64_t> x_dist(0, 100'000);
  std::uniform_int_distribution<std::size_t> t_size(0, 2), s_size(1, 2), p_size(0, 2);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::size_t pos = 0;
    std::vector<std::uint64_t> t(shuffled.begin(), shuffled.begin() + (pos += t_size(rng)));
    std::vector<std::uint64_t> s(shuffled.begin() + pos, shuffled.begin() + (pos += s_size(rng)));
    pos -= s.size();
    s.assign(shuffled.begin() + pos, shuffled.begin() + pos + s_size(rng) % 2 + 1);
    pos += s.size();
    std::vector<std::uint64_t> p(shuffled.begin() + pos, shuffled.begin() + pos + p_size(rng));
    const std::uint64_t x = x_dist(rng);
    const auto [lhs, rhs] = bijection_identity(x, t, s, p);
    if (lhs != rhs) ++bad;
  }
  rep.check("bijection 100 randomized instances", bad == 0,
            std::to_string(bad) + " mismatches");
}

void verify_partition(Reporter& rep) {
  const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13};
  for (std::uint64_t x : {std::uint64_t{1'000}, std::uint64_t{10'000}}) {
    for (std::size_t n = 0; n <= primes.size(); ++n) {
      std::vector<std::uint64_t> t(primes.begin(), primes.begin() + n);
      const auto [total, parts] = partition_identity(x, t);
      std::uint64_t sum = 0;
      for (std::uint64_t part : parts) sum += part;
      rep.check("partition T=" + set_str(t) + " x=" + std::to_string(x),
                total == sum,
                std::to_string(total) + " vs sum " + std::to_string(sum));
    }
  }
}

void verify_oracle(std::mt19937_64& rng, Reporter& rep) {
  const std::vector<std::uint64_t> pool = primes_up_to(97).primes;
  std::uniform_int_distribution<std::uint64_t> x_dist(0, 10'000);
  std::uniform_int_distribution<std::size_t> t_size(0, 3), p_size(0, 3);
  std::uniform_int_distribution<std::uint64_t> m_dist(1, 12);
  std::bernoulli_distribution use_class(0.4);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::uint64_t> shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    PrimeSelector forbidden;
    std::vector<std::uint64_t> t;
    if (use_class(rng)) {
      const std::uint64_t m = m_dist(rng);
      const std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, m - 1)(rng);
      const ResidueClass cls(m, r);
      for (std::uint64_t candidate : shuffled) {
        if (t.size() >= t_size(rng)) break;
        if (!cls.contains(candidate)) t.push_back(candidate);
      }
      forbidden = PrimeSelector(cls);
    } else {
      std::size_t pos = 0;
      t.assign(shuffled.begin(), shuffled.begin() + (pos = t_size(rng)));
      forbidden = PrimeSelector(std::vector<std::uint64_t>(
          shuffled.begin() + pos, shuffled.begin() + pos + p_size(rng)));
    }
    const CountQuery q{x_dist(rng), PrimeConstraint(t, forbidden)};
    if (count_sieve(q) != count_naive(q)) ++bad;
  }
  rep.check("oracle-equivalence 200 randomized queries", bad == 0,
            std::to_string(bad) + " mismatches");
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  Reporter rep{out};
  std::mt19937_64 rng(seed);
  const bool all = suite == "identities";
  if (suite == "divisor-sum" || all) verify_divisor_sum(rng, rep);
  if (suite == "telescoping" || all) verify_telescoping(rep);
  if (suite == "bijection" || all) verify_bijection(rng, rep);
  if (suite == "partition" || all) verify_partition(rep);
  if (suite == "oracle" || all) verify_oracle(rng, rep);
  out << (rep.failures == 0 ? "PASS" : "FAIL") << " suite " << suite << " ("
      << rep.failures << " failures)\n";
  return rep.failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& experiment, std::uint64_t m, std::uint64_t r,
              bool have_class, const std::vector<std::uint64_t>& xs,
              const CountOptions& opt, ReportFormat format,
              const std::string& out_path, std::ostream& out) {
  std::vector<SweepResult> results;
  if (experiment == "gegenbauer") {
    results.push_back(run_gegenbauer(xs, opt));
  } else if (experiment == "jameson") {
    auto [odd, even] = run_jameson(xs, opt);
    results.push_back(std::move(odd));
    results.push_back(std::move(even));
  } else if (experiment == "example2") {
    results.push_back(run_example2(xs, opt));
  } else {
    if (!have_class)
      throw std::invalid_argument("sweep: --experiment bertram requires --m and --r");
    results.push_back(run_bertram(ResidueClass(m, r), xs, opt));
  }

  if (out_path.empty()) {
    emit_report(results, format, out);
  } else {
    emit_report(results, format, std::filesystem::path(out_path));
  }
  for (const SweepResult& result : results)
    if (!result.pass) return 1;
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and empirical natural densities of constrained square-free integers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "Worker threads for counting");

  // density
  auto* density_cmd = app.add_subcommand("density", "Exact density of (T, P)");
  std::string den_t, den_p, den_pclass;
  density_cmd->add_option("--t", den_t, "Mandatory primes, comma separated");
  auto* den_p_opt = density_cmd->add_option("--p", den_p, "Forbidden primes, comma separated");
  auto* den_pc_opt = density_cmd->add_option("--p-class", den_pclass, "Forbidden residue class m,r");
  den_p_opt->excludes(den_pc_opt);

  // count
  auto* count_cmd = app.add_subcommand("count", "Count members up to x");
  std::uint64_t count_x = 0;
  std::string cnt_t, cnt_p, cnt_pclass, method = "sieve";
  count_cmd->add_option("--x", count_x, "Count bound")->required();
  count_cmd->add_option("--t", cnt_t, "Mandatory primes, comma separated");
  auto* cnt_p_opt = count_cmd->add_option("--p", cnt_p, "Forbidden primes, comma separated");
  auto* cnt_pc_opt = count_cmd->add_option("--p-class", cnt_pclass, "Forbidden residue class m,r");
  cnt_p_opt->excludes(cnt_pc_opt);
  count_cmd->add_option("--method", method, "Counting method")
      ->check(CLI::IsMember({"naive", "sieve", "mobius"}));

  // product
  auto* product_cmd = app.add_subcommand("product", "Partial products over a prime class");
  std::string prod_class;
  std::uint64_t prod_limit = 0;
  double prod_epsilon = 0.0;
  std::uint64_t prod_exact_limit = kDefaultExactFactorLimit;
  product_cmd->add_option("--class", prod_class, "Residue class m,r")->required();
  auto* limit_opt = product_cmd->add_option("--limit", prod_limit, "Enumerate class primes <= limit");
  auto* eps_opt = product_cmd->add_option("--epsilon", prod_epsilon,
                                          "Find the least cutoff with bound <= epsilon");
  limit_opt->excludes(eps_opt);
  product_cmd->add_option("--exact-limit", prod_exact_limit,
                          "Exact partials carried for at most this many factors");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run exact identity suites");
  std::string suite;
  std::uint64_t seed = 12345;
  verify_cmd->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"identities", "divisor-sum", "telescoping", "bijection",
                             "partition", "oracle"}));
  verify_cmd->add_option("--seed", seed, "Seed for the randomized suites");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a density experiment");
  std::string experiment, x_list_csv, out_path;
  std::uint64_t sweep_m = 0, sweep_r = 0;
  bool deep = false;
  sweep_cmd->add_option("--experiment", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember({"gegenbauer", "jameson", "example2", "bertram"}));
  auto* m_opt = sweep_cmd->add_option("--m", sweep_m, "Class modulus (bertram)");
  auto* r_opt = sweep_cmd->add_option("--r", sweep_r, "Class residue (bertram)");
  r_opt->needs(m_opt);
  m_opt->needs(r_opt);
  sweep_cmd->add_option("--x-list", x_list_csv, "Comma separated x schedule");
  sweep_cmd->add_flag("--deep", deep, "Extend the default schedule to 10^8 and 10^9");
  sweep_cmd->add_option("--out", out_path, "Write the report to this file");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    CountOptions opt;
    opt.threads = std::max(1u, threads);
    opt.max_x = env_max_x();
    const bool json = format == "json";

    if (app.got_subcommand(density_cmd))
      return cmd_density(build_constraint(den_t, den_p, den_pclass), json, out);
    if (app.got_subcommand(count_cmd))
      return cmd_count(count_x, build_constraint(cnt_t, cnt_p, cnt_pclass), method,
                       opt, json, out);
    if (app.got_subcommand(product_cmd)) {
      const ResidueClass cls = parse_class(prod_class);
      if (eps_opt->count() > 0)
        return cmd_product_epsilon(cls, prod_epsilon, json, out);
      if (limit_opt->count() == 0)
        throw std::invalid_argument("product: one of --limit or --epsilon is required");
      return cmd_product_trace(cls, prod_limit,
                               static_cast<std::size_t>(prod_exact_limit), json, out);
    }
    if (app.got_subcommand(verify_cmd)) return cmd_verify(suite, seed, out);
    if (app.got_subcommand(sweep_cmd)) {
      const std::vector<std::uint64_t> xs =
          x_list_csv.empty() ? default_sweep(deep)
                             : parse_u64_list(x_list_csv, "--x-list");
      if ((m_opt->count() > 0) && experiment != "bertram")
        throw std::invalid_argument("sweep: --m/--r apply only to bertram");
      return cmd_sweep(experiment, sweep_m, sweep_r, m_opt->count() > 0, xs, opt,
                       json ? ReportFormat::kJson : ReportFormat::kCsv, out_path, out);
    }
    err << "error: no subcommand\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sqf::tools
