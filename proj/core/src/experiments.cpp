#include "sqf/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sqf/density.hpp"

namespace sqf {

namespace {

constexpr std::uint64_t kSweepMaxX = 1'000'000'000;

void require_schedule(std::span<const std::uint64_t> xs) {
  if (xs.empty()) throw std::invalid_argument("sweep: empty x schedule");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && xs[i] <= xs[i - 1])
      throw std::invalid_argument("sweep: x schedule must be strictly increasing");
    if (xs[i] > kSweepMaxX)
      throw std::invalid_argument("sweep: x exceeds the experiment cap 10^9");
  }
}

SweepResult sweep(std::string label, PrimeConstraint constraint,
                  std::span<const std::uint64_t> xs, const CountOptions& opt) {
  require_schedule(xs);
  SweepResult result;
  result.label = std::move(label);
  result.constraint = constraint;
  result.rows.reserve(xs.size());
  for (std::uint64_t x : xs)
    result.rows.push_back(empirical_density({x, result.constraint}, opt));
  return result;
}

// Proportion of the square-free integers <= x that the row counts.
double among_squarefree(const CountReport& row) {
  const std::uint64_t q = count_squarefree_mobius(row.query.x);
  return q == 0 ? 0.0
                : static_cast<double>(row.count) / static_cast<double>(q);
}

// Fixed 12-significant-digit rendering shared by both report formats.
std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
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

}  // namespace

std::vector<std::uint64_t> default_sweep(bool deep) {
  std::vector<std::uint64_t> xs = {10'000, 100'000, 1'000'000, 10'000'000};
  if (deep) {
    xs.push_back(100'000'000);
    xs.push_back(1'000'000'000);
  }
  return xs;
}

bool gegenbauer_verdict(std::span<const CountReport> rows) {
  if (rows.empty()) return false;
  return std::fabs(rows.back().ratio - kSquarefreeDensity) < kSweepTolerance;
}

bool jameson_verdict(std::span<const CountReport> rows, bool even_variant) {
  if (rows.empty()) return false;
  const double ratio_target =
      even_variant ? kSquarefreeDensity / 3.0 : 2.0 * kSquarefreeDensity / 3.0;
  const double among_target = even_variant ? 1.0 / 3.0 : 2.0 / 3.0;
  const CountReport& last = rows.back();
  return std::fabs(last.ratio - ratio_target) < kSweepTolerance &&
         std::fabs(among_squarefree(last) - among_target) < kSweepTolerance;
}

bool example2_verdict(std::span<const CountReport> rows) {
  if (rows.empty()) return false;
  return std::fabs(among_squarefree(rows.back()) - 7.0 / 576.0) < kSweepTolerance;
}

bool bertram_verdict(std::span<const CountReport> rows) {
  if (rows.empty()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].ratio < rows[i - 1].ratio)) return false;
    if (rows[i].ratio > rows[i].predicted + kBoundSlack) return false;
  }
  return true;
}

SweepResult run_gegenbauer(std::span<const std::uint64_t> xs,
                           const CountOptions& opt) {
  SweepResult r = sweep("gegenbauer", PrimeConstraint(), xs, opt);
  r.pass = gegenbauer_verdict(r.rows);
  return r;
}

std::pair<SweepResult, SweepResult> run_jameson(std::span<const std::uint64_t> xs,
                                                const CountOptions& opt) {
  SweepResult odd = sweep("jameson-odd",
                          PrimeConstraint({}, PrimeSelector{2}), xs, opt);
  odd.pass = jameson_verdict(odd.rows, /*even_variant=*/false);
  SweepResult even = sweep("jameson-even",
                           PrimeConstraint({2}, PrimeSelector{}), xs, opt);
  even.pass = jameson_verdict(even.rows, /*even_variant=*/true);
  return {std::move(odd), std::move(even)};
}

SweepResult run_example2(std::span<const std::uint64_t> xs,
                         const CountOptions& opt) {
  SweepResult r = sweep("example2",
                        PrimeConstraint({2, 3, 5}, PrimeSelector{7}), xs, opt);
  r.pass = example2_verdict(r.rows);
  return r;
}

SweepResult run_bertram(const ResidueClass& cls,
                        std::span<const std::uint64_t> xs,
                        const CountOptions& opt) {
  if (!cls.is_coprime())
    throw std::invalid_argument("run_bertram: gcd(r, m) must be 1");
  const std::string label = "bertram-" + std::to_string(cls.modulus) + "-" +
                            std::to_string(cls.residue);
  SweepResult r = sweep(label, PrimeConstraint({}, PrimeSelector(cls)), xs, opt);
  r.pass = bertram_verdict(r.rows);
  return r;
}

void emit_report(std::span<const SweepResult> results, ReportFormat format,
                 std::ostream& out) {
  if (results.empty())
    throw std::invalid_argument("emit_report: results must be nonempty");

  if (format == ReportFormat::kCsv) {
    out << "label,x,count,ratio,predicted,deviation,verdict\n";
    for (const SweepResult& r : results) {
      const char* verdict = r.pass ? "pass" : "fail";
      for (const CountReport& row : r.rows) {
        out << r.label << ',' << row.query.x << ',' << row.count << ','
            << format_real(row.ratio) << ',' << format_real(row.predicted)
            << ',' << format_real(row.deviation) << ',' << verdict << '\n';
      }
    }
    return;
  }

  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const SweepResult& r : results) {
    for (const CountReport& row : r.rows) {
      nlohmann::ordered_json j;
      j["label"] = r.label;
      j["x"] = row.query.x;
      j["count"] = row.count;
      j["ratio"] = std::stod(format_real(row.ratio));
      j["predicted"] = std::stod(format_real(row.predicted));
      j["deviation"] = std::stod(format_real(row.deviation));
      j["verdict"] = r.pass ? "pass" : "fail";
      j["constraint"] = constraint_json(r.constraint);
      doc.push_back(std::move(j));
    }
  }
  out << doc.dump(2) << '\n';
}

void emit_report(std::span<const SweepResult> results, ReportFormat format,
                 const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out)
    throw std::runtime_error("emit_report: cannot open " + destination.string());
  emit_report(results, format, out);
  out.flush();
  if (!out)
    throw std::runtime_error("emit_report: write failed for " + destination.string());
}

}  // namespace sqf
