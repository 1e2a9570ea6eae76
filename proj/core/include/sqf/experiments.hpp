// Scripted density experiments: convergence sweeps for the classical
// square-free constants, the odd/even split, the 7/576 example, and the
// residue-class decay, each with a deterministic pass/fail verdict and
// machine-readable CSV/JSON reports.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqf/counting.hpp"

namespace sqf {

// Tolerance on |ratio - target| at the largest x of a sweep, and the
// finite-x slack allowed over the residue-class partial-product bound.
// Both are calibrated to the O(sqrt x) error of square-free counting at
// x >= 10^6.
inline constexpr double kSweepTolerance = 1e-3;
inline constexpr double kBoundSlack = 1e-3;

struct SweepResult {
  std::string label;
  PrimeConstraint constraint;
  std::vector<CountReport> rows;  // strictly increasing in x
  bool pass = false;
};

// Default x schedule: desk scale (about a second); `deep` opts into the
// 10^8 and 10^9 tiers.
std::vector<std::uint64_t> default_sweep(bool deep = false);

// Unconstrained count; passes when the final ratio is within tolerance of
// 6/pi^2.
SweepResult run_gegenbauer(std::span<const std::uint64_t> xs,
                           const CountOptions& opt = {});

// Odd square-free (forbid 2) and even square-free (require 2) sweeps;
// each passes when its final ratio hits 4/pi^2 resp. 2/pi^2 and its
// proportion among all square-free integers hits 2/3 resp. 1/3.
std::pair<SweepResult, SweepResult> run_jameson(std::span<const std::uint64_t> xs,
                                                const CountOptions& opt = {});

// Square-free, divisible by 30, not by 7; passes when the final proportion
// among square-free integers is within tolerance of 7/576.
SweepResult run_example2(std::span<const std::uint64_t> xs,
                         const CountOptions& opt = {});

// Square-free integers with no prime factor = r (mod m): ratios must
// strictly decrease across the schedule and stay within kBoundSlack of the
// partial-product bound recorded per row.
SweepResult run_bertram(const ResidueClass& cls,
                        std::span<const std::uint64_t> xs,
                        const CountOptions& opt = {});

// Verdict rules as pure functions of the recorded rows, so a verdict can be
// re-derived from a serialized report.
bool gegenbauer_verdict(std::span<const CountReport> rows);
bool jameson_verdict(std::span<const CountReport> rows, bool even_variant);
bool example2_verdict(std::span<const CountReport> rows);
bool bertram_verdict(std::span<const CountReport> rows);

enum class ReportFormat { kCsv, kJson };

// Deterministic byte output: stable field order, reals at 12 significant
// digits. CSV columns: label,x,count,ratio,predicted,deviation,verdict.
// JSON: array of row objects with the same fields plus the constraint.
void emit_report(std::span<const SweepResult> results, ReportFormat format,
                 std::ostream& out);
void emit_report(std::span<const SweepResult> results, ReportFormat format,
                 const std::filesystem::path& destination);

}  // namespace sqf
