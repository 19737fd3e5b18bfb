#pragma once

#include <optional>
#include <string>
#include <vector>

#include "towerlab/errors.hpp"
#include "towerlab/interval.hpp"
#include "towerlab/towers.hpp"

namespace towerlab {

/// Width target could not be met within the depth/precision caps; carries
/// the best enclosure reached.
class ContractionError : public Error {
 public:
  ContractionError(const std::string& msg, Interval best)
      : Error(msg), best_(std::move(best)) {}
  const Interval& best() const { return best_; }

 private:
  Interval best_;
};

/// Certified interval containing an even- or odd-subsequence limit.
struct LimitEnclosure {
  SeqKind kind = SeqKind::ZeraouliaI;
  Parity parity = Parity::Even;
  Interval interval;
  long depth_used = 0;
  long decimal_digits_certified = 0;

  /// The certified fractional digits (both endpoints agree), at most
  /// decimal_digits_certified of them.
  std::string digits(long count) const;
};

struct LimitOptions {
  long max_iterations = 48;
  long max_precision = 1L << 22;
};

/// Encloses the parity-subsequence limit to at least `digits` certified
/// decimals. The tail seed is [theta, u_j^(u_{j+1}) upper] with theta
/// certified as a floor through lemma3_check, and the pair maps are
/// composed downward in interval arithmetic; the pair count and working
/// precision grow until the width target is met. Enclosures for growing
/// `digits` are nested by construction (running intersection over a fixed
/// deterministic schedule).
LimitEnclosure enclose_subsequence_limit(const BaseSequence& seq, Parity parity,
                                         long digits, const LimitOptions& opts = {});

struct LemmaReport {
  bool lemma1_ok = true;
  bool lemma2_ok = true;
  std::optional<long> first_violation;
  long indeterminate_count = 0;  // comparisons unresolved at the precision cap
  long comparisons = 0;
};

/// Verifies the strict Lemma-1 chains (odd terms increase, even terms
/// decrease) and Lemma-2 alternation on a(1..N) with interval comparisons.
/// A comparison counts only when the intervals are disjoint; indeterminate
/// comparisons trigger precision doubling up to the cap and are then
/// reported, never counted as violations.
LemmaReport check_dolan_lemmas(const BaseSequence& seq, long N,
                               long start_prec = 320, long max_prec = 1L << 17);

struct RateFit {
  double k_hat = 0.0;
  double c_hat = 0.0;
  double residual = 0.0;  // RMS of the least-squares fit, never hidden
  long n_min = 0, n_max = 0;
  long points_used = 0;
  std::vector<long> dropped;  // n with eps(n) below certifiable resolution
};

/// Least-squares fit of log(-log10 eps(n)) = k log n + c over the
/// matching-parity sample points; shared by estimate_rate and the
/// synthetic-data recovery test.
RateFit fit_decay_exponent(const std::vector<std::pair<long, double>>& neglog10_eps);

/// eps(n) = |a_n - limit midpoint| against a reference enclosure at least
/// 10x more accurate than the smallest eps used; uncertifiable points are
/// dropped and reported. A nonzero ref_digits_override pins the reference
/// accuracy instead of sizing it adaptively.
RateFit estimate_rate(const BaseSequence& seq, Parity parity, long n_min, long n_max,
                      long ref_digits_override = 0);

}  // namespace towerlab
