#include "towerlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "towerlab/certify.hpp"

namespace towerlab {

std::string LimitEnclosure::digits(long count) const {
  // Certified round-to-nearest rendering: fixed-point rounding is monotone,
  // so when both endpoints round to the same string every enclosed value
  // does too. This matches how the constants are conventionally printed
  // (the expansion may round up in its last emitted digit).
  std::string lo = interval.lo().decimal_fixed(count, MPFR_RNDN);
  std::string hi = interval.hi().decimal_fixed(count, MPFR_RNDN);
  if (lo != hi) {
    throw ContractionError("enclosure does not pin a " + std::to_string(count) +
                               "-digit rounded rendering",
                           interval);
  }
  auto dot = lo.find('.');
  if (dot == std::string::npos || lo.substr(0, dot) != "0") {
    throw ContractionError("enclosure not inside the unit interval", interval);
  }
  return lo.substr(dot + 1);
}

namespace {

// Deterministic pair-count schedule shared by every call, so enclosures at
// growing digit targets nest via the running intersection.
long pair_schedule(long i) {
  long k = 4;
  for (long j = 0; j < i; ++j) k += std::max(2L, k / 2);
  return k;
}

}  // namespace

LimitEnclosure enclose_subsequence_limit(const BaseSequence& seq, Parity parity,
                                         long digits, const LimitOptions& opts) {
  if (digits < 1) throw UsageError("enclose_subsequence_limit: digits must be >= 1");
  if (seq.kind() == SeqKind::Custom) {
    throw DomainError("subsequence limits are defined for the unbounded base sequences");
  }
  const long offset = parity == Parity::Even ? 0 : 1;
  const long prec = std::min(BigReal::clamp_prec(4 * digits + 256), opts.max_precision);
  // Fixed dyadic floor (the 64-bit round-down of 0.8), identical at every
  // precision so that enclosures for growing digit targets nest.
  const BigReal theta = BigReal::parse("0.8", 64, MPFR_RNDD);

  std::optional<Interval> best;
  long depth_used = 0;
  for (long iter = 0; iter < opts.max_iterations; ++iter) {
    long pairs = pair_schedule(iter);
    long j0 = offset + 2 * pairs + 1;

    // Floor validity: every tail pair has both bases <= u_j0 (strict
    // decrease), and lemma3 certifies x >= theta is preserved by the tail
    // maps, so the tail's even-relative limit lies in [theta, u_j0^(u_j0+1)].
    Interval u0 = seq.base_interval(j0, prec);
    Lemma3Result l3 = lemma3_check(theta, u0.hi(), prec);
    if (!l3.ok) continue;

    Interval trunc2 = eval_tail_i(seq, j0, j0 + 1, prec);
    if (!(theta < trunc2.hi())) continue;
    Interval e(add(theta, BigReal(prec), MPFR_RNDN, prec), trunc2.hi());
    for (long k = pairs; k >= 1; --k) {
      e = pow_unit_interval(seq.base_interval(offset + 2 * k, prec), e);
      e = pow_unit_interval(seq.base_interval(offset + 2 * k - 1, prec), e);
    }
    if (offset == 1) e = pow_unit_interval(seq.base_interval(1, prec), e);

    best = best ? intersect(*best, e) : e;
    depth_used = j0 + 1;

    auto cd = certified_decimal(*best, digits + 6);
    if (cd && static_cast<long>(cd->fraction.size()) >= digits &&
        best->lo().decimal_fixed(digits, MPFR_RNDN) ==
            best->hi().decimal_fixed(digits, MPFR_RNDN)) {
      LimitEnclosure out;
      out.kind = seq.kind();
      out.parity = parity;
      out.interval = *best;
      out.depth_used = depth_used;
      out.decimal_digits_certified = static_cast<long>(cd->fraction.size());
      return out;
    }
  }
  throw ContractionError(
      "insufficient contraction for " + std::to_string(digits) + " digits (" +
          seq_name(seq.kind()) + ", " + parity_name(parity) + ")",
      best.value_or(Interval(BigReal::of(0L, prec), BigReal::of(1L, prec))));
}

LemmaReport check_dolan_lemmas(const BaseSequence& seq, long N, long start_prec,
                               long max_prec) {
  if (N < 3) throw UsageError("check_dolan_lemmas: N must be >= 3");
  if (auto mi = seq.max_index(); mi && N > *mi) {
    throw DomainError("check_dolan_lemmas: N exceeds the custom base list length");
  }

  std::map<std::pair<long, long>, Interval> cache;
  auto term = [&](long n, long prec) -> const Interval& {
    auto key = std::make_pair(n, prec);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, eval_tower_i(seq, n, prec)).first;
    }
    return it->second;
  };

  LemmaReport rep;
  long run_prec = start_prec;  // gaps shrink with n; reuse the last success
  auto compare = [&](long n1, long n2) -> std::optional<int> {
    for (long p = run_prec; p <= max_prec; p *= 2) {
      const Interval& a = term(n1, p);
      const Interval& b = term(n2, p);
      if (a.strictly_below(b)) { run_prec = p; return -1; }
      if (b.strictly_below(a)) { run_prec = p; return 1; }
    }
    return std::nullopt;
  };

  auto record = [&](long n, std::optional<int> got, int want, bool lemma1) {
    ++rep.comparisons;
    if (!got) {
      ++rep.indeterminate_count;
      return;
    }
    if (*got != want) {
      if (lemma1) rep.lemma1_ok = false;
      else rep.lemma2_ok = false;
      if (!rep.first_violation || n < *rep.first_violation) rep.first_violation = n;
    }
  };

  // Lemma 2 first: adjacent terms are far apart, so these comparisons
  // resolve at the starting precision before the Lemma-1 ladder climbs.
  for (long n = 1; n + 1 <= N; ++n) {
    record(n, compare(n, n + 1), n % 2 == 1 ? -1 : 1, false);
  }
  {
    ++rep.comparisons;
    const Interval& a2 = term(2, run_prec);
    if (!(a2.hi() < 1L)) rep.lemma1_ok = false;
  }
  // Lemma 1: a(1) < a(3) < a(5) < ...  and  1 > a(2) > a(4) > ...
  for (long n = 1; n + 2 <= N; ++n) {
    record(n, compare(n, n + 2), n % 2 == 1 ? -1 : 1, true);
  }
  return rep;
}

RateFit fit_decay_exponent(const std::vector<std::pair<long, double>>& pts) {
  if (pts.size() < 2) throw UsageError("rate fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::pair<double, double>> xy;
  for (const auto& [n, neglog] : pts) {
    if (neglog <= 0) throw DomainError("rate fit: -log10 eps must be positive");
    double x = std::log(static_cast<double>(n));
    double y = std::log(neglog);
    xy.emplace_back(x, y);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  double m = static_cast<double>(xy.size());
  double k = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double c = (sy - k * sx) / m;
  double rss = 0;
  for (const auto& [x, y] : xy) {
    double r = y - (k * x + c);
    rss += r * r;
  }
  RateFit fit;
  fit.k_hat = k;
  fit.c_hat = c;
  fit.residual = std::sqrt(rss / m);
  fit.points_used = static_cast<long>(xy.size());
  return fit;
}

RateFit estimate_rate(const BaseSequence& seq, Parity parity, long n_min, long n_max,
                      long ref_digits_override) {
  std::vector<long> ns;
  for (long n = n_min; n <= n_max; ++n) {
    if ((n % 2 == 0) == (parity == Parity::Even)) ns.push_back(n);
  }
  if (ns.size() < 4) {
    throw UsageError("estimate_rate: need at least 4 matching-parity points");
  }

  // Probe how small eps(n_max) is, then build a reference enclosure at
  // least 10x more accurate than the smallest eps used.
  long ref_digits = 60;
  long needed = 0;
  if (ref_digits_override > 0) {
    needed = ref_digits_override - 25;
  } else
  for (; ref_digits <= 4000; ref_digits *= 2) {
    LimitEnclosure probe = enclose_subsequence_limit(seq, parity, ref_digits);
    long prec = BigReal::clamp_prec(4 * ref_digits + 128);
    Interval an = eval_tower_i(seq, ns.back(), prec);
    Interval eps = sub(an, probe.interval);
    if (eps.lo().sgn() < 0 && eps.hi().sgn() > 0) continue;  // still overlapping
    BigReal mag = abs(eps.mid());
    double neglog = -mpfr_get_d(log(mag, MPFR_RNDN).get(), MPFR_RNDN) / std::log(10.0);
    needed = static_cast<long>(neglog) + 1;
    if (needed + 20 <= ref_digits) break;
  }
  long D_ref = std::max(needed + 25, 60L);
  LimitEnclosure ref = enclose_subsequence_limit(seq, parity, D_ref);
  long prec = BigReal::clamp_prec(4 * (D_ref + 30));

  RateFit out;
  std::vector<std::pair<long, double>> pts;
  for (long n : ns) {
    Interval an = eval_tower_i(seq, n, prec);
    Interval eps_iv = sub(an, ref.interval);
    if (eps_iv.lo().sgn() <= 0 && eps_iv.hi().sgn() >= 0) {
      out.dropped.push_back(n);  // eps below certifiable resolution
      continue;
    }
    BigReal lo = abs(eps_iv.lo()), hi = abs(eps_iv.hi());
    BigReal eps_lo = lo < hi ? lo : hi, eps_hi = lo < hi ? hi : lo;
    // require a relatively tight eps enclosure before trusting the point
    if (sub(eps_hi, eps_lo, MPFR_RNDU) * BigReal::of(10L, prec) > eps_lo) {
      out.dropped.push_back(n);
      continue;
    }
    BigReal mid = div(add(eps_lo, eps_hi, MPFR_RNDN), BigReal::of(2L, prec), MPFR_RNDN);
    double neglog10 = -mpfr_get_d(log(mid, MPFR_RNDN).get(), MPFR_RNDN) / std::log(10.0);
    pts.emplace_back(n, neglog10);
  }
  if (pts.size() < 4) {
    throw ContractionError("estimate_rate: fewer than 4 certifiable points", ref.interval);
  }
  RateFit fit = fit_decay_exponent(pts);
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.dropped = out.dropped;
  return fit;
}

}  // namespace towerlab
