#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "towerlab/bigreal.hpp"
#include "towerlab/interval.hpp"
#include "towerlab/towers.hpp"

namespace towerlab {

/// Enclosure of [a_{2k+1}, a_{2k}]: by the alternating-monotone ordering it
/// contains every a_n with n >= 2k and both subsequence limits.
Interval cipra_bounds(const BaseSequence& seq, long k, long prec);

/// F_n(x) = u_{2n-1}^(u_{2n}^x), monotone increasing on [0,1].
Interval dolan_F(const BaseSequence& seq, long n, const Interval& x, long prec);

/// Inverse of F_n: G_n(x) = ln(ln x / ln u_{2n-1}) / ln u_{2n}.
/// Domain error when x touches 0 or 1.
Interval dolan_G(const BaseSequence& seq, long n, const Interval& x, long prec);

struct Lemma3Result {
  bool ok = false;
  bool indeterminate = false;
  // enclosure of t_max^(t_max^theta), the minimum of t^(t^theta) on (0, t_max]
  Interval value;
  std::string detail;
};

/// Certifies that x >= theta implies t1^(t2^x) >= theta whenever
/// t2 <= t1 <= t_max. Conditions: (i) t_max < e^(-1/theta), so
/// t -> t^(t^theta) is decreasing on (0, t_max]; (ii) the interval
/// evaluation shows t_max^(t_max^theta) >= theta.
Lemma3Result lemma3_check(const BigReal& theta, const BigReal& t_max, long prec);

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string evidence;
};

enum class CertKind { Cipra, DolanLower, DolanUpper, Shooting };
std::string cert_kind_name(CertKind k);
CertKind cert_kind_from_name(const std::string& s);

/// Machine-checkable record of a bound proof. Valid only when every check
/// passed with disjoint-interval evidence; replayable from the stored
/// input fields at a given precision.
struct Certificate {
  CertKind kind = CertKind::DolanLower;
  SeqKind seq = SeqKind::ZeraouliaI;
  Parity parity = Parity::Even;
  BigReal bound;
  long depth = 0;
  BigReal theta;
  BigReal t_max;
  std::vector<Interval> orbit;
  std::vector<CheckRecord> checks;

  bool valid() const;
  nlohmann::json to_json() const;
};

/// G-orbit certificate: pulls the candidate back through the inverse pair
/// maps and checks the orbit lands below theta while lemma3 pins the tail.
/// For parity=even the pairs are (u_{2n-1}, u_{2n}) and a valid
/// certificate proves L > c.
/// For parity=odd the pairing starts one index later, the candidate is
/// converted through c_bar >= ln c / ln u_1, and a valid certificate
/// proves l < c (the final u_1 power flips the direction).
/// `custom_tail_monotone` asserts, for Custom sequences only, that bases
/// beyond the listed ones keep decreasing below t_max.
Certificate dolan_certify(const BaseSequence& seq, Parity parity,
                          const BigReal& candidate, long depth_m,
                          const BigReal& theta, const BigReal& t_max, long prec,
                          bool custom_tail_monotone = false);

/// Bound by exhibiting one term of the monotone subsequence:
/// even, a_{2N}.hi < c proves L < c (DolanUpper); odd, a_{2N+1}.lo > c
/// proves l > c (DolanLower). Scans depths of the right parity.
Certificate dolan_term_certificate(const BaseSequence& seq, Parity parity,
                                   const BigReal& candidate, long prec,
                                   long max_scan_depth = 400);

Certificate cipra_certificate(const BaseSequence& seq, long k, long prec);

/// Parses a certificate previously produced by to_json().
Certificate parse_certificate(const nlohmann::json& j, long prec);

/// Rebuilds the certificate from its stored input fields at `prec`.
/// A valid certificate replays valid, bit-identically at the same precision.
Certificate replay_certificate(const Certificate& cert, long prec,
                               bool custom_tail_monotone = false,
                               const BaseSequence* custom_seq = nullptr);

struct ShootingViolation {
  long index = 0;  // 1-based position of the first non-decreasing value
  std::string direction;  // "increase" or "flat"
};

/// Orbit of t_{k+1} = -ln t_k / ln(k(k+1)) from a candidate limit t1.
/// Point arithmetic by design: the procedure is a heuristic classifier,
/// not a certified bound.
struct ShootingReport {
  BigReal t1;
  long horizon = 0;
  std::vector<BigReal> orbit;
  long monotone_prefix = 0;  // largest p with orbit strictly decreasing on 1..p
  std::optional<ShootingViolation> first_violation;
  std::optional<long> domain_exit;  // index of the first value outside (0,1)
  nlohmann::json to_json() const;
};

ShootingReport shooting_sequence(const BigReal& t1, long horizon, long prec);

Certificate shooting_certificate(const ShootingReport& report);

struct ShootingBisectResult {
  BigReal t1_star;
  Interval bracket;  // hull of candidates achieving the best prefix
  long best_prefix = 0;
  bool unimodal = true;
  nlohmann::json to_json() const;
};

/// Grid-plus-edge-bisection search maximizing the monotone prefix length
/// over [lo, hi] at the given horizon.
ShootingBisectResult shooting_bisect(const BigReal& lo, const BigReal& hi,
                                     long horizon, long prec);

}  // namespace towerlab
