#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "towerlab/bigreal.hpp"
#include "towerlab/interval.hpp"

namespace towerlab {

enum class SeqKind { ZeraouliaI, ZeraouliaII, Custom };

/// Which subsequence of tower depths: a_{2n} (Even) or a_{2n+1} (Odd).
enum class Parity { Even, Odd };

std::string seq_name(SeqKind k);
std::string parity_name(Parity p);

/// Generator of power-tower bases u_k in (0,1).
///
///   ZeraouliaI:  u_k = 1/k - 1/(k+1) = 1/(k(k+1))
///   ZeraouliaII: u_k = 1/k! - 1/(k+1)! = k/(k+1)!
///   Custom:      an explicit finite list of rationals in (0,1)
class BaseSequence {
 public:
  static BaseSequence zeraoulia_i() { return BaseSequence(SeqKind::ZeraouliaI); }
  static BaseSequence zeraoulia_ii() { return BaseSequence(SeqKind::ZeraouliaII); }
  static BaseSequence custom(std::vector<mpq_class> bases);
  /// Parses one exact rational per line, "p/q" with 0 < p < q.
  static BaseSequence custom_from_text(const std::string& text);

  SeqKind kind() const { return kind_; }
  std::string name() const { return seq_name(kind_); }
  /// For Custom, the list length; unbounded otherwise.
  std::optional<long> max_index() const;
  bool strictly_decreasing() const { return kind_ != SeqKind::Custom; }

  /// Exact rational u_k, k >= 1. Factorials use exact integer arithmetic.
  mpq_class base(long k) const;
  BigReal base_real(long k, long prec, mpfr_rnd_t rnd = MPFR_RNDN) const;
  Interval base_interval(long k, long prec) const;
  /// Enclosure of ln u_k from the exact numerator/denominator, so
  /// ZeraouliaII stays scale-free at large k.
  Interval log_base(long k, long prec) const;
  BigReal log_base_point(long k, long prec) const;

 private:
  explicit BaseSequence(SeqKind kind) : kind_(kind) {}
  SeqKind kind_;
  std::vector<mpq_class> custom_;
};

/// One evaluated tower: value (point or certified enclosure), depth and
/// provenance. Record type used by tables and the CLI; construction
/// enforces value in (0,1] and depth >= 1.
struct TowerValue {
  std::variant<BigReal, Interval> value;
  long depth = 0;
  SeqKind kind = SeqKind::ZeraouliaI;
  std::optional<std::string> seed_desc;
};

TowerValue make_tower_value(const BaseSequence& seq, long n, long prec,
                            bool interval_mode = false,
                            std::optional<std::string> seed_desc = std::nullopt);

inline constexpr long kDefaultDepthCap = 10000;

// Point-mode evaluation (round-to-nearest at `prec`), iterative top-down.
BigReal eval_tower(const BaseSequence& seq, long n, long prec);
BigReal eval_tail(const BaseSequence& seq, long m, long n, long prec);
BigReal eval_with_seed(const BaseSequence& seq, long n, const BigReal& seed, long prec);

// Interval mode: certified enclosures.
Interval eval_tower_i(const BaseSequence& seq, long n, long prec);
Interval eval_tail_i(const BaseSequence& seq, long m, long n, long prec);
Interval eval_with_seed_i(const BaseSequence& seq, long n, const Interval& seed, long prec);

/// Lambert-W tail seed T_n = e^(-W(ln(n(n+1)))), the root of
/// T = (n(n+1))^(-T). ZeraouliaI only.
BigReal lambert_tail_seed(const BaseSequence& seq, long n, long prec);
/// Certified enclosure of T_n by interval bisection on ln t + t ln(n(n+1)).
Interval lambert_tail_seed_i(long n, long prec);

/// Tower over u_1..u_n with the top exponent replaced by T_{n+1}; damps the
/// even/odd oscillation. ZeraouliaI only.
BigReal eval_stabilized(const BaseSequence& seq, long n, long prec);
Interval eval_stabilized_i(const BaseSequence& seq, long n, long prec);

/// Hull of the two adjacent tail-tower truncations at relative depths d-1
/// and d (odd depth below, even above). Contains every deeper truncation
/// of the tail starting at m and both of its subsequence limits.
Interval enclose_tail_limits(const BaseSequence& seq, long m, long d, long prec);

}  // namespace towerlab
